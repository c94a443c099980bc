#ifndef HURWITZ_HURWITZ_HPP
#define HURWITZ_HURWITZ_HPP

#include "hurwitz/errors.hpp"
#include "hurwitz/quadrature.hpp"
#include "hurwitz/measure.hpp"
#include "hurwitz/stieltjes.hpp"
#include "hurwitz/lp1.hpp"
#include "hurwitz/construct.hpp"
#include "hurwitz/stability.hpp"
#include "hurwitz/verify.hpp"

#endif
