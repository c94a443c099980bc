#ifndef HURWITZ_ERRORS_HPP
#define HURWITZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hurwitz {

struct Error : std::runtime_error {
   using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (branch cut, bad interval, ...).
struct DomainError : Error {
   using Error::Error;
};

struct DivergentMeasure : Error {
   using Error::Error;
};

struct NonPositiveWeight : Error {
   using Error::Error;
};

struct PoleError : Error {
   using Error::Error;
};

struct InterlacingViolation : Error {
   using Error::Error;
};

struct MixedTagError : Error {
   using Error::Error;
};

struct DegenerateError : Error {
   using Error::Error;
};

struct InfiniteValue : Error {
   using Error::Error;
};

struct LengthMismatch : Error {
   using Error::Error;
};

struct QuadratureFailure : Error {
   using Error::Error;
};

struct ZeroLeadingCoefficient : Error {
   using Error::Error;
};

struct NonConvergence : Error {
   using Error::Error;
};

struct ContourTooClose : Error {
   using Error::Error;
};

struct EvaluationUnderflow : Error {
   using Error::Error;
};

struct HypothesisViolation : Error {
   using Error::Error;
};

} // namespace hurwitz

#endif
