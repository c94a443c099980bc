#ifndef HURWITZ_MEASURE_HPP
#define HURWITZ_MEASURE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/errors.hpp"
#include "hurwitz/quadrature.hpp"

namespace hurwitz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Point mass of dσ at λ = position.
struct Atom {
   double position = 0.0;
   double weight = 0.0;
};

// Density c·λ^p·e^{−qλ} on (lo, hi].  hi may be +inf.
struct DensityPiece {
   double lo = 0.0;
   double hi = kInf;
   double scale = 1.0; // c
   double power = 0.0; // p
   double decay = 0.0; // q
};

// Finite non-negative measure on (0, ∞): atoms plus parametric density
// pieces. Mass at λ = 0 is not representable here; it lives in the b
// coefficient of a Stieltjes representation.
struct Measure {
   std::vector<Atom> atoms;
   std::vector<DensityPiece> pieces;

   bool is_zero() const { return atoms.empty() && pieces.empty(); }
};

namespace detail {

inline void check_atom(const Atom& a) {
   if (!(a.position > 0.0) || !std::isfinite(a.position))
      throw NonPositiveWeight("atom position must be positive and finite");
   if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw NonPositiveWeight("atom weight must be positive and finite");
}

inline void check_piece(const DensityPiece& pc) {
   if (!(pc.scale > 0.0) || !std::isfinite(pc.scale))
      throw NonPositiveWeight("density scale must be positive and finite");
   if (pc.lo < 0.0 || !(pc.hi > pc.lo))
      throw DomainError("density piece needs 0 <= lo < hi");
   if (pc.decay < 0.0)
      throw DomainError("density decay must be non-negative");
   if (pc.lo == 0.0 && pc.power <= -1.0)
      throw DivergentMeasure("density not integrable at 0: need p > -1");
   if (pc.hi == kInf && pc.decay == 0.0 && pc.power >= 0.0)
      throw DivergentMeasure("density violates the 1/(1+lambda) condition at infinity");
}

// ∫_{lo}^{hi} λ^p e^{−sλ} g(λ) dλ.
//
// g must be smooth on the open interval. When hi = +inf and s = 0 the tail
// is mapped through λ -> 1/w, which requires g(λ) ~ O(λ^{−g_decay}) at
// infinity with p − g_decay < −1. g_scale marks where that asymptotic
// regime starts (e.g. |z| for g = 1/(λ+z)).
template <typename G>
Complex power_exp_integral(double p, double lo, double hi, double s, G&& g,
                           double g_decay, double g_scale, double abs_tol) {
   Complex total{0.0, 0.0};

   // Head [lo, head_hi] with the algebraic singularity at 0 removed by λ = u^κ.
   double head_hi = lo;
   if (lo == 0.0 && p < 0.0) {
      head_hi = std::min(hi, 1.0);
      const int kappa = std::max(2, static_cast<int>(std::ceil(2.0 / (p + 1.0))));
      const double u_hi = std::pow(head_hi, 1.0 / kappa);
      auto integrand = [&](double u) -> Complex {
         const double lam = std::pow(u, kappa);
         return static_cast<double>(kappa) * std::pow(u, kappa * (p + 1.0) - 1.0) *
                std::exp(-s * lam) * g(lam);
      };
      total += quad::integrate(integrand, 0.0, u_hi, abs_tol / 3.0);
   }

   // Upper cutoff when the exponential factor dominates.
   double hi_eff = hi;
   if (s > 0.0) {
      double ref_lam = std::max(head_hi, 1e-3);
      if (p > 0.0)
         ref_lam = std::max(ref_lam, std::min(p / s, 1e300));
      const double log_ref = p * std::log(ref_lam) - s * ref_lam;
      double cut = std::max({1.0, head_hi * 2.0, ref_lam});
      while (cut < 1e290 &&
             p * std::log(cut) - s * cut > log_ref + std::log(1e-20))
         cut *= 1.5;
      hi_eff = std::min(hi, cut);
   }

   const double mid_lo = std::max(lo, head_hi);
   if (std::isfinite(hi_eff)) {
      if (hi_eff > mid_lo) {
         if (mid_lo > 0.0 && hi_eff / mid_lo > 10.0) {
            // Wide range: integrate in v = ln λ.
            auto integrand = [&](double v) -> Complex {
               const double lam = std::exp(v);
               return std::exp((p + 1.0) * v - s * lam) * g(lam);
            };
            total += quad::integrate(integrand, std::log(mid_lo), std::log(hi_eff),
                                     abs_tol / 3.0);
         } else {
            auto integrand = [&](double lam) -> Complex {
               return std::pow(lam, p) * std::exp(-s * lam) * g(lam);
            };
            total += quad::integrate(integrand, mid_lo, hi_eff, abs_tol / 3.0);
         }
      }
      return total;
   }

   // s == 0 with hi = +inf: finite part up to Λ, then the 1/λ map for the tail.
   const double cut = std::max({1.0, 2.0 * mid_lo, 4.0 * g_scale});
   if (cut > mid_lo) {
      if (mid_lo > 0.0 && cut / mid_lo > 10.0) {
         auto integrand = [&](double v) -> Complex {
            const double lam = std::exp(v);
            return std::exp((p + 1.0) * v) * g(lam);
         };
         total += quad::integrate(integrand, std::log(mid_lo), std::log(cut),
                                  abs_tol / 3.0);
      } else {
         auto integrand = [&](double lam) -> Complex {
            return std::pow(lam, p) * g(lam);
         };
         total += quad::integrate(integrand, mid_lo, cut, abs_tol / 3.0);
      }
   }
   // ∫_Λ^∞ λ^p g dλ = ∫_0^{1/Λ} w^{−p−2} g(1/w) dw; exponent at w=0 is
   // g_decay − p − 2 > −1 by the integrability preconditions.
   const double e0 = g_decay - p - 2.0;
   if (e0 <= -1.0)
      throw DivergentMeasure("tail integral diverges");
   auto w_integrand = [&](double w) -> Complex {
      return std::pow(w, -p - 2.0) * g(1.0 / w);
   };
   if (e0 < 0.0) {
      const int kappa = std::max(2, static_cast<int>(std::ceil(2.0 / (e0 + 1.0))));
      const double v_hi = std::pow(1.0 / cut, 1.0 / kappa);
      auto integrand = [&](double v) -> Complex {
         const double w = std::pow(v, kappa);
         return static_cast<double>(kappa) * std::pow(v, kappa - 1.0) * w_integrand(w);
      };
      total += quad::integrate(integrand, 0.0, v_hi, abs_tol / 3.0);
   } else {
      total += quad::integrate(w_integrand, 0.0, 1.0 / cut, abs_tol / 3.0);
   }
   return total;
}

} // namespace detail

// Value of ∫ dσ(λ)/(λ+1); throws when the measure metadata marks it divergent.
inline double validate_measure(const Measure& m) {
   double total = 0.0;
   for (const Atom& a : m.atoms) {
      detail::check_atom(a);
      total += a.weight / (a.position + 1.0);
   }
   for (const DensityPiece& pc : m.pieces) {
      detail::check_piece(pc);
      auto g = [](double lam) -> Complex { return Complex{1.0 / (1.0 + lam), 0.0}; };
      total += pc.scale *
               detail::power_exp_integral(pc.power, pc.lo, pc.hi, pc.decay, g,
                                          1.0, 1.0, 1e-13)
                  .real();
   }
   return total;
}

// φ_σ(1−w) = ∫ (1−w)^λ dσ(λ), parametrized by the distance w from 1 so the
// decay rate −ln(1−w) stays accurate for w down to machine scale.
inline double phi_sigma_one_minus(const Measure& m, double w) {
   if (!(w > 0.0) || !(w < 1.0))
      throw DomainError("phi_sigma argument must lie in (0,1)");
   const double log_t = std::log1p(-w); // < 0
   double total = 0.0;
   for (const Atom& a : m.atoms)
      total += a.weight * std::exp(a.position * log_t);
   for (const DensityPiece& pc : m.pieces) {
      const double q = pc.decay - log_t;
      if (pc.lo == 0.0 && pc.hi == kInf && pc.power > -1.0) {
         // ∫₀^∞ λ^p e^{−qλ} dλ = Γ(p+1) / q^{p+1}
         total += pc.scale * std::exp(std::lgamma(pc.power + 1.0) -
                                      (pc.power + 1.0) * std::log(q));
         continue;
      }
      auto g = [](double) -> Complex { return Complex{1.0, 0.0}; };
      total += pc.scale *
               detail::power_exp_integral(pc.power, pc.lo, pc.hi, q, g, 0.0,
                                          1.0, 1e-13)
                  .real();
   }
   return total;
}

// φ_σ(t) = ∫ t^λ dσ(λ) for t in (0,1).
inline double phi_sigma(const Measure& m, double t) {
   if (!(t > 0.0) || !(t < 1.0))
      throw DomainError("phi_sigma argument must lie in (0,1)");
   return phi_sigma_one_minus(m, 1.0 - t);
}

// ∫_0^1 φ_σ(t) dt, by the closed identity ∫ φ_σ = ∫ dσ/(λ+1).
inline double phi_l1_norm(const Measure& m) {
   return validate_measure(m);
}

// ∫ dσ(λ)/λ; +inf when the integral diverges at 0.
inline double integral_over_lambda(const Measure& m) {
   double total = 0.0;
   for (const Atom& a : m.atoms)
      total += a.weight / a.position;
   for (const DensityPiece& pc : m.pieces) {
      if (pc.lo == 0.0 && pc.power <= 0.0)
         return kInf;
      auto g = [](double) -> Complex { return Complex{1.0, 0.0}; };
      total += pc.scale *
               detail::power_exp_integral(pc.power - 1.0, pc.lo, pc.hi, pc.decay,
                                          g, 0.0, 1.0, 1e-13)
                  .real();
   }
   return total;
}

// Cauchy transform ∫ dσ(λ)/(λ+z) for z off (−∞, 0].
inline Complex cauchy_transform(const Measure& m, Complex z) {
   Complex total{0.0, 0.0};
   for (const Atom& a : m.atoms)
      total += a.weight / (a.position + z);
   const double zs = std::abs(z);
   for (const DensityPiece& pc : m.pieces) {
      auto g = [&](double lam) -> Complex { return 1.0 / (lam + z); };
      total += pc.scale *
               detail::power_exp_integral(pc.power, pc.lo, pc.hi, pc.decay, g,
                                          1.0, std::max(zs, 1.0), 1e-13);
   }
   return total;
}

// Gram matrix G[i][j] = φ_σ(t_i t_j); positive semidefinite by the kernel
// property of φ_σ.
inline std::vector<std::vector<double>>
kernel_gram(const Measure& m, const std::vector<double>& points) {
   if (m.is_zero())
      throw DomainError("kernel_gram requires a non-zero measure");
   for (double t : points)
      if (!(t > 0.0) || !(t < 1.0))
         throw DomainError("kernel_gram points must lie in (0,1)");
   const std::size_t n = points.size();
   std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
   for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
         g[i][j] = phi_sigma(m, points[i] * points[j]);
         g[j][i] = g[i][j];
      }
   return g;
}

inline void to_json(nlohmann::json& j, const Atom& a) {
   j = nlohmann::json{{"lambda", a.position}, {"weight", a.weight}};
}

inline void from_json(const nlohmann::json& j, Atom& a) {
   j.at("lambda").get_to(a.position);
   j.at("weight").get_to(a.weight);
}

inline void to_json(nlohmann::json& j, const DensityPiece& pc) {
   j = nlohmann::json{{"lo", pc.lo},
                      {"scale", pc.scale},
                      {"power", pc.power},
                      {"decay", pc.decay}};
   if (pc.hi == kInf)
      j["hi"] = "inf";
   else
      j["hi"] = pc.hi;
}

inline void from_json(const nlohmann::json& j, DensityPiece& pc) {
   j.at("lo").get_to(pc.lo);
   if (j.at("hi").is_string())
      pc.hi = kInf;
   else
      pc.hi = j.at("hi").get<double>();
   j.at("scale").get_to(pc.scale);
   j.at("power").get_to(pc.power);
   pc.decay = j.value("decay", 0.0);
}

inline void to_json(nlohmann::json& j, const Measure& m) {
   j = nlohmann::json{{"atoms", m.atoms}, {"pieces", m.pieces}};
}

inline void from_json(const nlohmann::json& j, Measure& m) {
   m.atoms = j.value("atoms", std::vector<Atom>{});
   m.pieces = j.value("pieces", std::vector<DensityPiece>{});
}

} // namespace hurwitz

#endif
