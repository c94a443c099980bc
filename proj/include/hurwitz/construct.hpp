#ifndef HURWITZ_CONSTRUCT_HPP
#define HURWITZ_CONSTRUCT_HPP

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hurwitz/errors.hpp"
#include "hurwitz/lp1.hpp"
#include "hurwitz/measure.hpp"
#include "hurwitz/stieltjes.hpp"

namespace hurwitz {

// Truncated Taylor series with a certified tail majorant
//    B(R) = c2 · Σ_{k>N} k^p (αR)^k / k!
// (the k^p factor absorbs polynomial growth of the multipliers and of the
// base coefficients). `deflated` counts powers of z divided out, so the
// stored coefficient c_k corresponds to z^{k+deflated} of the original
// construction.
struct TruncatedEntireFunction {
   LogCoeffs coeffs;
   double alpha = 0.0;
   double tail_c2 = 0.0;
   int tail_kpow = 0;
   int deflated = 0;

   int order() const { return static_cast<int>(coeffs.size()) - 1; }

   double coeff(int k) const { return coeffs.value(k); }

   std::vector<double> values() const {
      std::vector<double> v(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k)
         v[k] = coeffs.value(k);
      return v;
   }

   // c_k R^k, assembled in the log domain so factorial-small coefficients
   // at large R still contribute.
   std::vector<double> scaled_coeffs(double R) const {
      const double lr = std::log(R);
      std::vector<double> d(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k)
         d[k] = coeffs.sign[k] == 0
                   ? 0.0
                   : coeffs.sign[k] * std::exp(coeffs.log_abs[k] + k * lr);
      return d;
   }

   // Certified bound on |Σ_{k>N} c_{k} z^k| for |z| <= R.
   double tail_bound(double R) const {
      if (tail_c2 == 0.0 || R < 0.0)
         return 0.0;
      if (R == 0.0)
         return 0.0;
      const double la = alpha > 0.0 ? std::log(alpha * R) : -kInf;
      if (la == -kInf)
         return 0.0;
      double sum = 0.0;
      const int n0 = order() + 1;
      for (int k = n0; k < n0 + 100000; ++k) {
         const int kk = k + deflated; // index in the undeflated series
         const double lt = std::log(tail_c2) + tail_kpow * std::log(double(kk)) +
                           kk * la - deflated * std::log(std::max(R, 1e-300)) -
                           std::lgamma(kk + 1.0);
         const double t = std::exp(lt);
         sum += t;
         if (kk > alpha * R && t < 1e-25 * (sum + 1e-300))
            break;
      }
      return sum;
   }

   // Horner evaluation in w = z/Rs with Rs = max(1, |z|); the certified
   // absolute error is the tail bound plus a rounding allowance.
   std::pair<Complex, double> eval(Complex z) const {
      const double r = std::abs(z);
      const double rs = std::max(1.0, r);
      const std::vector<double> d = scaled_coeffs(rs);
      const Complex w = z / rs;
      Complex v{0.0, 0.0};
      double mag = 0.0;
      for (int k = order(); k >= 0; --k) {
         v = v * w + d[k];
         mag = mag * std::abs(w) + std::abs(d[k]);
      }
      const double err = tail_bound(r) + 8e-16 * mag * coeffs.size();
      return {v, err};
   }
};

enum class MultKind { shift1, shift0 };

// m_k <= c2 · k^kpow for every k >= 1; the witness used by the tail bound.
struct MultBound {
   double c2 = 0.0;
   int kpow = 0;
};

inline std::vector<double> multiplier_sequence(const StieltjesRepr& psi,
                                               MultKind kind, int n) {
   if (n < 0)
      throw DomainError("need N >= 0");
   validate(psi);
   std::vector<double> out(n + 1);
   const int off = kind == MultKind::shift1 ? 1 : 0;
   int k0 = 0;
   if (kind == MultKind::shift0) {
      const double p0 = value_at_zero(psi);
      if (p0 == kInf)
         throw InfiniteValue("psi(0) diverges; shift0 multipliers undefined");
      out[0] = p0;
      k0 = 1;
   }
   for (int k = k0; k <= n; ++k)
      out[k] = eval(psi, Complex{double(k + off), 0.0}).real();
   return out;
}

inline std::vector<double> multiplier_sequence(const ClosedFormPsi& psi,
                                               MultKind kind, int n) {
   if (n < 0)
      throw DomainError("need N >= 0");
   std::vector<double> out(n + 1);
   const int off = kind == MultKind::shift1 ? 1 : 0;
   int k0 = 0;
   if (kind == MultKind::shift0) {
      const double p0 = closed_form_value_at_zero(psi);
      if (p0 == kInf)
         throw InfiniteValue("psi(0) diverges; shift0 multipliers undefined");
      out[0] = p0;
      k0 = 1;
   }
   for (int k = k0; k <= n; ++k)
      out[k] = closed_form_eval(psi, Complex{double(k + off), 0.0}).real();
   return out;
}

inline MultBound multiplier_bound(const StieltjesRepr& psi, MultKind kind) {
   const double mass = validate_measure(psi.sigma);
   if (psi.tag == ClassTag::S) {
      // ψ decreasing on (0,∞): every multiplier with k >= 1 is at most ψ(1).
      return {eval(psi, Complex{1.0, 0.0}).real(), 0};
   }
   const double c2 = psi.a + psi.b + 2.0 * mass; // ψ(k) <= c2·k
   return kind == MultKind::shift0 ? MultBound{c2, 1} : MultBound{2.0 * c2, 1};
}

inline MultBound multiplier_bound(const ClosedFormPsi& psi, MultKind kind) {
   switch (psi.kind) {
   case ClosedFormPsi::Kind::power: {
      if (std::abs(psi.delta) > 1.0)
         throw DomainError("power exponent outside [-1, 1]");
      if (psi.delta <= 0.0) {
         // decreasing: bounded by the value at the first multiplier argument
         const double arg = (kind == MultKind::shift1 ? 2.0 : 1.0) + psi.shift;
         return {std::pow(std::min(arg, 1.0 + psi.shift), psi.delta), 0};
      }
      // (k+off+shift)^δ <= ((1+shift)(k+off))^δ <= 2(1+shift)·k for k >= 1
      return {2.0 * (1.0 + psi.shift), 1};
   }
   case ClosedFormPsi::Kind::rational:
      return multiplier_bound(rational_to_repr(psi), kind);
   case ClosedFormPsi::Kind::special_s:
      return {psi.a + psi.b, 0};
   case ClosedFormPsi::Kind::special_s_inv:
      return kind == MultKind::shift0 ? MultBound{psi.a + psi.b, 1}
                                      : MultBound{psi.a + 2.0 * psi.b, 1};
   }
   throw DomainError("unreachable");
}

// |f_k| <= c2 · k^kpow · α^k / k! for k >= 1 from the expanded zero product.
inline MultBound lp1_tail_majorant(const LP1Function& f) {
   validate(f);
   if (f.m != 0)
      throw DomainError("construction requires F(0) != 0 (m = 0)");
   if (f.alpha == 0.0)
      return {0.0, 0}; // polynomial: the series terminates, tail is exactly 0
   const std::vector<double> p = detail::zero_product_coeffs(f.deltas);
   double s = 0.0;
   for (std::size_t j = 0; j < p.size(); ++j)
      s += p[j] * std::pow(f.alpha, -double(j));
   return {std::abs(f.C) * s, static_cast<int>(f.deltas.size())};
}

// Smallest N with c2 · Σ_{k>N} k^p (αR)^k/k! <= tau.
inline int choose_truncation_order(double c2, double alpha, int kpow, double R,
                                   double tau, int min_order = 0) {
   if (c2 == 0.0 || alpha == 0.0 || R == 0.0)
      return min_order;
   if (!(tau > 0.0))
      throw DomainError("tolerance must be positive");
   const double la = std::log(alpha * R);
   std::vector<double> terms;
   double term_max = 0.0;
   for (int k = 1; k < 200000; ++k) {
      const double t =
         std::exp(std::log(c2) + kpow * std::log(double(k)) + k * la -
                  std::lgamma(k + 1.0));
      terms.push_back(t);
      term_max = std::max(term_max, t);
      if (k > alpha * R && t < std::min(tau * 1e-8, term_max * 1e-30))
         break;
   }
   double suffix = 0.0;
   int n = static_cast<int>(terms.size());
   for (int k = static_cast<int>(terms.size()); k >= 1; --k) {
      suffix += terms[k - 1];
      if (suffix > tau) {
         n = k;
         break;
      }
      n = k - 1;
   }
   if (suffix <= tau && n == 0)
      return min_order;
   if (n >= static_cast<int>(terms.size()))
      throw NonConvergence("truncation order search exhausted");
   return std::max(n, min_order);
}

// c_k = multiplier_k · f_k, with the combined tail majorant data.
inline TruncatedEntireFunction build_entire(const std::vector<double>& multipliers,
                                            const LogCoeffs& base, double alpha,
                                            double tail_c2, int tail_kpow) {
   if (multipliers.size() != base.size())
      throw LengthMismatch("multiplier and base coefficient lists differ in length");
   TruncatedEntireFunction t;
   t.alpha = alpha;
   t.tail_c2 = tail_c2;
   t.tail_kpow = tail_kpow;
   t.coeffs.log_abs.resize(base.size());
   t.coeffs.sign.resize(base.size());
   for (std::size_t k = 0; k < base.size(); ++k) {
      const double m = multipliers[k];
      if (m < 0.0)
         throw DomainError("multipliers must be non-negative");
      if (m == 0.0 || base.sign[k] == 0) {
         t.coeffs.log_abs[k] = -LogCoeffs::kInfLog;
         t.coeffs.sign[k] = 0;
      } else {
         t.coeffs.log_abs[k] = std::log(m) + base.log_abs[k];
         t.coeffs.sign[k] = base.sign[k];
      }
   }
   return t;
}

inline TruncatedEntireFunction build_entire(const std::vector<double>& multipliers,
                                            const std::vector<double>& base,
                                            double alpha, double tail_c2,
                                            int tail_kpow) {
   return build_entire(multipliers, LogCoeffs::from_values(base), alpha, tail_c2,
                       tail_kpow);
}

// One-call pipeline: pick N for the target disk, then build.
template <typename Psi>
TruncatedEntireFunction build_series(const Psi& psi, MultKind kind,
                                     const LP1Function& f, double R,
                                     double tau = 1e-12) {
   const MultBound mb = multiplier_bound(psi, kind);
   const MultBound fb = lp1_tail_majorant(f);
   const double c2 = mb.c2 * fb.c2;
   const int kpow = mb.kpow + fb.kpow;
   const int min_order = static_cast<int>(f.deltas.size());
   const int n = choose_truncation_order(c2, f.alpha, kpow, R, tau, min_order);
   return build_entire(multiplier_sequence(psi, kind, n), lp1_log_taylor(f, n),
                       f.alpha, c2, kpow);
}

inline std::pair<Complex, double> eval_taylor(const TruncatedEntireFunction& t,
                                              Complex z) {
   return t.eval(z);
}

// Drop the leading coefficient (which must vanish) and divide by z.
inline TruncatedEntireFunction deflate(const TruncatedEntireFunction& t) {
   if (t.coeffs.size() < 2)
      throw DomainError("nothing left to deflate");
   if (t.coeffs.sign[0] != 0 &&
       std::exp(t.coeffs.log_abs[0]) > 1e-12 * (1.0 + std::abs(t.coeff(1))))
      throw DomainError("cannot deflate: c_0 does not vanish");
   TruncatedEntireFunction out = t;
   out.coeffs.log_abs.erase(out.coeffs.log_abs.begin());
   out.coeffs.sign.erase(out.coeffs.sign.begin());
   out.deflated = t.deflated + 1;
   return out;
}

// Integral-representation evaluation:
//    tag S:    a F(z) + ∫₀¹ (b + φ_σ(t)) F(tz) dt
//    tag S⁻¹:  (a + bz) F′(z) + z ∫₀¹ φ_σ(t) F′(tz) dt
// The substitution t = 1 − e^{−s} regularizes the t → 1 endpoint, where
// φ_σ may blow up; S_max = 80 pushes the truncated mass below 1e−17 even
// for kernels growing like (1−t)^{−1/2}.
inline Complex eval_integral_rep(const StieltjesRepr& psi, const LP1Function& f,
                                 Complex z, double rel_tol = 1e-12) {
   validate(psi);
   validate(f);
   if (f.m != 0)
      throw DomainError("integral representation requires F(0) != 0 (m = 0)");
   const double smax = 80.0;
   const bool splus = psi.tag == ClassTag::S;
   auto base = [&](Complex w) {
      return splus ? lp1_eval(f, w) : lp1_eval_derivative(f, w);
   };
   const double ref =
      std::max({std::abs(base(z)), std::abs(base(0.5 * z)), std::abs(base({0.0, 0.0})), 1.0});
   auto integrand = [&](double s) -> Complex {
      const double w = std::exp(-s);
      const double t = -std::expm1(-s);
      double weight = splus ? psi.b : 0.0;
      if (!psi.sigma.is_zero())
         weight += phi_sigma_one_minus(psi.sigma, w);
      if (weight == 0.0)
         return {0.0, 0.0};
      return weight * base(t * z) * w;
   };
   Complex integral{0.0, 0.0};
   if (!psi.sigma.is_zero() || (splus && psi.b > 0.0))
      integral = quad::integrate(integrand, 0.0, smax, rel_tol * ref);
   if (splus)
      return psi.a * base(z) + integral;
   return (psi.a + psi.b * z) * base(z) + z * integral;
}

// Max relative discrepancy between the two evaluation paths.
inline double representation_consistency(const StieltjesRepr& psi,
                                         const LP1Function& f,
                                         const std::vector<Complex>& points,
                                         double tau = 1e-12) {
   double rmax = 1.0;
   for (Complex z : points)
      rmax = std::max(rmax, std::abs(z));
   const MultKind kind =
      psi.tag == ClassTag::S ? MultKind::shift1 : MultKind::shift0;
   const TruncatedEntireFunction t = build_series(psi, kind, f, rmax, tau);
   double worst = 0.0;
   for (Complex z : points) {
      const Complex a = t.eval(z).first;
      const Complex b = eval_integral_rep(psi, f, z);
      worst = std::max(worst, std::abs(a - b) / (std::abs(b) + 1e-300));
   }
   return worst;
}

inline void to_json(nlohmann::json& j, const TruncatedEntireFunction& t) {
   // JSON has no -inf; a finite sentinel that still flushes exp() to zero
   // round-trips exactly.
   std::vector<double> la = t.coeffs.log_abs;
   for (double& v : la)
      if (!std::isfinite(v))
         v = -1.0e308;
   j = nlohmann::json{{"coeffs", t.values()},
                      {"alpha", t.alpha},
                      {"tail_c2", t.tail_c2},
                      {"tail_kpow", t.tail_kpow},
                      {"deflated", t.deflated},
                      {"N", t.order()},
                      {"log_abs", la},
                      {"sign", t.coeffs.sign}};
}

inline void from_json(const nlohmann::json& j, TruncatedEntireFunction& t) {
   t.alpha = j.at("alpha").get<double>();
   t.tail_c2 = j.value("tail_c2", 0.0);
   t.tail_kpow = j.value("tail_kpow", 0);
   t.deflated = j.value("deflated", 0);
   if (j.contains("log_abs")) {
      j.at("log_abs").get_to(t.coeffs.log_abs);
      j.at("sign").get_to(t.coeffs.sign);
      for (std::size_t k = 0; k < t.coeffs.size(); ++k)
         if (t.coeffs.sign[k] == 0)
            t.coeffs.log_abs[k] = -LogCoeffs::kInfLog;
   } else {
      t.coeffs = LogCoeffs::from_values(j.at("coeffs").get<std::vector<double>>());
   }
}

} // namespace hurwitz

#endif
