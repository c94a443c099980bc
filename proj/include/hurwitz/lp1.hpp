#ifndef HURWITZ_LP1_HPP
#define HURWITZ_LP1_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <json.hpp>

#include "hurwitz/errors.hpp"
#include "hurwitz/quadrature.hpp"

namespace hurwitz {

// Taylor coefficients kept as log-magnitude plus sign, so factorial-scale
// decay stays representable far past the double underflow threshold.
struct LogCoeffs {
   std::vector<double> log_abs; // ln|c_k|, -inf for exact zero
   std::vector<int> sign;       // -1, 0, +1

   std::size_t size() const { return log_abs.size(); }

   double value(std::size_t k) const {
      return sign[k] == 0 ? 0.0 : sign[k] * std::exp(log_abs[k]);
   }

   static LogCoeffs from_values(const std::vector<double>& v) {
      LogCoeffs lc;
      lc.log_abs.reserve(v.size());
      lc.sign.reserve(v.size());
      for (double x : v) {
         lc.sign.push_back(x == 0.0 ? 0 : (x > 0.0 ? 1 : -1));
         lc.log_abs.push_back(x == 0.0 ? -kInfLog : std::log(std::abs(x)));
      }
      return lc;
   }

   static constexpr double kInfLog = std::numeric_limits<double>::infinity();
};

// F(z) = C z^m e^{αz} ∏ (1 + δ_ν z), the canonical data of an LP-I function
// with a finite zero list.
struct LP1Function {
   double C = 1.0;
   int m = 0;
   double alpha = 0.0;
   std::vector<double> deltas;
};

inline void validate(const LP1Function& f) {
   if (f.C == 0.0 || !std::isfinite(f.C))
      throw DomainError("LP-I constant C must be non-zero and finite");
   if (f.m < 0 || f.alpha < 0.0)
      throw DomainError("LP-I needs m >= 0 and alpha >= 0");
   for (double d : f.deltas)
      if (d < 0.0)
         throw DomainError("LP-I zero parameters must be non-negative");
}

inline Complex lp1_eval(const LP1Function& f, Complex z) {
   Complex v{f.C, 0.0};
   for (int i = 0; i < f.m; ++i)
      v *= z;
   v *= std::exp(f.alpha * z);
   for (double d : f.deltas)
      v *= 1.0 + d * z;
   return v;
}

// F'(z) by the product rule; exact, no coefficient round trip.
inline Complex lp1_eval_derivative(const LP1Function& f, Complex z) {
   // F = C z^m e^{αz} P(z),  F' = F·(m/z + α + Σ δ/(1+δz)) away from zeros;
   // assembled without the division so zeros of P or z^m are fine.
   Complex p{1.0, 0.0};
   Complex dp{0.0, 0.0};
   for (double d : f.deltas) {
      dp = dp * (1.0 + d * z) + p * d;
      p *= 1.0 + d * z;
   }
   Complex zm{1.0, 0.0}, dzm{0.0, 0.0};
   for (int i = 0; i < f.m; ++i) {
      dzm = dzm * z + zm;
      zm *= z;
   }
   const Complex e = std::exp(f.alpha * z);
   return f.C * e * (dzm * p + zm * dp + f.alpha * zm * p);
}

namespace detail {

// Expanded coefficients of ∏ (1 + δ_ν z); all non-negative.
inline std::vector<double> zero_product_coeffs(const std::vector<double>& deltas) {
   std::vector<double> p{1.0};
   for (double d : deltas) {
      p.push_back(0.0);
      for (std::size_t k = p.size() - 1; k > 0; --k)
         p[k] += d * p[k - 1];
   }
   return p;
}

inline double log_sum_exp(const std::vector<double>& logs) {
   double m = -LogCoeffs::kInfLog;
   for (double l : logs)
      m = std::max(m, l);
   if (m == -LogCoeffs::kInfLog)
      return m;
   double s = 0.0;
   for (double l : logs)
      s += std::exp(l - m);
   return m + std::log(s);
}

} // namespace detail

// Coefficients f_0..f_N in log form, by convolving the exponential series
// with the expanded zero product and shifting by m.
inline LogCoeffs lp1_log_taylor(const LP1Function& f, int n) {
   if (n < 0)
      throw DomainError("need N >= 0");
   validate(f);
   const std::vector<double> p = detail::zero_product_coeffs(f.deltas);
   const double log_c = std::log(std::abs(f.C));
   const int sgn = f.C > 0.0 ? 1 : -1;
   const double log_alpha = f.alpha > 0.0 ? std::log(f.alpha) : -LogCoeffs::kInfLog;
   LogCoeffs out;
   out.log_abs.assign(n + 1, -LogCoeffs::kInfLog);
   out.sign.assign(n + 1, 0);
   std::vector<double> terms;
   for (int k = f.m; k <= n; ++k) {
      const int kk = k - f.m;
      terms.clear();
      for (int j = 0; j <= std::min<int>(kk, int(p.size()) - 1); ++j) {
         if (p[j] == 0.0)
            continue;
         const int e = kk - j; // power of α
         if (e > 0 && f.alpha == 0.0)
            continue;
         const double lt = std::log(p[j]) + e * (e > 0 ? log_alpha : 0.0) -
                           std::lgamma(e + 1.0);
         terms.push_back(lt);
      }
      const double l = detail::log_sum_exp(terms);
      if (l != -LogCoeffs::kInfLog) {
         out.log_abs[k] = log_c + l;
         out.sign[k] = sgn;
      }
   }
   return out;
}

// Plain-double coefficients; entries far below the underflow threshold
// flush to zero (use lp1_log_taylor when that matters).
inline std::vector<double> lp1_taylor(const LP1Function& f, int n) {
   const LogCoeffs lc = lp1_log_taylor(f, n);
   std::vector<double> out(n + 1);
   for (int k = 0; k <= n; ++k)
      out[k] = lc.value(k);
   return out;
}

// Coefficients of F': {(k+1) f_{k+1}}, k = 0..N.
inline std::vector<double> lp1_derivative_coeffs(const LP1Function& f, int n) {
   const std::vector<double> c = lp1_taylor(f, n + 1);
   std::vector<double> out(n + 1);
   for (int k = 0; k <= n; ++k)
      out[k] = (k + 1.0) * c[k + 1];
   return out;
}

inline void to_json(nlohmann::json& j, const LP1Function& f) {
   j = nlohmann::json{{"C", f.C}, {"m", f.m}, {"alpha", f.alpha}, {"deltas", f.deltas}};
}

inline void from_json(const nlohmann::json& j, LP1Function& f) {
   f.C = j.value("C", 1.0);
   f.m = j.value("m", 0);
   f.alpha = j.value("alpha", 0.0);
   f.deltas = j.value("deltas", std::vector<double>{});
}

} // namespace hurwitz

#endif
