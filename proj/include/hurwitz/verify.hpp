#ifndef HURWITZ_VERIFY_HPP
#define HURWITZ_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "hurwitz/construct.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz {

// Damped kernel u(t) = e^{-xt}(b + φ_σ(1-t)) on (0,1), zero beyond.
// The drop_b variant omits the constant offset; it pairs with the
// imaginary-part identity for the shift0 construction, where the a-term
// is handled separately.
struct DecreasingKernelSpec {
   double x = 0.0;
   double b = 0.0;
   Measure measure;
   bool drop_b = false;

   double operator()(double t) const {
      if (t <= 0.0 || t >= 1.0)
         return 0.0;
      double v = drop_b ? 0.0 : b;
      if (!measure.is_zero())
         v += phi_sigma_one_minus(measure, t);
      return std::exp(-x * t) * v;
   }
};

inline DecreasingKernelSpec kernel_from_psi(const StieltjesRepr& psi, double x) {
   validate(psi);
   if (x < 0.0)
      throw DomainError("kernel damping requires x >= 0");
   return {x, psi.b, psi.sigma, psi.tag != ClassTag::S};
}

namespace detail {

// Sample u on (0, support); reject if it ever increases. A constant
// stretch is tolerated — it only costs strictness of the conclusion,
// not validity of the fold.
template <typename U>
double check_nonincreasing(U&& u, double support) {
   const int n = 96;
   double prev = kInf;
   double umax = 0.0;
   for (int i = 1; i <= n; ++i) {
      const double t = support * i / (n + 1.0);
      const double v = u(t);
      umax = std::max(umax, std::abs(v));
      if (v > prev + 1e-11 * (umax + 1.0))
         throw HypothesisViolation("kernel is not non-increasing");
      prev = v;
   }
   return umax;
}

} // namespace detail

// ∫₀^∞ u(t) sin(yt) dt computed through the period-pair fold
//    (1/y) ∫₀^π Σ_j [u((t+2jπ)/y) − u((t+(2j+1)π)/y)] sin t dt,
// whose integrand is non-negative for non-increasing u. `support` is a
// point beyond which u vanishes.
template <typename U>
double mal_integral_fold(U&& u, double y, double support = 1.0) {
   if (!(y > 0.0))
      throw DomainError("mal_integral requires y > 0");
   if (!(support > 0.0))
      throw DomainError("kernel support must be positive");
   const double umax = detail::check_nonincreasing(u, support);
   const int jmax = static_cast<int>(y * support / (2.0 * M_PI)) + 1;
   auto folded = [&](double t) {
      double s = 0.0;
      for (int j = 0; j <= jmax; ++j) {
         const double hi = u((t + 2.0 * j * M_PI) / y);
         const double lo = u((t + (2.0 * j + 1.0) * M_PI) / y);
         s += hi - lo;
         if (hi == 0.0 && lo == 0.0)
            break;
      }
      return s * std::sin(t);
   };
   const double tol = 1e-13 * std::max(1.0, umax * support * y);
   return quad::integrate_real(folded, 0.0, M_PI, tol) / y;
}

inline double mal_integral(const DecreasingKernelSpec& u, double y) {
   return mal_integral_fold(u, y, 1.0);
}

inline double mal_integral(const std::function<double(double)>& u, double y,
                           double support = 1.0) {
   return mal_integral_fold(u, y, support);
}

// Direct oscillatory quadrature over half-periods; the independent
// cross-check for the fold.
template <typename U>
double mal_integral_direct(U&& u, double y, double support = 1.0) {
   if (!(y > 0.0))
      throw DomainError("mal_integral requires y > 0");
   auto f = [&](double t) { return u(t) * std::sin(y * t); };
   const double h = M_PI / y;
   double total = 0.0;
   double t0 = 0.0;
   while (t0 < support) {
      const double t1 = std::min(t0 + h, support);
      total += quad::integrate_real(f, t0, t1, 1e-13);
      t0 = t1;
   }
   return total;
}

// ∫₀^∞ u — the natural scale for positivity margins.
template <typename U>
double kernel_l1(U&& u, double support = 1.0) {
   return quad::integrate_real([&](double t) { return u(t); }, 0.0, support,
                               1e-12);
}

struct ImCheck {
   double lhs = 0.0;
   double rhs = 0.0;
   bool negative = false; // lhs strictly below the noise margin
   double margin = 0.0;   // positivity noise floor, 1e-12 · ∫u
};

// Identity for the shift1 construction on e^z:
//    Im(e^{-z} E(z)) = −∫₀^∞ u(t) sin(yt) dt,  u = e^{-xt}(b + φ_σ(1-t)).
inline ImCheck im_transform_check(const StieltjesRepr& psi,
                                  const TruncatedEntireFunction& e, Complex z) {
   if (psi.tag != ClassTag::S)
      throw DomainError("im_transform_check needs a class-S multiplier");
   if (z.real() < 0.0 || z.imag() < 0.0)
      throw DomainError("needs Re z >= 0 and Im z >= 0");
   ImCheck out;
   out.lhs = (std::exp(-z) * e.eval(z).first).imag();
   const DecreasingKernelSpec u = kernel_from_psi(psi, z.real());
   out.margin = 1e-12 * kernel_l1(u);
   out.rhs = z.imag() > 0.0 ? -mal_integral(u, z.imag()) : 0.0;
   out.negative = out.lhs < -out.margin;
   return out;
}

// Shift0 analogue:
//    Im(z⁻¹ e^{-z} E⁻(z)) = −a·y/(x²+y²) − ∫₀^∞ u(t) sin(yt) dt,
// with u = e^{-xt} φ_σ(1-t) (no b offset).
inline ImCheck imm_transform_check(const StieltjesRepr& psi,
                                   const TruncatedEntireFunction& e, Complex z) {
   if (psi.tag != ClassTag::SInv)
      throw DomainError("imm_transform_check needs a class-S⁻¹ multiplier");
   if (z.real() < 0.0 || z.imag() < 0.0)
      throw DomainError("needs Re z >= 0 and Im z >= 0");
   if (std::abs(z) == 0.0)
      throw DomainError("z = 0 is a pole of the identity");
   ImCheck out;
   out.lhs = (std::exp(-z) * e.eval(z).first / z).imag();
   const DecreasingKernelSpec u = kernel_from_psi(psi, z.real());
   out.margin = 1e-12 * (kernel_l1(u) + psi.a);
   const double x = z.real(), y = z.imag();
   out.rhs = y > 0.0
                ? -psi.a * y / (x * x + y * y) - mal_integral(u, y)
                : 0.0;
   out.negative = out.lhs < -out.margin;
   return out;
}

// ---------------------------------------------------------------------------
// End-to-end suites

struct ClauseRow {
   std::string id;
   std::string description;
   std::string status; // pass | fail | inconclusive | skipped
   double margin = 0.0;
   std::string note;
};

struct SuiteReport {
   std::vector<ClauseRow> clauses;
   std::vector<std::string> warnings;

   bool all_pass() const {
      for (const ClauseRow& c : clauses)
         if (c.status == "fail" || c.status == "inconclusive")
            return false;
      return true;
   }
};

struct SuiteParams {
   double R = 10.0;             // build / sampling disk
   double tau = 1e-12;          // truncation target on that disk
   double contour_radius = 8.0; // winding-count contour
   double rep_tol = 1e-8;       // dual-path evaluation agreement
   double indicator_tol = 0.05;
   bool with_im_identity = true; // only meaningful for the e^z base
};

namespace detail {

inline void add_clause(SuiteReport& rep, std::string id, std::string desc,
                       bool pass, double margin, std::string note = "") {
   rep.clauses.push_back({std::move(id), std::move(desc),
                          pass ? "pass" : "fail", margin, std::move(note)});
}

inline std::vector<Complex> sample_disk(double R) {
   std::vector<Complex> pts;
   for (double f : {0.15, 0.45, 0.8}) {
      const double r = f * R;
      pts.push_back({r, 0.0});
      pts.push_back({0.0, r});
      pts.push_back({-0.4 * r, 0.7 * r});
      pts.push_back({0.3 * r, -0.6 * r});
   }
   return pts;
}

} // namespace detail

// Shared body for both suites. The e^z base with with_im_identity gives
// the first theorem's harness; a general LP-I base gives the second's.
inline SuiteReport run_suite(const StieltjesRepr& psi, const LP1Function& f,
                             const SuiteParams& p) {
   validate(psi);
   validate(f);
   if (f.m != 0)
      throw DomainError("suite requires F(0) != 0");
   SuiteReport rep;
   if (classify(psi) == Speciality::special)
      rep.warnings.push_back(
         "multiplier is special: closed-form factorization applies, "
         "boundary verdicts are expected");
   const bool splus = psi.tag == ClassTag::S;
   const MultKind kind = splus ? MultKind::shift1 : MultKind::shift0;
   const double psi0 = splus ? kInf : value_at_zero(psi);
   const bool zero_branch = !splus && psi0 == 0.0;

   const double buildR = std::max(p.R, p.contour_radius);
   const TruncatedEntireFunction t = build_series(psi, kind, f, buildR, p.tau);

   // multipliers positive (psi(0) may vanish in the shift0 branch)
   {
      const auto mults = multiplier_sequence(psi, kind, t.order());
      double mn = kInf;
      for (std::size_t k = zero_branch ? 1 : 0; k < mults.size(); ++k)
         mn = std::min(mn, mults[k]);
      detail::add_clause(rep, "multipliers",
                         "multiplier sequence is strictly positive", mn > 0.0,
                         mn);
   }

   // coefficient signs: none negative; zeros only from the base or psi(0)=0
   {
      bool ok = true;
      for (std::size_t k = 0; k < t.coeffs.size(); ++k)
         if (t.coeffs.sign[k] < 0)
            ok = false;
      if (!zero_branch && t.coeffs.sign[0] == 0)
         ok = false;
      detail::add_clause(rep, "signs", "Taylor coefficients are non-negative",
                         ok, ok ? 1.0 : -1.0);
   }

   // dual-path evaluation agreement
   {
      const double worst =
         representation_consistency(psi, f, detail::sample_disk(p.R), p.tau);
      detail::add_clause(rep, "representation",
                         "series and integral evaluations agree",
                         worst <= p.rep_tol, p.rep_tol - worst);
   }

   // |G(-r)| <= |G(r)| down the real axis (strict once coefficients mix)
   {
      double worst = kInf;
      for (double r : {0.3 * p.R, 0.6 * p.R, 0.9 * p.R}) {
         const double plus = std::abs(t.eval({r, 0.0}).first);
         const double minus = std::abs(t.eval({-r, 0.0}).first);
         worst = std::min(worst, plus - minus);
      }
      detail::add_clause(rep, "axis", "|G(-r)| <= |G(r)| on the real axis",
                         worst >= 0.0, worst);
   }

   // deflation branch: the constant term must vanish exactly
   TruncatedEntireFunction g = t;
   if (zero_branch) {
      const bool c0_zero = t.coeffs.sign[0] == 0;
      detail::add_clause(rep, "deflation",
                         "constant term vanishes when the multiplier does",
                         c0_zero, c0_zero ? 1.0 : -1.0);
      if (!c0_zero)
         return rep;
      g = deflate(t);
   }

   // stability verdict on the (possibly deflated) function
   {
      VerdictParams vp;
      vp.contour_radius = p.contour_radius;
      vp.indicator_tol = p.indicator_tol;
      if (f.alpha > 0.0) {
         const int defl = g.deflated;
         vp.evaluator = [psi, f, defl](Complex z) {
            Complex v = eval_integral_rep(psi, f, z);
            for (int i = 0; i < defl; ++i)
               v /= z;
            return v;
         };
      }
      const StabilityReport sr = hurwitz_verdict(g, vp);
      const bool special_ok = classify(psi) == Speciality::special &&
                              sr.verdict == Verdict::boundary;
      double worst_re = -kInf;
      for (const auto& [z, res] : sr.roots)
         worst_re = std::max(worst_re, z.real());
      std::ostringstream note;
      note << "verdict=" << to_string(sr.verdict)
           << " rhp_count=" << sr.zero_count_rhp;
      detail::add_clause(rep, "stability",
                         "no roots in the closed right half-plane",
                         sr.verdict == Verdict::stable || special_ok,
                         worst_re == -kInf ? 0.0 : -worst_re, note.str());
   }

   // imaginary-part identity (e^z base only)
   if (p.with_im_identity && f.deltas.empty() && f.alpha == 1.0 && f.m == 0) {
      double worst_gap = 0.0;
      bool all_neg = true;
      bool settled = true;
      for (double x : {0.0, 0.5, 2.0}) {
         for (double y : {0.5, 1.0, M_PI}) {
            const ImCheck c = splus
                                 ? im_transform_check(psi, t, {x, y})
                                 : imm_transform_check(psi, t, {x, y});
            worst_gap = std::max(worst_gap, std::abs(c.lhs - c.rhs));
            if (std::abs(c.lhs) <= c.margin)
               settled = false;
            else if (!c.negative)
               all_neg = false;
         }
      }
      ClauseRow row{"im-identity",
                    "transformed imaginary part matches the kernel integral "
                    "and is negative",
                    "pass", p.rep_tol - worst_gap, ""};
      if (worst_gap > p.rep_tol || !all_neg)
         row.status = "fail";
      else if (!settled)
         row.status = "inconclusive";
      rep.clauses.push_back(row);
   }

   return rep;
}

inline SuiteReport theorem1_suite(const StieltjesRepr& psi,
                                  const SuiteParams& p = {}) {
   return run_suite(psi, LP1Function{1.0, 0, 1.0, {}}, p);
}

inline SuiteReport theorem2_suite(const LP1Function& f,
                                  const StieltjesRepr& psi,
                                  const SuiteParams& p = {}) {
   SuiteParams q = p;
   q.with_im_identity = false;
   return run_suite(psi, f, q);
}

// Fan a fixed corpus out across threads; each job is pure.
inline std::vector<SuiteReport>
run_theorem1_suites(const std::vector<StieltjesRepr>& psis,
                    const SuiteParams& p = {}) {
   std::vector<std::future<SuiteReport>> jobs;
   jobs.reserve(psis.size());
   for (const StieltjesRepr& psi : psis)
      jobs.push_back(std::async(std::launch::async,
                                [psi, p] { return theorem1_suite(psi, p); }));
   std::vector<SuiteReport> out;
   out.reserve(jobs.size());
   for (auto& j : jobs)
      out.push_back(j.get());
   return out;
}

inline void write_suite_summary(std::ostream& os, const SuiteReport& rep,
                                const std::string& label = "") {
   if (!label.empty())
      os << "# " << label << "\n";
   for (const std::string& w : rep.warnings)
      os << "# warning: " << w << "\n";
   os << "clause,description,status,margin\n";
   os.precision(17);
   for (const ClauseRow& c : rep.clauses)
      os << c.id << ",\"" << c.description << "\"," << c.status << ","
         << c.margin << "\n";
}

inline void write_suite_summary(const std::string& path, const SuiteReport& rep,
                                const std::string& label = "") {
   std::ofstream os(path);
   if (!os)
      throw DomainError("cannot open " + path);
   write_suite_summary(os, rep, label);
}

} // namespace hurwitz

#endif
