#ifndef HURWITZ_STABILITY_HPP
#define HURWITZ_STABILITY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/construct.hpp"
#include "hurwitz/errors.hpp"

namespace hurwitz {

enum class RouthResult { stable, not_stable, degenerate };

// Classical criterion: with positive leading coefficient, stability is
// equivalent to positivity of all leading principal minors of the Hurwitz
// matrix. Coefficients are highest-degree first.
inline RouthResult routh_hurwitz(std::vector<double> a) {
   if (a.empty() || a.front() == 0.0)
      throw ZeroLeadingCoefficient("leading coefficient must be non-zero");
   const int n = static_cast<int>(a.size()) - 1;
   if (n == 0)
      return RouthResult::stable; // constant: vacuously no roots
   if (a.front() < 0.0)
      for (double& c : a)
         c = -c;
   // necessary condition: every coefficient strictly positive
   for (int k = 1; k <= n; ++k)
      if (a[k] <= 0.0)
         return RouthResult::not_stable;
   // Routh array: successive rows carry the ratios of consecutive
   // leading principal minors, so positivity of the first column is the
   // minor criterion in a numerically benign elimination form. Rows are
   // rescaled by their max entry (a positive factor, sign-preserving) to
   // keep the degeneracy threshold scale-free.
   std::vector<double> prev, cur;
   for (int k = 0; k <= n; k += 2)
      prev.push_back(a[k]);
   for (int k = 1; k <= n; k += 2)
      cur.push_back(a[k]);
   cur.resize(prev.size(), 0.0);
   bool degenerate = false;
   auto rescale = [](std::vector<double>& row) {
      double mx = 0.0;
      for (double v : row)
         mx = std::max(mx, std::abs(v));
      if (mx > 0.0)
         for (double& v : row)
            v /= mx;
   };
   rescale(prev);
   rescale(cur);
   for (int step = 2; step <= n; ++step) {
      std::vector<double> next(cur.size(), 0.0);
      for (std::size_t j = 0; j + 1 < cur.size(); ++j)
         next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
      rescale(next);
      prev = std::move(cur);
      cur = std::move(next);
      if (std::abs(cur[0]) <= 1e-12) {
         degenerate = true;
         break; // later rows would divide by a vanishing pivot
      }
      if (cur[0] < 0.0)
         return RouthResult::not_stable;
   }
   return degenerate ? RouthResult::degenerate : RouthResult::stable;
}

struct RootResult {
   std::vector<Complex> roots;
   std::vector<double> residuals;
   bool converged = false;
   int sweeps = 0;
};

namespace detail {

inline std::pair<Complex, Complex> horner2(const std::vector<double>& c, Complex z) {
   Complex p{0.0, 0.0}, dp{0.0, 0.0};
   for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
   }
   return {p, dp};
}

// Initial guesses on circles whose radii come from the upper convex hull of
// (k, ln|c_k|) — Bini's placement.
inline std::vector<Complex> initial_roots(const std::vector<double>& c) {
   const int d = static_cast<int>(c.size()) - 1;
   std::vector<int> idx;
   std::vector<double> lc(c.size());
   for (int k = 0; k <= d; ++k)
      lc[k] = c[k] == 0.0 ? -kInf : std::log(std::abs(c[k]));
   // upper hull over the finite points; endpoints 0 and d always finite here
   std::vector<int> hull;
   for (int k = 0; k <= d; ++k) {
      if (lc[k] == -kInf)
         continue;
      while (hull.size() >= 2) {
         const int p = hull[hull.size() - 2], q = hull.back();
         if ((lc[q] - lc[p]) * (k - q) <= (lc[k] - lc[q]) * (q - p))
            hull.pop_back();
         else
            break;
      }
      hull.push_back(k);
   }
   std::vector<Complex> z;
   z.reserve(d);
   for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const int k0 = hull[s], k1 = hull[s + 1];
      const double r = std::exp((lc[k0] - lc[k1]) / (k1 - k0));
      for (int j = 0; j < k1 - k0; ++j) {
         const double th = 2.0 * M_PI * (j + 0.5) / (k1 - k0) + 0.4 * (s + 1);
         z.push_back(r * Complex{std::cos(th), std::sin(th)});
      }
   }
   return z;
}

} // namespace detail

// All roots of c_0 + c_1 z + ... + c_d z^d by simultaneous Aberth–Ehrlich
// iteration. Exact zero leading/trailing coefficients are stripped/deflated
// first; residual is the magnitude of the final Newton correction.
// Convergence is judged over roots with |z| <= focus_radius: far-field
// roots of truncated entire series are ill-conditioned by nature and never
// settle to machine precision.
inline RootResult poly_roots(std::vector<double> c, double focus_radius = kInf) {
   while (c.size() > 1 && c.back() == 0.0)
      c.pop_back();
   if (c.size() < 2)
      throw DomainError("poly_roots needs degree >= 1");
   for (double v : c)
      if (!std::isfinite(v))
         throw DomainError("coefficients must be finite");
   RootResult out;
   while (c.front() == 0.0 && c.size() > 1) {
      out.roots.push_back({0.0, 0.0}); // exact origin root, deflate
      out.residuals.push_back(0.0);
      c.erase(c.begin());
   }
   const int d = static_cast<int>(c.size()) - 1;
   if (d == 0) {
      out.converged = true;
      return out;
   }
   if (d == 1) {
      out.roots.push_back({-c[0] / c[1], 0.0});
      out.residuals.push_back(0.0);
      out.converged = true;
      return out;
   }
   std::vector<Complex> z = detail::initial_roots(c);
   std::vector<double> res(d, kInf);
   const int max_sweeps = 500;
   int sweep = 0;
   int settled = 0;
   for (; sweep < max_sweeps; ++sweep) {
      double moved = 0.0;
      for (int i = 0; i < d; ++i) {
         auto [p, dp] = detail::horner2(c, z[i]);
         if (dp == Complex{0.0, 0.0})
            dp = Complex{1e-300, 0.0};
         const Complex newton = p / dp;
         Complex s{0.0, 0.0};
         for (int j = 0; j < d; ++j)
            if (j != i) {
               Complex diff = z[i] - z[j];
               if (diff == Complex{0.0, 0.0})
                  diff = Complex{1e-14, 1e-14};
               s += 1.0 / diff;
            }
         const Complex denom = 1.0 - newton * s;
         const Complex w =
            denom == Complex{0.0, 0.0} ? newton : newton / denom;
         z[i] -= w;
         res[i] = std::abs(w);
         if (std::abs(z[i]) <= focus_radius)
            moved = std::max(moved, res[i] / (1.0 + std::abs(z[i])));
      }
      // two consecutive quiet sweeps, in case roots migrate across the
      // focus boundary
      settled = moved < 1e-13 ? settled + 1 : 0;
      if (settled >= 2)
         break;
   }
   out.sweeps = sweep + 1;
   out.converged = true;
   for (int i = 0; i < d; ++i)
      if (std::abs(z[i]) <= focus_radius &&
          res[i] >= 1e-10 * (1.0 + std::abs(z[i])))
         out.converged = false;
   for (int i = 0; i < d; ++i) {
      out.roots.push_back(z[i]);
      out.residuals.push_back(res[i]);
   }
   return out;
}

namespace detail {

inline std::pair<Complex, Complex>
series_value_derivative(const TruncatedEntireFunction& t, Complex z) {
   const double rs = std::max(1.0, std::abs(z));
   const std::vector<double> d = t.scaled_coeffs(rs);
   const Complex w = z / rs;
   Complex p{0.0, 0.0}, dp{0.0, 0.0};
   for (int k = t.order(); k >= 0; --k) {
      dp = dp * w + p;
      p = p * w + d[k];
   }
   return {p, dp / rs};
}

} // namespace detail

// Zeros of T inside {Re z >= 0} ∩ {|z| <= R} by the argument principle:
// the winding number of T along the region boundary. When the constant
// term vanishes numerically the origin is excluded by a small indent into
// the right half-plane.
inline int count_zeros_right_half(const TruncatedEntireFunction& t, double R,
                                  double* err_out = nullptr) {
   if (!(R > 0.0))
      throw DomainError("contour radius must be positive");
   const double tail = t.tail_bound(R);
   double cscale = 0.0;
   for (int k = 0; k <= std::min(5, t.order()); ++k)
      cscale = std::max(cscale, std::abs(t.coeff(k)));
   const bool indent = std::abs(t.coeff(0)) <= 1e-12 * cscale;
   const double rho = indent ? 1e-3 : 0.0;

   // min |T|/budget over every point the quadrature touches: adaptive
   // refinement clusters nodes near any boundary-hugging root, so the ratio
   // exposes roots far below the coarse sampling scale
   double min_ratio = kInf;
   auto f = [&](Complex z) -> Complex {
      const double rs = std::max(1.0, std::abs(z));
      const std::vector<double> d = t.scaled_coeffs(rs);
      const Complex w = z / rs;
      const double aw = std::abs(w);
      Complex p{0.0, 0.0}, dp{0.0, 0.0};
      double mag = 0.0;
      for (int k = t.order(); k >= 0; --k) {
         dp = dp * w + p;
         p = p * w + d[k];
         mag = mag * aw + std::abs(d[k]);
      }
      const double budget =
         std::max(tail + 8e-16 * mag * t.coeffs.size(), 1e-300);
      min_ratio = std::min(min_ratio, std::abs(p) / budget);
      return dp / (rs * p);
   };
   auto probe = [&](Complex z) {
      auto [p, dp] = detail::series_value_derivative(t, z);
      (void)dp;
      const double budget = t.eval(z).second; // tail + rounding allowance
      if (std::abs(p) < std::max(10.0 * budget, 2.0 * tail))
         throw ContourTooClose("|T| too small on the contour near z = (" +
                               std::to_string(z.real()) + ", " +
                               std::to_string(z.imag()) + ")");
   };

   // sample each piece for the closeness precondition
   for (int i = 0; i <= 200; ++i) {
      const double y = rho + (R - rho) * i / 200.0;
      probe({0.0, y});
      probe({0.0, -y});
      const double th = -M_PI_2 + M_PI * i / 200.0;
      probe(R * Complex{std::cos(th), std::sin(th)});
      if (indent && i <= 100) {
         const double a = -M_PI_2 + M_PI * i / 100.0;
         probe(rho * Complex{std::cos(a), std::sin(a)});
      }
   }

   Complex total{0.0, 0.0};
   double err = 0.0;
   const double tol = 5e-4;
   try {
      double e = 0.0;
      // upper axis, from +iR down to +i·rho: z = iy
      total -= quad::integrate(
         [&](double y) { return f({0.0, y}) * Complex{0.0, 1.0}; }, rho, R, tol,
         &e);
      err += e;
      // lower axis, from -i·rho down to -iR
      total -= quad::integrate(
         [&](double y) { return f({0.0, y}) * Complex{0.0, 1.0}; }, -R, -rho,
         tol, &e);
      err += e;
      if (indent) {
         // clockwise half-circle around the origin through +rho
         total -= quad::integrate(
            [&](double a) {
               const Complex z = rho * Complex{std::cos(a), std::sin(a)};
               return f(z) * Complex{0.0, 1.0} * z;
            },
            -M_PI_2, M_PI_2, tol, &e);
         err += e;
      }
      // outer arc from -iR through +R to +iR
      total += quad::integrate(
         [&](double a) {
            const Complex z = R * Complex{std::cos(a), std::sin(a)};
            return f(z) * Complex{0.0, 1.0} * z;
         },
         -M_PI_2, M_PI_2, tol, &e);
      err += e;
   } catch (const QuadratureFailure&) {
      if (min_ratio < 1e3)
         throw ContourTooClose("winding quadrature stalled near a root on "
                               "the contour");
      throw;
   }
   if (min_ratio < 10.0)
      throw ContourTooClose("|T| within the error budget on the contour");

   const double winding = (total / (2.0 * M_PI * Complex{0.0, 1.0})).real();
   const int count = static_cast<int>(std::lround(winding));
   const double estimate =
      std::abs(winding - count) + err / (2.0 * M_PI) +
      std::abs(total.real() / (2.0 * M_PI)); // real residue of i·winding
   if (err_out)
      *err_out = estimate;
   if (estimate >= 0.25)
      throw QuadratureFailure("winding number error estimate too large");
   if (count < 0)
      throw QuadratureFailure("negative winding number");
   return count;
}

struct IndicatorEstimate {
   double value = 0.0;
   double spread = 0.0;
};

// Slope fit of the windowed-max of ln|f(r e^{iθ})| against r. The window
// max over a short radial bracket approximates the limsup and dodges dips
// caused by near-ray roots.
inline IndicatorEstimate
indicator_estimate(const std::function<Complex(Complex)>& f, double theta,
                   const std::vector<double>& radii) {
   if (radii.size() < 4)
      throw DomainError("indicator estimate needs at least 4 radii");
   for (std::size_t i = 1; i < radii.size(); ++i)
      if (!(radii[i] > radii[i - 1]))
         throw DomainError("radii must be strictly increasing");
   const Complex dir{std::cos(theta), std::sin(theta)};
   std::vector<double> xs, ys;
   for (double r : radii) {
      // windowed max of ln|f| over a short radial bracket, fitted at the
      // radius where the max is attained: rides over dips caused by
      // near-ray roots without biasing the slope
      double m = -kInf, mx = r;
      bool any = false;
      for (double w : {1.0, 1.005, 1.01, 1.015, 1.02}) {
         const double a = std::abs(f(r * w * dir));
         if (a < 1e-280)
            continue;
         any = true;
         if (std::log(a) > m) {
            m = std::log(a);
            mx = r * w;
         }
      }
      if (!any)
         throw EvaluationUnderflow("|f| below 1e-280 along the ray");
      xs.push_back(mx);
      ys.push_back(m);
   }
   const std::size_t n = xs.size();
   double sx = 0, sy = 0, sxx = 0, sxy = 0;
   for (std::size_t i = 0; i < n; ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
   }
   const double denom = n * sxx - sx * sx;
   IndicatorEstimate est;
   est.value = (n * sxy - sx * sy) / denom;
   const double icept = (sy - est.value * sx) / n;
   double worst = 0.0;
   for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(ys[i] - icept - est.value * xs[i]));
   est.spread = worst / (xs.back() - xs.front());
   return est;
}

// Certified roots of T inside |z| <= R: the series is rescaled to the unit
// disk, negligible trailing coefficients are trimmed, and only unit-disk
// roots are kept and judged for convergence.
struct DiskRoots {
   std::vector<std::pair<Complex, double>> roots; // root, residual
   bool certified = false;
};

inline DiskRoots disk_roots(const TruncatedEntireFunction& t, double R) {
   std::vector<double> d = t.scaled_coeffs(R);
   double dmax = 0.0;
   for (double v : d)
      dmax = std::max(dmax, std::abs(v));
   std::size_t keep = d.size();
   while (keep > 2 && std::abs(d[keep - 1]) < 1e-40 * dmax)
      --keep;
   d.resize(keep);
   const RootResult rr = poly_roots(d, 1.05);
   DiskRoots out;
   out.certified = rr.converged;
   for (std::size_t i = 0; i < rr.roots.size(); ++i)
      if (std::abs(rr.roots[i]) <= 1.0 + 1e-9)
         out.roots.push_back({R * rr.roots[i], R * rr.residuals[i]});
   return out;
}

// Count of roots in {0 <= |z| < r, alpha < arg z <= beta} divided by r;
// boundary roots go to the lower-angle sector (half-open convention).
inline double root_density(const std::vector<Complex>& roots, double r,
                           double alpha_angle, double beta_angle) {
   if (!(r > 0.0))
      throw DomainError("density radius must be positive");
   int count = 0;
   for (Complex z : roots) {
      if (!(std::abs(z) < r))
         continue;
      const double a = std::arg(z);
      if (a > alpha_angle && a <= beta_angle)
         ++count;
   }
   return count / r;
}

enum class Verdict { stable, boundary, unstable, inconclusive };

inline const char* to_string(Verdict v) {
   switch (v) {
   case Verdict::stable: return "stable";
   case Verdict::boundary: return "boundary";
   case Verdict::unstable: return "unstable";
   case Verdict::inconclusive: return "inconclusive";
   }
   return "inconclusive";
}

struct StabilityReport {
   int zero_count_rhp = -1; // -1: not determined
   double winding_err = 0.0;
   std::vector<std::pair<Complex, double>> roots; // root, residual
   std::vector<std::pair<double, double>> indicator_samples; // theta, h
   struct DensityRow {
      double r, alpha, beta, value;
   };
   std::vector<DensityRow> density_table;
   Verdict verdict = Verdict::inconclusive;
   std::vector<std::string> notes;
};

struct VerdictParams {
   double contour_radius = 10.0;
   double axis_tol = 1e-9;
   double indicator_tol = 0.05;
   // radii for the slope fit; the shorter list is used when only the
   // truncated series is available (Taylor cancellation limits the reach
   // on rays with Re z < 0)
   std::vector<double> radii = {20.0, 30.0, 40.0, 50.0, 60.0};
   std::vector<double> taylor_radii = {8.0, 12.0, 16.0, 20.0, 24.0, 28.0};
   std::function<Complex(Complex)> evaluator; // optional exact evaluation
   std::vector<double> density_radii;         // optional density rows
   double density_eps = 0.3;
};

inline StabilityReport hurwitz_verdict(const TruncatedEntireFunction& t,
                                       const VerdictParams& p = {}) {
   StabilityReport rep;
   bool contour_boundary = false;
   bool inconclusive = false;
   try {
      rep.zero_count_rhp =
         count_zeros_right_half(t, p.contour_radius, &rep.winding_err);
   } catch (const ContourTooClose& e) {
      contour_boundary = true;
      rep.notes.push_back(std::string("contour: ") + e.what());
   } catch (const QuadratureFailure& e) {
      inconclusive = true;
      rep.notes.push_back(std::string("winding: ") + e.what());
   }

   // roots inside the certified disk, via the rescaled polynomial
   const DiskRoots dr = disk_roots(t, p.contour_radius);
   if (!dr.certified) {
      inconclusive = true;
      rep.notes.push_back("root iteration did not fully converge");
   }
   rep.roots = dr.roots;

   // indicator at 0, π/2, π
   std::function<Complex(Complex)> f = p.evaluator;
   std::vector<double> radii = p.radii;
   if (!f) {
      f = [&t](Complex z) { return t.eval(z).first; };
      radii = p.taylor_radii;
   }
   double h0 = 0.0, hpi = 0.0;
   try {
      for (double th : {0.0, M_PI_2, M_PI}) {
         const IndicatorEstimate est = indicator_estimate(f, th, radii);
         rep.indicator_samples.push_back({th, est.value});
         if (th == 0.0)
            h0 = est.value;
         if (th == M_PI)
            hpi = est.value;
      }
   } catch (const EvaluationUnderflow& e) {
      inconclusive = true;
      rep.notes.push_back(std::string("indicator: ") + e.what());
   }

   if (!p.density_radii.empty()) {
      std::vector<Complex> rts;
      for (const auto& [z, res] : rep.roots)
         rts.push_back(z);
      for (double r : p.density_radii) {
         const double eps = p.density_eps;
         rep.density_table.push_back(
            {r, M_PI_2 - eps, M_PI_2 + eps,
             root_density(rts, r, M_PI_2 - eps, M_PI_2 + eps)});
         rep.density_table.push_back(
            {r, -M_PI_2 - eps, -M_PI_2 + eps,
             root_density(rts, r, -M_PI_2 - eps, -M_PI_2 + eps)});
         rep.density_table.push_back(
            {r, -M_PI_2 + eps, M_PI_2 - eps,
             root_density(rts, r, -M_PI_2 + eps, M_PI_2 - eps)});
      }
   }

   bool on_axis = false, right = false;
   for (const auto& [z, res] : rep.roots) {
      if (z.real() > p.axis_tol)
         right = true;
      else if (z.real() >= -p.axis_tol)
         on_axis = true;
   }
   if (rep.zero_count_rhp > 0 || right)
      rep.verdict = Verdict::unstable;
   else if (contour_boundary || on_axis)
      rep.verdict = Verdict::boundary;
   else if (inconclusive)
      rep.verdict = Verdict::inconclusive;
   else if (rep.zero_count_rhp == 0 && !rep.indicator_samples.empty() &&
            h0 >= hpi - p.indicator_tol)
      rep.verdict = Verdict::stable;
   else
      rep.verdict = Verdict::inconclusive;
   return rep;
}

inline void write_roots_csv(const std::string& path,
                            const std::vector<std::pair<Complex, double>>& roots) {
   std::ofstream out(path);
   out.precision(17);
   out << "re,im,residual\n";
   for (const auto& [z, r] : roots)
      out << z.real() << "," << z.imag() << "," << r << "\n";
}

inline void
write_indicator_csv(const std::string& path,
                    const std::vector<std::pair<double, double>>& samples) {
   std::ofstream out(path);
   out.precision(17);
   out << "theta,h\n";
   for (const auto& [th, h] : samples)
      out << th << "," << h << "\n";
}

inline void
write_density_csv(const std::string& path,
                  const std::vector<StabilityReport::DensityRow>& rows) {
   std::ofstream out(path);
   out.precision(17);
   out << "r,alpha,beta,value\n";
   for (const auto& row : rows)
      out << row.r << "," << row.alpha << "," << row.beta << "," << row.value
          << "\n";
}

} // namespace hurwitz

#endif
