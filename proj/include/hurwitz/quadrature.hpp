#ifndef HURWITZ_QUADRATURE_HPP
#define HURWITZ_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {

using Complex = std::complex<double>;

namespace quad {

// Gauss-Kronrod 15-7 pair on [-1, 1]. Nodes are interior, so integrands
// with integrable endpoint singularities are never evaluated at the ends.
inline constexpr std::array<double, 8> kNodes = {
   0.991455371120812639206854697526329,
   0.949107912342758524526189684047851,
   0.864864423359769072789712788640926,
   0.741531185599394439863864773280788,
   0.586087235467691130294144838258730,
   0.405845151377397166906606412076961,
   0.207784955007898467600689403773245,
   0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWeightsK = {
   0.022935322010529224963732008058970,
   0.063092092629978553290700663189204,
   0.104790010322250183839876322541518,
   0.140653259715525918745189590510238,
   0.169004726639267902826583426598550,
   0.190350578064785409913256402421014,
   0.204432940075298892414161999234649,
   0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWeightsG = {
   0.129484966168869693270611432679082,
   0.279705391489276667901467771423780,
   0.381830050505118944950369775488975,
   0.417959183673469387755102040816327};

struct PanelResult {
   Complex value{0.0, 0.0};
   double error = 0.0;
};

template <typename F>
PanelResult gk15(F&& f, double a, double b) {
   const double c = 0.5 * (a + b);
   const double h = 0.5 * (b - a);
   Complex fc = f(c);
   Complex resk = kWeightsK[7] * fc;
   Complex resg = kWeightsG[3] * fc;
   for (int i = 0; i < 7; ++i) {
      const double dx = h * kNodes[i];
      Complex v = f(c - dx) + f(c + dx);
      resk += kWeightsK[i] * v;
      if (i % 2 == 1)
         resg += kWeightsG[i / 2] * v;
   }
   PanelResult r;
   r.value = resk * h;
   // QUADPACK-style sharpened estimate.
   const double diff = std::abs(resk - resg) * std::abs(h);
   const double scale = std::abs(resk) * std::abs(h);
   r.error = diff;
   if (scale > 0.0 && diff > 0.0)
      r.error = scale * std::min(1.0, std::pow(200.0 * diff / scale, 1.5));
   return r;
}

struct Panel {
   double a, b;
   Complex value;
   double error;
   bool operator<(const Panel& o) const { return error < o.error; }
};

// Adaptive bisection to absolute tolerance; error estimate returned through
// err_out. Throws QuadratureFailure only when refinement stalls far above
// the requested tolerance.
template <typename F>
Complex integrate(F&& f, double a, double b, double abs_tol,
                  double* err_out = nullptr, int max_panels = 20000) {
   if (a == b) {
      if (err_out)
         *err_out = 0.0;
      return Complex{0.0, 0.0};
   }
   const double width = std::abs(b - a);
   std::priority_queue<Panel> heap;
   PanelResult first = gk15(f, a, b);
   heap.push({a, b, first.value, first.error});
   Complex total = first.value;
   double total_err = first.error;
   int n = 1;
   while (total_err > abs_tol && n < max_panels) {
      Panel worst = heap.top();
      heap.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b) ||
          std::abs(worst.b - worst.a) < width * 0x1p-52) {
         // Panel is at floating-point resolution; its error cannot shrink.
         heap.push({worst.a, worst.b, worst.value, 0.0});
         total_err -= worst.error;
         continue;
      }
      PanelResult left = gk15(f, worst.a, mid);
      PanelResult right = gk15(f, mid, worst.b);
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
      heap.push({worst.a, mid, left.value, left.error});
      heap.push({mid, worst.b, right.value, right.error});
      ++n;
   }
   if (err_out)
      *err_out = total_err;
   if (total_err > std::max(abs_tol * 1e4, std::abs(total) * 1e-7) && n >= max_panels)
      throw QuadratureFailure("adaptive quadrature stalled above tolerance");
   return total;
}

// Real-valued convenience wrapper.
template <typename F>
double integrate_real(F&& f, double a, double b, double abs_tol,
                      double* err_out = nullptr, int max_panels = 20000) {
   auto g = [&f](double x) { return Complex{f(x), 0.0}; };
   return integrate(g, a, b, abs_tol, err_out, max_panels).real();
}

} // namespace quad
} // namespace hurwitz

#endif
