#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hurwitz/construct.hpp"

using namespace hurwitz;

namespace {

StieltjesRepr recip_psi() { // ψ = 1/z
   StieltjesRepr r;
   r.tag = ClassTag::S;
   r.b = 1.0;
   return r;
}

StieltjesRepr atom_psi() { // ψ(z) = 1/(1+z)
   StieltjesRepr r;
   r.tag = ClassTag::S;
   r.sigma.atoms.push_back({1.0, 1.0});
   return r;
}

StieltjesRepr half_power_psi() { // ψ(z) = z^{-1/2}
   StieltjesRepr r;
   r.tag = ClassTag::S;
   r.sigma.pieces.push_back({0.0, kInf, 1.0 / M_PI, -0.5, 0.0});
   return r;
}

StieltjesRepr sinv_atom_psi() { // ψ(z) = z/(1+z), tag S⁻¹, ψ(0) = 0
   StieltjesRepr r;
   r.tag = ClassTag::SInv;
   r.sigma.atoms.push_back({1.0, 1.0});
   return r;
}

const LP1Function expz{1.0, 0, 1.0, {}};

} // namespace

TEST_CASE("multiplier_sequence shift1 for psi = 1/z") {
   auto m = multiplier_sequence(recip_psi(), MultKind::shift1, 5);
   for (int k = 0; k <= 5; ++k)
      CHECK(m[k] == Catch::Approx(1.0 / (k + 1.0)).epsilon(1e-14));
}

TEST_CASE("multiplier_sequence shift0 for psi = 1 + 2z") {
   StieltjesRepr r;
   r.tag = ClassTag::SInv;
   r.a = 1.0;
   r.b = 2.0;
   auto m = multiplier_sequence(r, MultKind::shift0, 4);
   for (int k = 0; k <= 4; ++k)
      CHECK(m[k] == Catch::Approx(2.0 * k + 1.0).epsilon(1e-14));
}

TEST_CASE("multiplier_sequence from the closed-form power") {
   ClosedFormPsi p;
   p.kind = ClosedFormPsi::Kind::power;
   p.delta = -0.5;
   auto m = multiplier_sequence(p, MultKind::shift1, 4);
   for (int k = 0; k <= 4; ++k)
      CHECK(m[k] == Catch::Approx(1.0 / std::sqrt(k + 1.0)).epsilon(1e-13));
}

TEST_CASE("shift0 rejected when psi(0) diverges") {
   CHECK_THROWS_AS(multiplier_sequence(recip_psi(), MultKind::shift0, 3),
                   InfiniteValue);
}

TEST_CASE("build for psi = 1/z over e^z is the series of (e^z-1)/z") {
   auto t = build_series(recip_psi(), MultKind::shift1, expz, 5.0);
   REQUIRE(t.order() >= 10);
   double fact = 1.0; // (k+1)!
   for (int k = 0; k <= 10; ++k) {
      fact *= k + 1.0;
      CHECK(t.coeff(k) == Catch::Approx(1.0 / fact).epsilon(1e-13));
   }
   for (double x : {0.5, 2.0, 4.0}) {
      const double expect = (std::exp(x) - 1.0) / x;
      auto [v, err] = t.eval({x, 0.0});
      CHECK(std::abs(v - Complex{expect, 0.0}) <= err + 1e-13 * expect);
      CHECK(err < 1e-10);
   }
}

TEST_CASE("build for psi = 1 + z shift0 over e^z is (1+z)e^z") {
   StieltjesRepr r;
   r.tag = ClassTag::SInv;
   r.a = 1.0;
   r.b = 1.0;
   auto t = build_series(r, MultKind::shift0, expz, 4.0);
   double fact = 1.0;
   for (int k = 0; k <= 8; ++k) {
      CHECK(t.coeff(k) == Catch::Approx((k + 1.0) / fact).epsilon(1e-13));
      fact *= k + 1.0;
   }
   auto [v, err] = t.eval({2.0, 0.0});
   CHECK(std::abs(v - Complex{3.0 * std::exp(2.0), 0.0}) <= err + 1e-11);
}

TEST_CASE("build for psi = 1/z over (1+z)^3") {
   LP1Function cube{1.0, 0, 0.0, {1.0, 1.0, 1.0}};
   auto t = build_series(recip_psi(), MultKind::shift1, cube, 10.0);
   REQUIRE(t.order() == 3);
   CHECK(t.coeff(0) == Catch::Approx(1.0));
   CHECK(t.coeff(1) == Catch::Approx(1.5));
   CHECK(t.coeff(2) == Catch::Approx(1.0));
   CHECK(t.coeff(3) == Catch::Approx(0.25));
   CHECK(t.tail_bound(10.0) == 0.0); // polynomial: exact
}

TEST_CASE("positive coefficients throughout") {
   for (const auto& psi : {recip_psi(), atom_psi(), half_power_psi()}) {
      auto t = build_series(psi, MultKind::shift1, expz, 10.0);
      for (int k = 0; k <= t.order(); ++k)
         CHECK(t.coeff(k) > 0.0);
   }
}

TEST_CASE("eval_taylor certified error at z = 1 for e^z") {
   std::vector<double> mult(31, 1.0); // ψ ≡ 1 stand-in to exercise the type
   auto t = build_entire(mult, lp1_log_taylor(expz, 30), 1.0, 1.0, 0);
   auto [v, err] = t.eval({1.0, 0.0});
   CHECK(std::abs(v - Complex{std::exp(1.0), 0.0}) < 1e-14);
   CHECK(err < 1e-13);
   auto [v0, err0] = t.eval({0.0, 0.0});
   CHECK(v0 == Complex{1.0, 0.0});
}

TEST_CASE("tail bound is finite, monotone in R, and a true majorant") {
   auto t = build_series(half_power_psi(), MultKind::shift1, expz, 10.0);
   double prev = 0.0;
   for (double rr : {1.0, 5.0, 10.0, 20.0}) {
      const double b = t.tail_bound(rr);
      CHECK(std::isfinite(b));
      CHECK(b >= prev);
      prev = b;
   }
   // direct majorant check: Σ_{k>N} 10^k/k! bounds the dropped terms (c2 = 1)
   double tail = 0.0;
   double term = 1.0;
   for (int k = 1; k <= t.order() + 400; ++k) {
      term *= 10.0 / k;
      if (k > t.order())
         tail += term;
   }
   CHECK(t.tail_bound(10.0) >= tail * 0.999);
   CHECK(t.tail_bound(10.0) < 1e-10);
}

TEST_CASE("choose_truncation_order shrinks with tolerance and grows with R") {
   const int n1 = choose_truncation_order(1.0, 1.0, 0, 10.0, 1e-12);
   const int n2 = choose_truncation_order(1.0, 1.0, 0, 10.0, 1e-6);
   const int n3 = choose_truncation_order(1.0, 1.0, 0, 30.0, 1e-12);
   CHECK(n2 < n1);
   CHECK(n1 < n3);
   CHECK(choose_truncation_order(0.0, 1.0, 0, 10.0, 1e-12, 7) == 7);
   // returned order really meets the target
   double tail = 0.0, term = 1.0;
   for (int k = 1; k <= n1 + 400; ++k) {
      term *= 10.0 / k;
      if (k > n1)
         tail += term;
   }
   CHECK(tail <= 1e-12);
}

TEST_CASE("length mismatch rejected") {
   CHECK_THROWS_AS(build_entire(std::vector<double>(5, 1.0),
                                lp1_log_taylor(expz, 10), 1.0, 1.0, 0),
                   LengthMismatch);
}

TEST_CASE("m > 0 rejected by construction entry points") {
   LP1Function zf{1.0, 1, 1.0, {}};
   CHECK_THROWS_AS(lp1_tail_majorant(zf), DomainError);
   CHECK_THROWS_AS(eval_integral_rep(recip_psi(), zf, {1.0, 0.0}), DomainError);
}

TEST_CASE("integral representation: special psi = 1/z over e^z") {
   // a=0, b=1: ∫₀¹ e^{tz} dt = (e^z − 1)/z
   const Complex v = eval_integral_rep(recip_psi(), expz, {1.0, 0.0});
   CHECK(std::abs(v - Complex{std::exp(1.0) - 1.0, 0.0}) < 1e-11);
}

TEST_CASE("integral representation: half-power psi at z = 0 gives psi(1) = 1") {
   const Complex v = eval_integral_rep(half_power_psi(), expz, {0.0, 0.0});
   CHECK(std::abs(v - Complex{1.0, 0.0}) < 1e-9);
}

TEST_CASE("integral representation: special S-inverse psi = z") {
   StieltjesRepr r;
   r.tag = ClassTag::SInv;
   r.b = 1.0;
   const Complex v = eval_integral_rep(r, expz, {2.0, 0.0});
   CHECK(std::abs(v - Complex{2.0 * std::exp(2.0), 0.0}) < 1e-12);
}

TEST_CASE("representation consistency: 1/z over e^z") {
   std::vector<Complex> pts;
   for (int k = 0; k < 10; ++k) {
      const double th = 0.63 * k;
      pts.push_back(5.0 * Complex{std::cos(th), std::sin(th)} * (0.3 + 0.07 * k));
   }
   CHECK(representation_consistency(recip_psi(), expz, pts) < 1e-10);
}

TEST_CASE("representation consistency: atom psi on the imaginary axis") {
   std::vector<Complex> pts;
   for (int k = 1; k <= 5; ++k)
      pts.push_back({0.0, double(k)});
   CHECK(representation_consistency(atom_psi(), expz, pts) < 1e-8);
}

TEST_CASE("representation consistency: polynomial base is near-exact") {
   LP1Function cube{1.0, 0, 0.0, {1.0, 1.0, 1.0}};
   std::vector<Complex> pts{{1.0, 0.0}, {0.0, 2.0}, {-1.5, 0.5}};
   CHECK(representation_consistency(recip_psi(), cube, pts) < 1e-12);
}

TEST_CASE("representation consistency: S-inverse atom with derivative kernel") {
   std::vector<Complex> pts{{1.0, 0.0}, {0.0, 3.0}, {2.0, 2.0}, {-1.0, 1.0}};
   CHECK(representation_consistency(sinv_atom_psi(), expz, pts) < 1e-8);
}

TEST_CASE("termwise identity between the t-integral and the lambda-integral") {
   // ∫₀¹ t^k (b + φ_σ(t)) dt = b/(k+1) + ∫ dσ/(λ+k+1) = ψ(k+1) − a
   StieltjesRepr psi;
   psi.tag = ClassTag::S;
   psi.a = 0.5;
   psi.b = 0.25;
   psi.sigma.atoms.push_back({2.0, 1.0});
   psi.sigma.pieces.push_back({0.0, kInf, 0.3 / M_PI, -0.5, 0.0});
   for (int k : {0, 1, 5}) {
      auto f = [&](double s) -> Complex {
         const double w = std::exp(-s);
         const double t = -std::expm1(-s);
         return (psi.b + phi_sigma_one_minus(psi.sigma, w)) * std::pow(t, k) * w;
      };
      const double lhs = quad::integrate(f, 0.0, 80.0, 1e-12).real();
      const double rhs = eval(psi, Complex{k + 1.0, 0.0}).real() - psi.a;
      CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
   }
}

TEST_CASE("|E(-r)| < |E(r)| for positive-coefficient series") {
   auto t = build_series(atom_psi(), MultKind::shift1, expz, 12.0);
   for (double r : {0.5, 3.0, 8.0, 12.0}) {
      CHECK(std::abs(t.eval({-r, 0.0}).first) < std::abs(t.eval({r, 0.0}).first));
   }
}

TEST_CASE("exponential type recovered from the slope of ln|eval|") {
   auto t = build_series(atom_psi(), MultKind::shift1, expz, 60.0);
   const double l1 = std::log(std::abs(t.eval({20.0, 0.0}).first));
   const double l2 = std::log(std::abs(t.eval({60.0, 0.0}).first));
   CHECK(std::abs((l2 - l1) / 40.0 - 1.0) < 0.05);
}

TEST_CASE("bounded in the left half-plane by a + b + the kernel mass") {
   const StieltjesRepr psi = atom_psi();
   const double bound = psi.a + psi.b + phi_l1_norm(psi.sigma);
   auto t = build_series(psi, MultKind::shift1, expz, 30.0);
   for (Complex z : {Complex{-5.0, 3.0}, Complex{-20.0, 0.0}, Complex{0.0, 25.0},
                     Complex{-1.0, -15.0}}) {
      auto [v, err] = t.eval(z);
      CHECK(std::abs(v) <= bound + err + 1e-12);
   }
}

TEST_CASE("deflation of the psi(0)=0 S-inverse construction") {
   auto t = build_series(sinv_atom_psi(), MultKind::shift0, expz, 8.0);
   CHECK(t.coeff(0) == 0.0); // exact zero multiplier
   auto d = deflate(t);
   CHECK(d.deflated == 1);
   CHECK(d.order() == t.order() - 1);
   for (Complex z : {Complex{2.0, 0.0}, Complex{0.0, 3.0}, Complex{-1.0, 1.0}}) {
      const Complex lhs = d.eval(z).first * z;
      const Complex rhs = t.eval(z).first;
      CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(rhs)));
   }
   CHECK_THROWS_AS(deflate(build_series(recip_psi(), MultKind::shift1, expz, 5.0)),
                   DomainError);
}

TEST_CASE("serialization round-trips coefficients bit for bit") {
   auto t = build_series(half_power_psi(), MultKind::shift1, expz, 60.0);
   REQUIRE(t.order() > 150); // includes sub-underflow entries
   nlohmann::json j = t;
   const std::string text = j.dump();
   auto back = nlohmann::json::parse(text).get<TruncatedEntireFunction>();
   REQUIRE(back.coeffs.size() == t.coeffs.size());
   for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
      CHECK(back.coeffs.log_abs[k] == t.coeffs.log_abs[k]);
      CHECK(back.coeffs.sign[k] == t.coeffs.sign[k]);
   }
   CHECK(back.alpha == t.alpha);
   CHECK(back.tail_c2 == t.tail_c2);
}
