#ifndef HURWITZ_STIELTJES_HPP
#define HURWITZ_STIELTJES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hurwitz/errors.hpp"
#include "hurwitz/measure.hpp"

namespace hurwitz {

enum class ClassTag { S, SInv };

inline const char* to_string(ClassTag t) { return t == ClassTag::S ? "S" : "S_inv"; }

namespace detail {

inline void check_off_cut(Complex z) {
   if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-14)
      throw DomainError("evaluation point lies on the branch cut (-inf, 0]");
}

} // namespace detail

// ψ(z) = a + b/z + ∫ dσ/(λ+z)          (tag S)
// ψ(z) = a + bz + ∫ z dσ/(λ+z)         (tag S⁻¹)
struct StieltjesRepr {
   ClassTag tag = ClassTag::S;
   double a = 0.0;
   double b = 0.0;
   Measure sigma;
};

inline void validate(const StieltjesRepr& r) {
   if (r.a < 0.0 || r.b < 0.0)
      throw DomainError("Stieltjes representation needs a, b >= 0");
   const double mass = validate_measure(r.sigma);
   if (!(r.a + r.b + mass > 0.0))
      throw DegenerateError("degenerate representation: a + b + mass = 0");
   if (r.sigma.is_zero() && r.b == 0.0)
      throw DegenerateError("constant function: not admitted in either class");
}

inline Complex eval(const StieltjesRepr& psi, Complex z) {
   detail::check_off_cut(z);
   Complex ct = psi.sigma.is_zero() ? Complex{0.0, 0.0}
                                    : cauchy_transform(psi.sigma, z);
   if (psi.tag == ClassTag::S)
      return psi.a + psi.b / z + ct;
   return psi.a + psi.b * z + z * ct;
}

enum class Speciality { special, generic };

// Special iff the representing measure vanishes identically.
inline Speciality classify(const StieltjesRepr& psi) {
   return psi.sigma.is_zero() ? Speciality::special : Speciality::generic;
}

// ψ(0) as the limit along the positive axis; +inf is a legitimate value for
// the S class.
inline double value_at_zero(const StieltjesRepr& psi) {
   if (psi.tag == ClassTag::SInv)
      return psi.a;
   if (psi.b > 0.0)
      return kInf;
   return psi.a + integral_over_lambda(psi.sigma);
}

// Closed-form members of the Stieltjes classes.
struct ClosedFormPsi {
   enum class Kind { power, rational, special_s, special_s_inv };
   Kind kind = Kind::power;

   // power: (z + shift)^delta; shift = 0 is the plain power function.
   double delta = 0.0;
   double shift = 0.0;

   // rational: c · ∏ (z + zeros[k]) / ∏ (z + poles[k]); interlacing
   // 0 <= poles[0] < zeros[0] < poles[1] < ...
   double c = 1.0;
   std::vector<double> poles;
   std::vector<double> zeros;

   // special forms a + b/z (S) and a + bz (S⁻¹).
   double a = 0.0;
   double b = 0.0;
};

inline void check_interlacing(const ClosedFormPsi& psi) {
   if (psi.poles.size() != psi.zeros.size() || psi.poles.empty())
      throw InterlacingViolation("rational form needs equal, non-empty pole/zero lists");
   if (!(psi.c > 0.0))
      throw InterlacingViolation("rational form needs c > 0");
   double prev = -1.0;
   for (std::size_t k = 0; k < psi.poles.size(); ++k) {
      if (!(psi.poles[k] > prev) || !(psi.zeros[k] > psi.poles[k]))
         throw InterlacingViolation("pole/zero lists must interlace");
      if (k == 0 && psi.poles[0] < 0.0)
         throw InterlacingViolation("poles must be >= 0");
      prev = psi.zeros[k];
   }
}

inline ClassTag class_tag_of(const ClosedFormPsi& psi) {
   switch (psi.kind) {
   case ClosedFormPsi::Kind::power:
      return psi.delta < 0.0 ? ClassTag::S : ClassTag::SInv;
   case ClosedFormPsi::Kind::rational:
   case ClosedFormPsi::Kind::special_s:
      return ClassTag::S;
   case ClosedFormPsi::Kind::special_s_inv:
      return ClassTag::SInv;
   }
   return ClassTag::S;
}

inline Complex closed_form_eval(const ClosedFormPsi& psi, Complex z) {
   switch (psi.kind) {
   case ClosedFormPsi::Kind::power: {
      const Complex w = z + psi.shift;
      detail::check_off_cut(w);
      return std::pow(w, psi.delta);
   }
   case ClosedFormPsi::Kind::rational: {
      // Meromorphic: no cut, only poles at z = -a_k.
      Complex v{psi.c, 0.0};
      for (std::size_t k = 0; k < psi.poles.size(); ++k) {
         const Complex den = z + psi.poles[k];
         if (std::abs(den) < 1e-14)
            throw PoleError("evaluation at a pole of the rational form");
         v *= (z + psi.zeros[k]) / den;
      }
      return v;
   }
   case ClosedFormPsi::Kind::special_s:
      if (std::abs(z) < 1e-14)
         throw PoleError("evaluation at the pole z = 0");
      return psi.a + psi.b / z;
   case ClosedFormPsi::Kind::special_s_inv:
      return psi.a + psi.b * z;
   }
   throw DomainError("unreachable");
}

// ψ(0) for closed forms; +inf when the limit diverges.
inline double closed_form_value_at_zero(const ClosedFormPsi& psi) {
   switch (psi.kind) {
   case ClosedFormPsi::Kind::power:
      if (psi.shift > 0.0)
         return std::pow(psi.shift, psi.delta);
      return psi.delta < 0.0 ? kInf : 0.0;
   case ClosedFormPsi::Kind::rational:
      if (psi.poles[0] == 0.0)
         return kInf;
      return closed_form_eval(psi, Complex{1e-300, 0.0}).real();
   case ClosedFormPsi::Kind::special_s:
      return psi.b > 0.0 ? kInf : psi.a;
   case ClosedFormPsi::Kind::special_s_inv:
      return psi.a;
   }
   throw DomainError("unreachable");
}

// Partial-fraction conversion of the finite interlacing product into the
// (a, b, σ) representation: a is the value at infinity, b the residue of the
// pole at 0 (if any), and each positive pole contributes an atom whose
// weight is the residue there.
inline StieltjesRepr rational_to_repr(const ClosedFormPsi& psi) {
   if (psi.kind != ClosedFormPsi::Kind::rational)
      throw DomainError("rational_to_repr needs a rational closed form");
   check_interlacing(psi);
   StieltjesRepr out;
   out.tag = ClassTag::S;
   out.a = psi.c; // equal-length lists: psi -> c at infinity
   auto residue = [&](double pole) {
      double r = psi.c;
      for (std::size_t j = 0; j < psi.poles.size(); ++j) {
         r *= psi.zeros[j] - pole;
         if (psi.poles[j] != pole)
            r /= psi.poles[j] - pole;
      }
      return r;
   };
   for (double p : psi.poles) {
      const double w = residue(p);
      if (p == 0.0) {
         out.b = w;
      } else {
         if (!(w > 0.0))
            throw InterlacingViolation("non-positive residue; interlacing broken");
         out.sigma.atoms.push_back({p, w});
      }
   }
   return out;
}

// Pointwise evaluator carrying its class tag; closure operations below
// derive new evaluators without recovering a measure.
struct PsiEvaluator {
   ClassTag tag = ClassTag::S;
   std::function<Complex(Complex)> f;

   Complex operator()(Complex z) const { return f(z); }
};

inline PsiEvaluator make_evaluator(const StieltjesRepr& psi) {
   return {psi.tag, [psi](Complex z) { return eval(psi, z); }};
}

inline PsiEvaluator make_evaluator(const ClosedFormPsi& psi) {
   return {class_tag_of(psi), [psi](Complex z) { return closed_form_eval(psi, z); }};
}

enum class CombineOp { sum, parallel, reciprocal, compose };

inline ClassTag combined_tag(CombineOp op, const std::vector<ClassTag>& tags) {
   switch (op) {
   case CombineOp::sum:
   case CombineOp::parallel:
      for (ClassTag t : tags)
         if (t != tags.front())
            throw MixedTagError("sum/parallel operands must share a class");
      return tags.front();
   case CombineOp::reciprocal:
      return tags.front() == ClassTag::S ? ClassTag::SInv : ClassTag::S;
   case CombineOp::compose:
      return tags[0] == tags[1] ? ClassTag::SInv : ClassTag::S;
   }
   throw DomainError("unreachable");
}

inline PsiEvaluator combine(CombineOp op, std::vector<PsiEvaluator> ops) {
   const std::size_t need = (op == CombineOp::reciprocal) ? 1 : 2;
   if (ops.size() != need)
      throw DomainError("wrong operand count for combination");
   std::vector<ClassTag> tags;
   for (const auto& e : ops)
      tags.push_back(e.tag);
   const ClassTag tag = combined_tag(op, tags);
   switch (op) {
   case CombineOp::sum:
      return {tag, [a = ops[0], b = ops[1]](Complex z) { return a(z) + b(z); }};
   case CombineOp::parallel:
      return {tag, [a = ops[0], b = ops[1]](Complex z) {
                 const Complex u = a(z), v = b(z);
                 return u * v / (u + v);
              }};
   case CombineOp::reciprocal:
      return {tag, [a = ops[0]](Complex z) { return 1.0 / a(z); }};
   case CombineOp::compose:
      return {tag, [a = ops[0], b = ops[1]](Complex z) { return a(b(z)); }};
   }
   throw DomainError("unreachable");
}

struct MembershipReport {
   bool pass = true;
   double worst_positivity = kInf;  // min ψ(x) over the positive-axis grid
   double worst_im = 0.0;           // extreme signed Im over the half-plane grid
   Complex offender{0.0, 0.0};
};

// Samples ψ(x) > 0 on (0,∞) and the sign of Im ψ in the closed upper
// half-plane (off the cut), with 1e-12 slack.
inline MembershipReport membership_check(const std::function<Complex(Complex)>& f,
                                         ClassTag tag,
                                         const std::vector<Complex>& grid) {
   MembershipReport rep;
   for (Complex z : grid) {
      const Complex v = f(z);
      if (std::abs(z.imag()) <= 1e-14 && z.real() > 0.0) {
         if (v.real() < rep.worst_positivity) {
            rep.worst_positivity = v.real();
            if (v.real() <= 0.0)
               rep.offender = z;
         }
         if (v.real() <= 0.0)
            rep.pass = false;
      } else if (z.imag() >= 0.0) {
         const double im = v.imag();
         const double signed_im = (tag == ClassTag::S) ? im : -im;
         if (signed_im > rep.worst_im) {
            rep.worst_im = signed_im;
            rep.offender = z;
         }
         if (signed_im > 1e-12)
            rep.pass = false;
      }
   }
   return rep;
}

// Witness constants for the multiplier sandwich bounds:
//   S:    c1/(k+1) <= ψ(k+1) <= c2
//   S⁻¹:  c1 <= ψ(k) <= c2·k   (k >= 1)
inline std::pair<double, double> coefficient_bounds(const StieltjesRepr& psi) {
   const double mass = validate_measure(psi.sigma);
   if (psi.tag == ClassTag::S) {
      const double c = psi.a + psi.b + mass;
      if (!(c > 0.0))
         throw DegenerateError("no positive lower constant exists");
      // a >= a/(k+1), b/(k+1), and ∫dσ/(λ+k+1) >= ∫dσ/((λ+1)(k+1)).
      return {c, c};
   }
   const double c1 = eval(psi, Complex{1.0, 0.0}).real(); // ψ increasing on (0,∞)
   const double c2 = psi.a + psi.b + 2.0 * mass;          // k/(λ+k) <= 2k/(λ+1)
   if (!(c1 > 0.0))
      throw DegenerateError("no positive lower constant exists");
   return {c1, c2};
}

inline void to_json(nlohmann::json& j, const StieltjesRepr& r) {
   j = nlohmann::json{{"class", to_string(r.tag)},
                      {"a", r.a},
                      {"b", r.b},
                      {"sigma", r.sigma}};
}

inline void from_json(const nlohmann::json& j, StieltjesRepr& r) {
   const std::string tag = j.at("class").get<std::string>();
   if (tag == "S")
      r.tag = ClassTag::S;
   else if (tag == "S_inv")
      r.tag = ClassTag::SInv;
   else
      throw DomainError("unknown class tag: " + tag);
   r.a = j.value("a", 0.0);
   r.b = j.value("b", 0.0);
   r.sigma = j.value("sigma", Measure{});
}

inline void to_json(nlohmann::json& j, const ClosedFormPsi& p) {
   switch (p.kind) {
   case ClosedFormPsi::Kind::power:
      j = nlohmann::json{{"kind", "power"}, {"delta", p.delta}, {"shift", p.shift}};
      break;
   case ClosedFormPsi::Kind::rational:
      j = nlohmann::json{{"kind", "rational"},
                         {"c", p.c},
                         {"poles", p.poles},
                         {"zeros", p.zeros}};
      break;
   case ClosedFormPsi::Kind::special_s:
      j = nlohmann::json{{"kind", "special_S"}, {"a", p.a}, {"b", p.b}};
      break;
   case ClosedFormPsi::Kind::special_s_inv:
      j = nlohmann::json{{"kind", "special_S_inv"}, {"a", p.a}, {"b", p.b}};
      break;
   }
}

inline void from_json(const nlohmann::json& j, ClosedFormPsi& p) {
   const std::string kind = j.at("kind").get<std::string>();
   if (kind == "power") {
      p.kind = ClosedFormPsi::Kind::power;
      p.delta = j.at("delta").get<double>();
      p.shift = j.value("shift", 0.0);
   } else if (kind == "rational") {
      p.kind = ClosedFormPsi::Kind::rational;
      p.c = j.value("c", 1.0);
      j.at("poles").get_to(p.poles);
      j.at("zeros").get_to(p.zeros);
   } else if (kind == "special_S" || kind == "special_S_inv") {
      p.kind = kind == "special_S" ? ClosedFormPsi::Kind::special_s
                                   : ClosedFormPsi::Kind::special_s_inv;
      p.a = j.value("a", 0.0);
      p.b = j.value("b", 1.0);
   } else {
      throw DomainError("unknown closed form kind: " + kind);
   }
}

} // namespace hurwitz

#endif
