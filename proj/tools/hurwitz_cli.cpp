// Command-line driver: load a config, build series, run stability
// verdicts and theorem suites, emit CSV/report files.
//
// Exit codes: 0 ok, 1 property violated, 2 bad input, 3 inconclusive.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hurwitz/hurwitz.hpp"

namespace fs = std::filesystem;
using namespace hurwitz;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kBadInput = 2;
constexpr int kInconclusive = 3;

// Either representation of a multiplier function; the integral-path
// machinery needs the (a, b, σ) form, which exists for every kind
// except the plain power function.
struct PsiSpec {
   bool closed = false;
   ClosedFormPsi cf;
   StieltjesRepr repr;
   bool has_repr = false;
};

PsiSpec parse_psi(const json& j) {
   PsiSpec out;
   if (j.contains("class")) {
      out.repr = j.get<StieltjesRepr>();
      validate(out.repr);
      out.has_repr = true;
      return out;
   }
   if (!j.contains("kind"))
      throw DomainError("psi spec needs either \"class\" or \"kind\"");
   out.closed = true;
   out.cf = j.get<ClosedFormPsi>();
   switch (out.cf.kind) {
   case ClosedFormPsi::Kind::rational:
      out.repr = rational_to_repr(out.cf);
      out.has_repr = true;
      break;
   case ClosedFormPsi::Kind::special_s:
      out.repr.tag = ClassTag::S;
      out.repr.a = out.cf.a;
      out.repr.b = out.cf.b;
      out.has_repr = true;
      break;
   case ClosedFormPsi::Kind::special_s_inv:
      out.repr.tag = ClassTag::SInv;
      out.repr.a = out.cf.a;
      out.repr.b = out.cf.b;
      out.has_repr = true;
      break;
   case ClosedFormPsi::Kind::power:
      break;
   }
   return out;
}

struct RunConfig {
   PsiSpec psi;
   LP1Function lp1{1.0, 0, 1.0, {}};
   double radius = 20.0;
   double tolerance = 1e-12;
   double contour_radius = 10.0;
   std::string multipliers = "auto"; // auto | shift1 | shift0
   std::string expect;               // "" | stable | unstable | boundary
   std::vector<double> density_radii;
   std::string series_file; // reload a previously built series
};

RunConfig load_config(const std::string& path) {
   std::ifstream in(path);
   if (!in)
      throw DomainError("cannot open config " + path);
   json j;
   in >> j;
   RunConfig c;
   if (!j.contains("psi"))
      throw DomainError("config is missing \"psi\"");
   c.psi = parse_psi(j.at("psi"));
   if (j.contains("lp1")) {
      c.lp1 = j.at("lp1").get<LP1Function>();
      validate(c.lp1);
   }
   c.radius = j.value("radius", 20.0);
   c.tolerance = j.value("tolerance", 1e-12);
   c.contour_radius = j.value("contour_radius", 10.0);
   c.multipliers = j.value("multipliers", std::string("auto"));
   c.expect = j.value("expect", std::string(""));
   c.density_radii = j.value("density_radii", std::vector<double>{});
   c.series_file = j.value("series_file", std::string(""));
   if (c.multipliers != "auto" && c.multipliers != "shift1" &&
       c.multipliers != "shift0")
      throw DomainError("multipliers must be auto, shift1, or shift0");
   if (!(c.radius > 0.0) || !(c.tolerance > 0.0) || !(c.contour_radius > 0.0))
      throw DomainError("radius, tolerance, contour_radius must be positive");
   return c;
}

ClassTag tag_of(const PsiSpec& p) {
   return p.closed ? class_tag_of(p.cf) : p.repr.tag;
}

MultKind kind_of(const RunConfig& c) {
   if (c.multipliers == "shift1")
      return MultKind::shift1;
   if (c.multipliers == "shift0")
      return MultKind::shift0;
   return tag_of(c.psi) == ClassTag::S ? MultKind::shift1 : MultKind::shift0;
}

TruncatedEntireFunction build_from(const RunConfig& c, double R) {
   const MultKind k = kind_of(c);
   if (c.psi.closed)
      return build_series(c.psi.cf, k, c.lp1, R, c.tolerance);
   return build_series(c.psi.repr, k, c.lp1, R, c.tolerance);
}

json provenance(const RunConfig& c, const TruncatedEntireFunction& t) {
   json p;
   p["multipliers"] = kind_of(c) == MultKind::shift1 ? "shift1" : "shift0";
   p["order"] = t.order();
   p["radius"] = c.radius;
   p["tolerance"] = c.tolerance;
   p["tail_bound_at_radius"] = t.tail_bound(c.radius);
   p["type"] = t.alpha;
   return p;
}

int cmd_build(const RunConfig& c, const std::string& out_dir) {
   const TruncatedEntireFunction t = build_from(c, c.radius);
   fs::create_directories(out_dir);
   json doc;
   doc["series"] = t;
   doc["provenance"] = provenance(c, t);
   const fs::path path = fs::path(out_dir) / "series.json";
   std::ofstream os(path);
   os << doc.dump(2) << "\n";
   std::cout << "wrote " << path.string() << " (order " << t.order()
             << ", tail bound " << t.tail_bound(c.radius) << " at R=" << c.radius
             << ")\n";
   return kOk;
}

int exit_for(Verdict v, std::string expect) {
   if (expect.empty())
      expect = "stable";
   if (v == Verdict::inconclusive)
      return kInconclusive;
   return to_string(v) == expect ? kOk : kViolated;
}

int cmd_verify(const RunConfig& c, const std::string& out_dir) {
   TruncatedEntireFunction t;
   if (!c.series_file.empty()) {
      std::ifstream in(c.series_file);
      if (!in)
         throw DomainError("cannot open series file " + c.series_file);
      json doc;
      in >> doc;
      t = doc.at("series").get<TruncatedEntireFunction>();
   } else {
      if (c.radius < c.contour_radius) {
         std::cerr << "build radius " << c.radius
                   << " is below the contour radius " << c.contour_radius
                   << "; truncation is not certified there\n";
         return kInconclusive;
      }
      t = build_from(c, std::max(c.radius, 30.0));
   }

   // the shift0 branch with a vanishing multiplier: analyze G(z)/z
   TruncatedEntireFunction g = t;
   if (t.coeffs.sign[0] == 0 && t.deflated == 0)
      g = deflate(t);

   VerdictParams vp;
   vp.contour_radius = c.contour_radius;
   vp.density_radii = c.density_radii;
   const bool theorem_kind =
      c.multipliers == "auto" ||
      (kind_of(c) == MultKind::shift1) == (tag_of(c.psi) == ClassTag::S);
   if (c.psi.has_repr && c.lp1.alpha > 0.0 && theorem_kind) {
      const StieltjesRepr psi = c.psi.repr;
      const LP1Function f = c.lp1;
      const int defl = g.deflated;
      vp.evaluator = [psi, f, defl](Complex z) {
         Complex v = eval_integral_rep(psi, f, z);
         for (int i = 0; i < defl; ++i)
            v /= z;
         return v;
      };
   }
   const StabilityReport rep = hurwitz_verdict(g, vp);

   fs::create_directories(out_dir);
   const fs::path dir(out_dir);
   write_roots_csv((dir / "roots.csv").string(), rep.roots);
   write_indicator_csv((dir / "indicator.csv").string(), rep.indicator_samples);
   write_density_csv((dir / "density.csv").string(), rep.density_table);
   {
      json used;
      used["series"] = t;
      std::ofstream os(dir / "series_used.json");
      os << used.dump(2) << "\n";
   }

   std::ostringstream summary;
   summary << "verdict: " << to_string(rep.verdict) << "\n";
   summary << "rhp_zero_count: " << rep.zero_count_rhp << "\n";
   summary << "winding_error: " << rep.winding_err << "\n";
   summary << "roots_in_disk: " << rep.roots.size() << "\n";
   for (const std::string& n : rep.notes)
      summary << "note: " << n << "\n";

   if (c.psi.has_repr && theorem_kind && c.lp1.m == 0) {
      SuiteParams sp;
      sp.R = std::min(c.radius, 10.0);
      sp.contour_radius = c.contour_radius;
      try {
         const SuiteReport suite = theorem2_suite(c.lp1, c.psi.repr, sp);
         write_suite_summary((dir / "suite.csv").string(), suite);
         summary << "suite: " << (suite.all_pass() ? "pass" : "fail") << "\n";
      } catch (const Error& e) {
         summary << "suite: skipped (" << e.what() << ")\n";
      }
   }

   std::ofstream os(dir / "summary.txt");
   os << summary.str();
   std::cout << summary.str();
   return exit_for(rep.verdict, c.expect);
}

std::vector<double> parse_list(const std::string& text) {
   std::vector<double> out;
   std::stringstream ss(text);
   std::string item;
   while (std::getline(ss, item, ','))
      if (!item.empty())
         out.push_back(std::stod(item));
   return out;
}

int cmd_poly(const RunConfig& c, const std::string& coeffs_text,
             const std::string& roots_text) {
   std::vector<double> p; // ascending
   if (!roots_text.empty()) {
      p = {1.0};
      for (double r : parse_list(roots_text)) {
         // multiply by (z - r)
         p.push_back(0.0);
         for (std::size_t k = p.size() - 1; k > 0; --k)
            p[k] = p[k - 1] - r * p[k];
         p[0] *= -r;
      }
   } else {
      p = parse_list(coeffs_text);
   }
   if (p.size() < 2)
      throw DomainError("need a polynomial of degree >= 1");

   const int n = static_cast<int>(p.size()) - 1;
   const MultKind kind = kind_of(c);
   const std::vector<double> mults =
      c.psi.closed ? multiplier_sequence(c.psi.cf, kind, n)
                   : multiplier_sequence(c.psi.repr, kind, n);
   std::vector<double> q(p.size());
   for (int k = 0; k <= n; ++k)
      q[k] = mults[k] * p[k];

   // hypothesis check: the theorem covers only negative-real-root inputs
   const RootResult pr = poly_roots(p);
   bool hypothesis_ok = true;
   for (Complex z : pr.roots)
      if (z.real() > -1e-12 || std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z)))
         hypothesis_ok = false;
   if (!hypothesis_ok)
      std::cout << "warning: input polynomial has roots outside the negative "
                   "real axis; the composition theorem does not apply\n";

   std::cout.precision(17);
   std::cout << "composed coefficients (ascending):";
   for (double v : q)
      std::cout << " " << v;
   std::cout << "\n";

   std::vector<double> desc(q.rbegin(), q.rend());
   const RouthResult routh = routh_hurwitz(desc);
   const char* rname = routh == RouthResult::stable ? "stable"
                       : routh == RouthResult::not_stable ? "not_stable"
                                                          : "degenerate";
   std::cout << "routh_hurwitz: " << rname << "\n";

   const RootResult qr = poly_roots(q);
   std::cout << "roots:\n";
   for (Complex z : qr.roots)
      std::cout << "  " << z.real() << (z.imag() < 0 ? " - " : " + ")
                << std::abs(z.imag()) << "i\n";
   if (routh == RouthResult::degenerate)
      return kInconclusive;
   return routh == RouthResult::stable ? kOk : kViolated;
}

} // namespace

int main(int argc, char** argv) {
   CLI::App app{"Multiplier-sequence constructions and stability checks"};
   app.require_subcommand(1);

   std::string config_path, out_dir = ".", expect_flag, coeffs_text, roots_text;
   double radius_flag = -1.0, tol_flag = -1.0;
   int jobs = 0;
   unsigned seed = 42;

   auto add_common = [&](CLI::App* sub, bool needs_config) {
      auto* opt = sub->add_option("--config", config_path, "JSON config path");
      if (needs_config)
         opt->required();
      sub->add_option("--out", out_dir, "output directory");
      sub->add_option("--radius", radius_flag, "build disk radius");
      sub->add_option("--tolerance", tol_flag, "truncation tail target");
      sub->add_option("--jobs", jobs, "max concurrent jobs");
      sub->add_option("--seed", seed, "seed for randomized corpora");
   };

   CLI::App* build = app.add_subcommand("build", "construct a truncated series");
   add_common(build, true);
   CLI::App* verify =
      app.add_subcommand("verify", "stability verdict and theorem suite");
   add_common(verify, true);
   verify->add_option("--expect", expect_flag,
                      "expected verdict: stable, unstable, or boundary");
   CLI::App* poly =
      app.add_subcommand("poly", "compose and test a real polynomial");
   add_common(poly, true);
   poly->add_option("--coeffs", coeffs_text,
                    "comma-separated coefficients, ascending");
   poly->add_option("--roots", roots_text, "comma-separated real roots");

   CLI11_PARSE(app, argc, argv);

   try {
      RunConfig cfg = load_config(config_path);
      if (radius_flag > 0.0)
         cfg.radius = radius_flag;
      if (tol_flag > 0.0)
         cfg.tolerance = tol_flag;
      if (!expect_flag.empty())
         cfg.expect = expect_flag;
      if (!cfg.expect.empty() && cfg.expect != "stable" &&
          cfg.expect != "unstable" && cfg.expect != "boundary")
         throw DomainError("expect must be stable, unstable, or boundary");

      if (build->parsed())
         return cmd_build(cfg, out_dir);
      if (verify->parsed())
         return cmd_verify(cfg, out_dir);
      if (poly->parsed()) {
         if (coeffs_text.empty() == roots_text.empty())
            throw DomainError("poly needs exactly one of --coeffs or --roots");
         return cmd_poly(cfg, coeffs_text, roots_text);
      }
   } catch (const QuadratureFailure& e) {
      std::cerr << "inconclusive: " << e.what() << "\n";
      return kInconclusive;
   } catch (const NonConvergence& e) {
      std::cerr << "inconclusive: " << e.what() << "\n";
      return kInconclusive;
   } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBadInput;
   } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kBadInput;
   }
   return kBadInput;
}
