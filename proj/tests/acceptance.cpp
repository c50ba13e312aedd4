// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "cli.hpp"
#include "stabcalc/engine.hpp"
#include "stabcalc/presets.hpp"

using namespace stabcalc;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Accumulates property outcomes into one verdict.
struct Tally {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void add(const PropertyOutcome& o) {
    checked += o.checked;
    if (o.passed()) return;
    std::string what = o.property + " on " + o.algebra;
    if (o.counterexample) what += ": " + o.counterexample->detail;
    failures.push_back(what);
  }
  Verdict verdict(const std::string& unit) const {
    std::ostringstream d;
    d << checked << ' ' << unit;
    for (const auto& f : failures) d << "; " << f;
    return {failures.empty(), d.str()};
  }
};

std::vector<std::string> presets() {
  std::vector<std::string> out = suite_algebras();
  out.pop_back();  // Z
  return out;
}

Tally run(const std::vector<std::string>& properties, const std::vector<std::string>& algebras,
          std::size_t samples, std::size_t max_dim) {
  Tally t;
  for (const auto& a : algebras)
    for (const auto& p : properties) t.add(run_property(p, a, kSeed, samples, max_dim));
  return t;
}

Verdict worked_example() {
  AlgebraPtr a = truncated_polynomial(2);
  Module k_right = preset_simple_top(a, Side::Right);
  Module k = preset_simple_top(a, Side::Left), lam = regular_module(a, Side::Left);
  FunctorPtr f = tensor_functor(k_right);
  FunctorPtr bar = injective_stabilization(f);
  ModuleMap iota = injective_envelope(k).embedding;  // k → Λ onto the socle
  ModuleMap pi = top(lam).projection;                // Λ ↠ k

  const std::size_t at_k = bar->eval(k).dim(), at_lam = bar->eval(lam).dim();
  const bool iota_zero = f->eval_map(iota).is_zero();
  const bool pi_iso = rank(f->eval_map(pi)) == f->eval(k).dim() && f->eval(k).dim() == f->eval(lam).dim();
  const QMatrix bar_pi = bar->eval_map(pi);
  const bool bar_pi_epi = rank(bar_pi) == at_k;
  std::ostringstream d;
  d << "dim F̄(k) = " << at_k << ", dim F̄(Λ) = " << at_lam << ", k⊗ι " << (iota_zero ? "= 0" : "≠ 0")
    << ", 1⊗π " << (pi_iso ? "iso" : "not iso") << ", F̄(π) " << (bar_pi_epi ? "epi" : "not epi");
  return {at_k == 1 && at_lam == 0 && iota_zero && pi_iso && !bar_pi_epi, d.str()};
}

const std::vector<std::string> kRouteAlgebras{"Q[x]/(x^2)", "Q[x]/(x^3)", "Q[x]/(x^4)", "UT2"};

Verdict routes() { return run({"tensor_stab_routes"}, kRouteAlgebras, 25, 5).verdict("pairs"); }

Verdict choice_independence() { return run({"choice_independence"}, kRouteAlgebras, 25, 5).verdict("pairs"); }

Verdict splice() { return run({"splice"}, presets(), 10, 4).verdict("sequences"); }

Verdict defect_laws() { return run({"defect_laws"}, presets(), 25, 4).verdict("functors"); }

Verdict z_torsion() { return run({"z_torsion"}, {"Z"}, 50, 6).verdict("matrices"); }

Verdict duality() { return run({"duality"}, presets(), 25, 4).verdict("pairs"); }

Verdict derived() { return run({"rn_tensor", "underline_hom_tor"}, presets(), 25, 4).verdict("pairs"); }

Verdict vanishing() { return run({"vanishing"}, presets(), 25, 4).verdict("pairs"); }

Verdict eilenberg_watts() { return run({"eilenberg_watts"}, presets(), 10, 4).verdict("functors"); }

Verdict determinism() {
  SuiteOptions o;
  o.seed = kSeed;
  o.samples = 3;
  o.max_dim = 3;
  o.jobs = 4;
  const std::string first = cli::dump(cli::to_json(check_suite(o)));
  o.jobs = 1;
  const std::string second = cli::dump(cli::to_json(check_suite(o)));
  return {first == second, std::to_string(first.size()) + " bytes, two runs with 4 and 1 jobs"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
  double budget;  // seconds, 0 = none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked example Q[x]/(x^2), F = k ⊗ −", worked_example, 1},
      {2, "three tensor_stab routes agree", routes, 60},
      {3, "free covers and envelopes change nothing", choice_independence, 0},
      {4, "splice window exact", splice, 0},
      {5, "defect laws of fp functors", defect_laws, 0},
      {6, "torsion over Z three ways", z_torsion, 10},
      {7, "duality formula", duality, 0},
      {8, "derived identifications", derived, 0},
      {9, "vanishing laws", vanishing, 0},
      {10, "Eilenberg-Watts counit", eilenberg_watts, 0},
      {11, "check suite report is byte-identical", determinism, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && s >= c.budget) {
      v.pass = false;
      v.detail += "; over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    failed += !v.pass;
    std::printf("criterion %2d %s  %s (%.2f s): %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, s, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
