#include "stabcalc/check_suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stabcalc/engine.hpp"
#include "stabcalc/fp.hpp"
#include "stabcalc/presets.hpp"
#include "stabcalc/sampling.hpp"

namespace stabcalc {

namespace {

using Failure = std::optional<std::string>;

struct Property {
  std::string name;
  std::function<Counterexample(const AlgebraPtr&, Rng&, std::size_t)> draw;
  std::function<Failure(const Counterexample&)> check;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 step over the running hash
  std::uint64_t z = h + 0x9e3779b97f4a7c15ULL + v;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const Module& mod(const Counterexample& c, std::size_t i) { return c.modules.at(i).second; }

Counterexample pair_sample(const AlgebraPtr& alg, Rng& rng, std::size_t d) {
  Counterexample c;
  c.modules = {{"A", random_module(alg, Side::Right, rng, d)}, {"B", random_module(alg, Side::Left, rng, d)}};
  return c;
}

// A, then B′, B, B″ with f and g between them.
Counterexample ses_sample(const AlgebraPtr& alg, Rng& rng, std::size_t d) {
  Counterexample c;
  c.modules = {{"A", random_module(alg, Side::Right, rng, d)}};
  ShortExact e = random_ses(alg, Side::Left, rng, d);
  c.modules.emplace_back("B'", e.f.domain());
  c.modules.emplace_back("B", e.f.codomain());
  c.modules.emplace_back("B''", e.g.codomain());
  c.maps = {{"f", e.f}, {"g", e.g}};
  return c;
}

Counterexample fp_sample(const AlgebraPtr& alg, Rng& rng, std::size_t d, bool with_projective) {
  const Side s = rng() % 2 ? Side::Right : Side::Left;
  Counterexample c;
  FpPresentation p = random_fp(alg, s, rng, d);
  c.maps = {{"f", p.f}};
  if (with_projective) c.maps.emplace_back("f_proj", random_fp(alg, s, rng, d, true).f);
  std::size_t k = 0;
  for (const auto& m : test_battery(alg, s, rng, 3, d)) c.modules.emplace_back("X" + std::to_string(k++), m);
  return c;
}

ZMatrix random_zmatrix(Rng& rng, std::size_t max_size, int bound) {
  const std::size_t r = rng() % (max_size + 1), c = 1 + rng() % max_size;
  ZMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_small(rng, bound);
  return m;
}

std::vector<Property> algebra_properties() {
  std::vector<Property> ps;
  ps.push_back({"tensor_stab_routes", pair_sample, [](const Counterexample& c) -> Failure {
                  tensor_stab(mod(c, 0), mod(c, 1));  // route All throws on disagreement
                  return std::nullopt;
                }});
  ps.push_back({"choice_independence", pair_sample, [](const Counterexample& c) -> Failure {
                  auto mn = tensor_stab(mod(c, 0), mod(c, 1), StabRoute::All, Mode::Minimal);
                  auto fr = tensor_stab(mod(c, 0), mod(c, 1), StabRoute::All, Mode::Free);
                  if (mn.dim != fr.dim)
                    return "minimal dim " + std::to_string(mn.dim) + " vs free dim " + std::to_string(fr.dim);
                  if (!(mn.subspace == fr.subspace)) return std::string("definition subspaces differ");
                  return std::nullopt;
                }});
  ps.push_back({"vanishing", pair_sample, [](const Counterexample& c) -> Failure {
                  const Module &a = mod(c, 0), &b = mod(c, 1);
                  const AlgebraPtr& alg = a.algebra();
                  for (const auto& p : indecomposable_projectives(alg, Side::Right))
                    if (tensor_stab(p, b).dim) return std::string("P ⊗̄ B ≠ 0");
                  for (const auto& i : indecomposable_injectives(alg, Side::Left))
                    if (tensor_stab(a, i).dim) return std::string("A ⊗̄ I ≠ 0");
                  FunctorPtr t = tensor_functor(a);
                  FunctorPtr s_up = satellite(t, Direction::Right), s_down = satellite(t, Direction::Left);
                  for (const auto& i : indecomposable_injectives(alg, Side::Left))
                    if (s_up->eval(i).dim()) return std::string("S¹F(I) ≠ 0");
                  for (const auto& p : indecomposable_projectives(alg, Side::Left))
                    if (s_down->eval(p).dim()) return std::string("S₁F(P) ≠ 0");
                  FunctorPtr hbar = injective_stabilization(hom_functor(b));
                  for (const auto& x : {b, injective_envelope(b).injective, cosyzygy(b, 1)})
                    if (hbar->eval(x).dim()) return std::string("stabilized Hom(B, −) ≠ 0");
                  return std::nullopt;
                }});
  ps.push_back({"torsion", pair_sample, [](const Counterexample& c) -> Failure {
                  if (!torsion_submodule(mod(c, 0)).matches_tensor_stab)
                    return std::string("Ker(A → A**) differs from A ⊗̄ Λ");
                  return std::nullopt;
                }});
  ps.push_back({"rn_tensor", pair_sample, [](const Counterexample& c) -> Failure {
                  for (std::size_t n = 0; n <= 3; ++n) rn_tensor(mod(c, 0), mod(c, 1), n);
                  return std::nullopt;
                }});
  ps.push_back({"underline_hom_tor",
                [](const AlgebraPtr& alg, Rng& rng, std::size_t d) {
                  Counterexample c;
                  c.modules = {{"A", random_module(alg, Side::Left, rng, d)},
                               {"B", random_module(alg, Side::Left, rng, d)}};
                  return c;
                },
                [](const Counterexample& c) -> Failure {
                  auto h = stable_hom(mod(c, 0), mod(c, 1), StableMode::ModProjectives).dim();
                  auto t = tor_n(transpose(mod(c, 0)).tr, mod(c, 1), 1).dim();
                  if (h != t) return "underline Hom " + std::to_string(h) + " vs Tor_1(Tr A, B) " + std::to_string(t);
                  return std::nullopt;
                }});
  ps.push_back({"duality", pair_sample, [](const Counterexample& c) -> Failure {
                  auto d = duality_check(mod(c, 0), mod(c, 1));
                  if (!d.witness_is_iso) return std::string("pairing is not an isomorphism");
                  return std::nullopt;
                }});
  ps.push_back({"splice", ses_sample, [](const Counterexample& c) -> Failure {
                  auto s = splice_sequence(mod(c, 0), c.maps[0].second, c.maps[1].second, 2, 3);
                  for (const auto& v : s.verdicts)
                    if (!v.complex || !v.exact)
                      return "not exact at " + s.terms[v.position].label + " (position " +
                             std::to_string(v.position) + ")";
                  return std::nullopt;
                }});
  ps.push_back({"right_exactness",
                [](const AlgebraPtr& alg, Rng& rng, std::size_t d) {
                  Counterexample c = ses_sample(alg, rng, d);
                  c.modules.emplace_back("C", random_module(alg, Side::Left, rng, d));
                  return c;
                },
                [](const Counterexample& c) -> Failure {
                  const Module& a = mod(c, 0);
                  auto h = half_exactness(a, c.maps[0].second, c.maps[1].second);
                  if (!h.exact_in_middle) return std::string("F̄ not half exact");
                  if (!h.epi_preserved && h.sigma_prime_has_a)
                    return std::string("F̄(g) not onto although ΣB′ has property A");
                  // 0 → C → I(C) → ΣC → 0: F̄(g) is onto iff ΣC has property A.
                  InjectiveEnvelope env = injective_envelope(mod(c, 4));
                  QuotientModule q = quotient(env.injective, env.embedding.matrix());
                  auto k = half_exactness(a, env.embedding, q.projection);
                  if (k.epi_preserved != k.sigma_prime_has_a)
                    return std::string("cosyzygy sequence: epi preserved ≠ property A of ΣC");
                  return std::nullopt;
                }});
  ps.push_back({"defect_laws",
                [](const AlgebraPtr& alg, Rng& rng, std::size_t d) { return fp_sample(alg, rng, d, false); },
                [](const Counterexample& c) -> Failure {
                  FpPresentation p = fp_presentation(c.maps[0].second);
                  std::vector<Module> battery;
                  for (const auto& m : c.modules) battery.push_back(m.second);
                  auto d = defect_and_stability(p);
                  if (d.stable != d.vanishes_on_injectives) return std::string("w(F) = 0 ⇎ F(I) = 0");
                  auto sr = stab_resolution(p, battery);
                  if (!sr.all_exact()) return std::string("4-term sequence not exact");
                  if (!sr.f0_is_stabilization()) return std::string("F₀ differs from F̄");
                  for (std::size_t i = 0; i < battery.size(); ++i)
                    if (!r0_check(p, battery[i]).agree()) return "R⁰F ≠ Hom(w(F), −) at X" + std::to_string(i);
                  return std::nullopt;
                }});
  ps.push_back({"eilenberg_watts",
                [](const AlgebraPtr& alg, Rng& rng, std::size_t d) { return fp_sample(alg, rng, d, true); },
                [](const Counterexample& c) -> Failure {
                  std::vector<Module> battery;
                  for (const auto& m : c.modules) battery.push_back(m.second);
                  const Module& first = battery.front();
                  const std::size_t nproj = indecomposable_projectives(first.algebra(), first.side()).size();
                  auto ew = eilenberg_watts(fp_presentation(c.maps[0].second), battery);
                  for (std::size_t i = 0; i < battery.size(); ++i) {
                    const auto& k = ew.checks[i];
                    if (!k.well_defined) return "counit not well defined at X" + std::to_string(i);
                    if (k.f0 != k.proj_stab) return "F⁰ ≠ projective stabilization at X" + std::to_string(i);
                    if (i < nproj && !k.iso()) return "counit not iso on projective X" + std::to_string(i);
                  }
                  auto re = eilenberg_watts(fp_presentation(c.maps[1].second), battery);
                  for (std::size_t i = 0; i < battery.size(); ++i)
                    if (!re.checks[i].iso()) return "right exact sample: counit not iso at X" + std::to_string(i);
                  return std::nullopt;
                }});
  return ps;
}

std::vector<Property> z_properties() {
  std::vector<Property> ps;
  ps.push_back({"z_torsion",
                [](const AlgebraPtr&, Rng& rng, std::size_t d) {
                  Counterexample c;
                  c.groups = {{"A", random_zmatrix(rng, std::min<std::size_t>(d, 6), 20)}};
                  return c;
                },
                [](const Counterexample& c) -> Failure {
                  ZFGModule a(c.groups[0].second);
                  ZFGModule classical = ZFGModule::cyclic_sum(a.factors());
                  ZFGModule stab = tensor_stab_z(a, ZFGModule::free(1));
                  ZFGModule tor = torsion_z(a).torsion;
                  if (!(stab == classical) || !(tor == classical))
                    return "A ⊗̄ Z = " + stab.str() + ", Ker e_A = " + tor.str() + ", torsion = " + classical.str();
                  return std::nullopt;
                }});
  ps.push_back({"z_ext_additivity",
                [](const AlgebraPtr&, Rng& rng, std::size_t d) {
                  Counterexample c;
                  const std::size_t s = std::min<std::size_t>(d, 4);
                  c.groups = {{"M1", random_zmatrix(rng, s, 9)}, {"M2", random_zmatrix(rng, s, 9)},
                              {"N", random_zmatrix(rng, s, 9)}};
                  return c;
                },
                [](const Counterexample& c) -> Failure {
                  ZFGModule m1(c.groups[0].second), m2(c.groups[1].second), n(c.groups[2].second);
                  if (!(ext1_z(direct_sum(m1, m2), n) == direct_sum(ext1_z(m1, n), ext1_z(m2, n))))
                    return std::string("Ext¹ not additive in the first slot");
                  if (!(ext1_z(n, direct_sum(m1, m2)) == direct_sum(ext1_z(n, m1), ext1_z(n, m2))))
                    return std::string("Ext¹ not additive in the second slot");
                  return std::nullopt;
                }});
  return ps;
}

const std::vector<Property>& properties_for(const std::string& algebra) {
  static const std::vector<Property> alg = algebra_properties();
  static const std::vector<Property> z = z_properties();
  return algebra == "Z" ? z : alg;
}

const Property& find_property(const std::string& algebra, const std::string& name) {
  for (const auto& p : properties_for(algebra))
    if (p.name == name) return p;
  throw std::invalid_argument("unknown property '" + name + "' for " + algebra);
}

Failure guarded(const Property& p, const Counterexample& c) {
  try {
    return p.check(c);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

}  // namespace

bool SuiteReport::all_passed() const {
  for (const auto& o : outcomes)
    if (!o.passed()) return false;
  return true;
}

std::vector<std::string> suite_algebras() {
  return {"Q[x]/(x^2)", "Q[x]/(x^3)", "Q[x]/(x^4)", "UT2", "Q", "Q[x]/(x^2) x UT2", "Z"};
}

std::vector<std::string> suite_properties(const std::string& algebra) {
  std::vector<std::string> out;
  for (const auto& p : properties_for(algebra)) out.push_back(p.name);
  return out;
}

AlgebraPtr suite_algebra(const std::string& name) {
  static const std::map<std::string, std::function<AlgebraPtr()>> table{
      {"Q[x]/(x^2)", [] { return truncated_polynomial(2); }},
      {"Q[x]/(x^3)", [] { return truncated_polynomial(3); }},
      {"Q[x]/(x^4)", [] { return truncated_polynomial(4); }},
      {"UT2", [] { return upper_triangular_2(); }},
      {"Q", [] { return ground_field(); }},
      {"Q[x]/(x^2) x UT2", [] { return product_algebra(truncated_polynomial(2), upper_triangular_2()); }},
  };
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown suite algebra '" + name + "'");
  return it->second();
}

PropertyOutcome run_property(const std::string& property, const std::string& algebra, std::uint64_t seed,
                             std::size_t samples, std::size_t max_dim) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (max_dim == 0 || max_dim > kMaxSuiteDim)
    throw std::invalid_argument("max_dim must be in 1.." + std::to_string(kMaxSuiteDim));
  const Property& p = find_property(algebra, property);
  AlgebraPtr alg = algebra == "Z" ? nullptr : suite_algebra(algebra);
  const std::uint64_t base = mix(mix(seed, fnv1a(property)), fnv1a(algebra));

  const auto start = std::chrono::steady_clock::now();
  PropertyOutcome out{property, algebra, 0, 0, std::nullopt};
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(mix(base, i));
    Counterexample c = p.draw(alg, rng, max_dim);
    ++out.checked;
    Failure f = guarded(p, c);
    if (!f) continue;
    ++out.failed;
    if (out.counterexample) continue;
    c.max_dim = max_dim;
    c.detail = *f;
    // Shrink: the first failure found at the smallest dimension bound.
    bool shrunk = false;
    for (std::size_t d = 1; d < max_dim && !shrunk; ++d)
      for (std::uint64_t k = 0; k < 8 && !shrunk; ++k) {
        Rng r2(mix(mix(mix(base, i), d), k + 1));
        Counterexample small = p.draw(alg, r2, d);
        if (Failure g = guarded(p, small)) {
          small.max_dim = d;
          small.detail = *g;
          c = std::move(small);
          shrunk = true;
        }
      }
    out.counterexample = std::move(c);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SuiteReport check_suite(const SuiteOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (options.max_dim == 0 || options.max_dim > kMaxSuiteDim)
    throw std::invalid_argument("max_dim must be in 1.." + std::to_string(kMaxSuiteDim));
  auto selected = [](const std::vector<std::string>& filter, const std::string& name) {
    return filter.empty() || std::find(filter.begin(), filter.end(), name) != filter.end();
  };
  std::vector<std::pair<std::string, std::string>> work;  // (algebra, property)
  for (const auto& a : suite_algebras()) {
    if (!selected(options.algebras, a)) continue;
    for (const auto& p : suite_properties(a))
      if (selected(options.properties, p)) work.emplace_back(a, p);
  }
  for (const auto& a : options.algebras) {
    const auto all = suite_algebras();
    if (std::find(all.begin(), all.end(), a) == all.end())
      throw std::invalid_argument("unknown suite algebra '" + a + "'");
  }

  SuiteReport report{options, std::vector<PropertyOutcome>(work.size())};
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) {
      try {
        report.outcomes[i] = run_property(work[i].second, work[i].first, options.seed, options.samples,
                                          options.max_dim);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, work.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return report;
}

}  // namespace stabcalc
