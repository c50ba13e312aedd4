#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "stabcalc/engine.hpp"
#include "stabcalc/fp.hpp"
#include "stabcalc/presets.hpp"

namespace stabcalc::cli {

namespace {

std::uint64_t task_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

json integer_list(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json group_json(const ZFGModule& g) {
  return json{{"group", g.str()}, {"free_rank", g.free_rank()}, {"factors", integer_list(g.factors())}};
}

json matrix_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_str(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json zmatrix_json(const ZMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

bool commutative(const Algebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.constant(i, j, k) != a.constant(j, i, k)) return false;
  return true;
}

// Everything one task needs to look up its inputs.
class TaskContext {
 public:
  TaskContext(const Workspace& ws, const json& t, std::uint64_t seed) : ws_(ws), t_(t), rng_(seed) {}

  std::string str(const char* key, const std::string& fallback = {}) const {
    return t_.contains(key) ? t_[key].get<std::string>() : fallback;
  }
  std::size_t count(const char* key, std::size_t fallback) const {
    return t_.contains(key) ? t_[key].get<std::size_t>() : fallback;
  }
  Mode mode() const { return str("mode", "minimal") == "free" ? Mode::Free : Mode::Minimal; }

  /// A module by name; an algebra name stands for its regular module on
  /// `side`. Over a commutative algebra a module is also usable on the
  /// other side with the same action matrices.
  Module module(const std::string& name, Side side) const {
    if (auto it = ws_.modules.find(name); it != ws_.modules.end()) {
      const Module& m = it->second;
      if (m.side() != side && commutative(*m.algebra())) return Module::unchecked(m.algebra(), side, m.actions());
      return m;
    }
    return regular_module(ws_.algebras.at(name), side);
  }
  Module module_at(const char* key, Side side) const { return module(str(key), side); }

  ZFGModule group_at(const char* key) const {
    const json& v = t_[key];
    if (v.is_string()) return ZFGModule(ws_.groups.at(v.get<std::string>()));
    ZMatrix m(v.size(), v.empty() ? 0 : v[0].size());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        m(i, j) = v[i][j].is_string() ? Integer(v[i][j].get<std::string>()) : Integer(v[i][j].get<long>());
    return ZFGModule(std::move(m));
  }

  const ModuleMap& map(const std::string& name) const { return ws_.maps.at(name); }
  const json& task() const { return t_; }
  Rng& rng() { return rng_; }

 private:
  const Workspace& ws_;
  const json& t_;
  Rng rng_;
};

StabRoute parse_route(const std::string& r) {
  if (r == "definition") return StabRoute::Definition;
  if (r == "transpose") return StabRoute::Transpose;
  if (r == "satellite_of_tor" || r == "satellite-of-tor") return StabRoute::SatelliteOfTor;
  return StabRoute::All;
}

// The short exact sequence of a splice or half_exactness task: explicit
// maps, or a seeded search for a mono B′ → B whose cokernel is B″.
ShortExact task_ses(TaskContext& c, Side side) {
  const json& t = c.task();
  if (t.contains("maps")) {
    ShortExact e{c.map(t["maps"][0].get<std::string>()), c.map(t["maps"][1].get<std::string>())};
    if (!is_short_exact(e.f, e.g)) throw std::invalid_argument("maps do not form a short exact sequence");
    return e;
  }
  Module b1 = c.module(t["ses"][0].get<std::string>(), side);
  Module b = c.module(t["ses"][1].get<std::string>(), side);
  Module b2 = c.module(t["ses"][2].get<std::string>(), side);
  if (b1.dim() + b2.dim() != b.dim())
    throw std::invalid_argument("ses dimensions do not add up: " + std::to_string(b1.dim()) + " + " +
                                std::to_string(b2.dim()) + " != " + std::to_string(b.dim()));
  HomSpace hom(b1, b);
  for (int attempt = 0; attempt < 64 && hom.dim(); ++attempt) {
    ModuleMap f = random_hom(b1, b, c.rng());
    if (!f.is_injective()) continue;
    MapFactorization parts = map_factorization(f);
    auto iso = find_isomorphism(parts.cokernel.module, b2, c.rng()());
    if (!iso) continue;
    return {f, compose(*iso, parts.cokernel.projection)};
  }
  throw std::invalid_argument("no short exact sequence 0 → B′ → B → B″ → 0 found with these terms");
}

json run_q(TaskContext& c, const std::string& op) {
  const Mode mode = c.mode();
  if (op == "tensor") {
    return json{{"dim", tensor_over_algebra(c.module_at("A", Side::Right), c.module_at("B", Side::Left)).dim()}};
  }
  if (op == "tensor_stab") {
    const std::string r = c.str("route", "all");
    TensorStab s = tensor_stab(c.module_at("A", Side::Right), c.module_at("B", Side::Left), parse_route(r), mode);
    json routes = json::object();
    for (const auto& [route, d] : s.routes) routes[to_string(route)] = d;
    return json{{"dim", s.dim}, {"mode", to_string(mode)}, {"routes", routes}, {"routes_agree", true}};
  }
  if (op == "torsion") {
    Torsion t = torsion_submodule(c.module_at("A", Side::Right), mode);
    if (!t.matches_tensor_stab) throw ConsistencyError("torsion: Ker e_A differs from A ⊗̄ Λ inside A");
    return json{{"dim", t.torsion.module.dim()}, {"matches_tensor_stab", true}};
  }
  if (op == "tor") {
    const std::size_t n = c.count("n", 1);
    Module a = c.module_at("A", Side::Right), b = c.module_at("B", Side::Left);
    const std::size_t d1 = tor_n(a, b, n, TorRoute::ResolveFirst, mode).dim();
    const std::size_t d2 = tor_n(a, b, n, TorRoute::ResolveSecond, mode).dim();
    if (d1 != d2)
      throw ConsistencyError("tor: resolving A gives " + std::to_string(d1) + ", resolving B gives " +
                             std::to_string(d2));
    return json{{"n", n}, {"dim", d1}, {"balanced", true}};
  }
  if (op == "ext") {
    const std::size_t n = c.count("n", 1);
    Module m = c.module_at("M", Side::Left);
    return json{{"n", n}, {"dim", ext_n(m, c.module_at("N", m.side()), n, mode).dim()}};
  }
  if (op == "rn_tensor") {
    RnTensor r = rn_tensor(c.module_at("A", Side::Right), c.module_at("B", Side::Left), c.count("n", 1), mode);
    return json{{"n", r.n}, {"dim", r.dim}, {"ext_dim", r.ext_dim}};
  }
  if (op == "transpose") {
    TransposeResult t = transpose(c.module_at("A", Side::Right), mode);
    return json{{"dim", t.tr.dim()}, {"side", to_string(t.tr.side())}, {"four_term_exact", t.four_term_exact}};
  }
  if (op == "stable_hom") {
    Module b = c.module_at("B", Side::Left);
    const bool proj = c.str("modulo", "injectives") == "projectives";
    StableHom h =
        stable_hom(b, c.module_at("C", b.side()), proj ? StableMode::ModProjectives : StableMode::ModInjectives, mode);
    return json{{"modulo", proj ? "projectives" : "injectives"}, {"hom_dim", h.hom.dim()}, {"dim", h.dim()}};
  }
  if (op == "duality") {
    DualityCheck d = duality_check(c.module_at("A", Side::Right), c.module_at("B", Side::Left), mode);
    return json{{"lhs_dim", d.lhs_dim}, {"rhs_dim", d.rhs_dim}, {"witness_is_iso", d.witness_is_iso}};
  }
  if (op == "splice") {
    Module a = c.module_at("A", Side::Right);
    ShortExact e = task_ses(c, opposite(a.side()));
    SpliceSequence s = splice_sequence(a, e.f, e.g, c.count("tor_rows", 2), c.count("sigma_rows", 3), mode);
    json terms = json::array(), verdicts = json::array();
    for (const auto& t : s.terms) terms.push_back(json{{"label", t.label}, {"dim", t.dim}});
    for (const auto& v : s.verdicts)
      verdicts.push_back(
          json{{"at", s.terms.at(v.position).label}, {"complex", v.complex}, {"exact", v.exact}});
    return json{{"terms", terms}, {"verdicts", verdicts}, {"all_exact", s.all_exact()}};
  }
  if (op == "half_exactness") {
    Module a = c.module_at("A", Side::Right);
    ShortExact e = task_ses(c, opposite(a.side()));
    HalfExactness h = half_exactness(a, e.f, e.g, mode);
    return json{{"exact_in_middle", h.exact_in_middle},
                {"epi_preserved", h.epi_preserved},
                {"sigma_prime_has_a", h.sigma_prime_has_a}};
  }
  const ModuleMap& f = c.map(c.str("f"));
  FpPresentation p = fp_presentation(f);
  std::vector<Module> battery = test_battery(f.domain().algebra(), f.domain().side(), c.rng(),
                                             c.count("random_modules", 3), c.count("max_dim", 4));
  if (op == "defect") {
    DefectReport d = defect_and_stability(p);
    StabResolution s = stab_resolution(p, battery, mode);
    bool r0 = true;
    for (const auto& x : battery) r0 = r0 && r0_check(p, x, mode).agree();
    return json{{"defect_dim", d.defect.dim()},
                {"stable", d.stable},
                {"vanishes_on_injectives", d.vanishes_on_injectives},
                {"battery", battery.size()},
                {"four_term_exact", s.all_exact()},
                {"r0_matches_hom_defect", r0}};
  }
  // eilenberg_watts
  EilenbergWatts w = eilenberg_watts(p, battery, mode);
  json checks = json::array();
  std::size_t isos = 0;
  for (const auto& k : w.checks) {
    isos += k.iso();
    checks.push_back(json{{"source", k.source},
                          {"target", k.target},
                          {"coker", k.f0},
                          {"ker", k.f1},
                          {"proj_stab", k.proj_stab},
                          {"well_defined", k.well_defined},
                          {"iso", k.iso()}});
  }
  return json{{"f_lambda_dim", w.f_lambda.dim()}, {"battery", battery.size()}, {"iso_count", isos}, {"checks", checks}};
}

json run_z(TaskContext& c, const std::string& op) {
  const char* one = c.task().contains("presentation") ? "presentation" : "A";
  if (op == "torsion") {
    ZFGModule a = c.group_at(one);
    ZTorsion t = torsion_z(a);
    const ZFGModule classical = ZFGModule::cyclic_sum(a.factors());
    const ZFGModule via_stab = tensor_stab_z(a, ZFGModule::free(1));
    if (!(t.torsion == classical) || !(via_stab == classical))
      throw ConsistencyError("torsion over Z: Ker e_A = " + t.torsion.str() + ", A ⊗̄ Z = " + via_stab.str() +
                             ", classical = " + classical.str());
    json out = group_json(t.torsion);
    out["inclusion"] = zmatrix_json(t.inclusion);
    return out;
  }
  if (op == "transpose") return group_json(transpose_z(c.group_at(one)));
  if (op == "tensor_stab") return group_json(tensor_stab_z(c.group_at("A"), c.group_at("B")));
  return group_json(ext1_z(c.group_at("M"), c.group_at("N")));
}

TaskResult run_one(const Workspace& ws, std::size_t index, std::uint64_t seed) {
  const json& t = ws.tasks[index];
  TaskResult r;
  r.op = t["op"].get<std::string>();
  const auto start = std::chrono::steady_clock::now();
  try {
    TaskContext c(ws, t, task_seed(seed, index));
    const bool z = t.contains("backend") && t["backend"] == "Z";
    r.result = z ? run_z(c, r.op) : run_q(c, r.op);
    r.status = "ok";
  } catch (const ConsistencyError& e) {
    r.status = "route_failure";
    r.error = e.what();
  } catch (const std::exception& e) {
    r.status = "error";
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string pad(const std::string& s, std::size_t w) {
  // display width counts code points, not bytes
  std::size_t n = 0;
  for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
  return s + std::string(w > n ? w - n : 0, ' ');
}

std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
  return n;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.push_back(0);
      w[i] = std::max(w[i], width(r[i]));
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) line += (i + 1 < r.size() ? pad(r[i], w[i] + 2) : r[i]);
    out << line << '\n';
  }
  return out.str();
}

// key=value pairs of a JSON value, nested keys joined with dots.
void flatten(const json& j, const std::string& prefix, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.push_back(prefix + "=" + (j.is_string() ? j.get<std::string>() : j.dump()));
  }
}

std::string fixed(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << s;
  return o.str();
}

}  // namespace

bool RunReport::route_failure() const {
  return std::any_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.status == "route_failure"; });
}

bool RunReport::any_error() const {
  return std::any_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.status == "error"; });
}

RunReport run_tasks(const Workspace& ws, std::uint64_t seed, bool strict, std::size_t jobs) {
  const std::size_t n = ws.tasks.size();
  RunReport report{seed, std::vector<TaskResult>(n)};
  std::vector<char> ran(n, 0);
  std::atomic<std::size_t> next{0}, stop{n};  // tasks at index > stop are not started
  auto halts = [strict](const TaskResult& r) {
    return r.status == "route_failure" || (strict && r.status == "error");
  };
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      if (i > stop.load()) continue;
      report.tasks[i] = run_one(ws, i, seed);
      ran[i] = 1;
      if (halts(report.tasks[i])) {
        std::size_t cur = stop.load();
        while (i < cur && !stop.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Every task before the first halting one has run whatever the schedule.
  bool halted = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (halted || !ran[i]) {
      report.tasks[i] = TaskResult{ws.tasks[i]["op"].get<std::string>(), "skipped"};
      continue;
    }
    halted = halts(report.tasks[i]);
  }
  return report;
}

json to_json(const RunReport& r, bool timing) {
  json tasks = json::array();
  std::size_t ok = 0, errors = 0, failures = 0, skipped = 0;
  for (std::size_t i = 0; i < r.tasks.size(); ++i) {
    const TaskResult& t = r.tasks[i];
    json j{{"index", i}, {"op", t.op}, {"status", t.status}};
    if (t.status == "ok") j["result"] = t.result;
    if (!t.error.empty()) j["error"] = t.error;
    if (timing && t.status != "skipped") j["seconds"] = t.seconds;
    tasks.push_back(std::move(j));
    ok += t.status == "ok";
    errors += t.status == "error";
    failures += t.status == "route_failure";
    skipped += t.status == "skipped";
  }
  return json{{"tool", "stabcalc"},
              {"version", kVersion},
              {"schema", kReportSchema},
              {"kind", "run"},
              {"seed", r.seed},
              {"tasks", tasks},
              {"summary", {{"total", r.tasks.size()}, {"ok", ok}, {"error", errors},
                           {"route_failure", failures}, {"skipped", skipped}}}};
}

std::string to_text(const RunReport& r, bool timing) {
  const json j = to_json(r, timing);
  std::vector<std::vector<std::string>> rows{{"#", "op", "status"}};
  if (timing) rows[0].push_back("seconds");
  rows[0].push_back("result");
  for (const auto& t : j["tasks"]) {
    std::vector<std::string> row{std::to_string(t["index"].get<std::size_t>()), t["op"], t["status"]};
    if (timing) row.push_back(t.contains("seconds") ? fixed(t["seconds"].get<double>()) : "");
    std::vector<std::string> kv;
    if (t.contains("result")) flatten(t["result"], "", kv);
    if (t.contains("error")) kv.push_back("error: " + t["error"].get<std::string>());
    std::string cell;
    for (const auto& s : kv) cell += (cell.empty() ? "" : "  ") + s;
    row.push_back(cell);
    rows.push_back(std::move(row));
  }
  const json& s = j["summary"];
  std::ostringstream out;
  out << "stabcalc " << kVersion << "  seed " << r.seed << "\n" << table(rows);
  out << s["total"] << " tasks: " << s["ok"] << " ok, " << s["error"] << " error, " << s["route_failure"]
      << " route failure, " << s["skipped"] << " skipped\n";
  return out.str();
}

json to_json(const SuiteReport& r, bool timing) {
  json outcomes = json::array();
  std::size_t failed = 0;
  for (const auto& o : r.outcomes) {
    json j{{"algebra", o.algebra}, {"property", o.property}, {"checked", o.checked}, {"failed", o.failed},
           {"passed", o.passed()}};
    if (o.counterexample) {
      const Counterexample& c = *o.counterexample;
      json mods = json::array(), maps = json::array(), groups = json::array();
      for (const auto& [name, m] : c.modules) {
        json mj{{"name", name}};
        mj.update(module_to_json(m));
        mods.push_back(std::move(mj));
      }
      for (const auto& [name, f] : c.maps)
        maps.push_back(json{{"name", name},
                            {"from_dim", f.domain().dim()},
                            {"to_dim", f.codomain().dim()},
                            {"matrix", matrix_json(f.matrix())}});
      for (const auto& [name, g] : c.groups) groups.push_back(json{{"name", name}, {"presentation", zmatrix_json(g)}});
      j["counterexample"] = json{{"max_dim", c.max_dim}, {"detail", c.detail}, {"modules", mods},
                                 {"maps", maps},         {"groups", groups}};
    }
    if (timing) j["seconds"] = o.seconds;
    failed += !o.passed();
    outcomes.push_back(std::move(j));
  }
  return json{{"tool", "stabcalc"},
              {"version", kVersion},
              {"schema", kReportSchema},
              {"kind", "check"},
              {"seed", r.options.seed},
              {"samples", r.options.samples},
              {"max_dim", r.options.max_dim},
              {"outcomes", outcomes},
              {"summary", {{"total", r.outcomes.size()}, {"passed", r.outcomes.size() - failed}, {"failed", failed}}}};
}

std::string to_text(const SuiteReport& r, bool timing) {
  const json j = to_json(r, timing);
  std::vector<std::vector<std::string>> rows{{"algebra", "property", "checked", "failed", "verdict"}};
  if (timing) rows[0].push_back("seconds");
  for (const auto& o : j["outcomes"]) {
    rows.push_back({o["algebra"], o["property"], std::to_string(o["checked"].get<std::size_t>()),
                    std::to_string(o["failed"].get<std::size_t>()), o["passed"].get<bool>() ? "pass" : "FAIL"});
    if (timing) rows.back().push_back(fixed(o["seconds"].get<double>()));
  }
  std::ostringstream out;
  out << "stabcalc " << kVersion << "  seed " << r.options.seed << "  samples " << r.options.samples
      << "  max_dim " << r.options.max_dim << "\n"
      << table(rows);
  for (const auto& o : j["outcomes"]) {
    if (!o.contains("counterexample")) continue;
    const json& c = o["counterexample"];
    out << "\ncounterexample for " << o["property"].get<std::string>() << " on " << o["algebra"].get<std::string>()
        << " (dim ≤ " << c["max_dim"] << "): " << c["detail"].get<std::string>() << "\n";
    for (const auto& m : c["modules"])
      out << "  module " << m["name"].get<std::string>() << ": " << m["side"].get<std::string>() << ", dim "
          << m["dim"] << ", actions " << m["actions"].dump() << "\n";
    for (const auto& f : c["maps"])
      out << "  map " << f["name"].get<std::string>() << ": " << f["matrix"].dump() << "\n";
    for (const auto& g : c["groups"])
      out << "  group " << g["name"].get<std::string>() << ": " << g["presentation"].dump() << "\n";
  }
  const json& s = j["summary"];
  out << s["total"] << " checks: " << s["passed"] << " passed, " << s["failed"] << " failed\n";
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace stabcalc::cli
