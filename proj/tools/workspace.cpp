#include <fstream>
#include <regex>
#include <set>

#include "cli.hpp"
#include "stabcalc/presets.hpp"

namespace stabcalc::cli {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(at(path, key), "missing");
  return *it;
}

std::string string_field(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_string()) throw InputError(at(path, key), "expected a string");
  return v.get<std::string>();
}

std::size_t count_field(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError(at(path, key), "expected a count");
  return v.get<std::size_t>();
}

Rational parse_rational(const json& v, const std::string& path) {
  static const std::regex form(R"(-?[0-9]+(/[0-9]+)?)");
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw InputError(path, "expected a rational as a \"p/q\" string");
  const std::string s = v.get<std::string>();
  if (!std::regex_match(s, form)) throw InputError(path, "malformed rational '" + s + "'");
  Rational q;
  try {
    q = Rational(s);
  } catch (const std::exception&) {
    throw InputError(path, "malformed rational '" + s + "'");
  }
  if (q.get_den() == 0) throw InputError(path, "zero denominator");
  q.canonicalize();
  return q;
}

Integer parse_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    static const std::regex form(R"(-?[0-9]+)");
    const std::string s = v.get<std::string>();
    if (std::regex_match(s, form)) return Integer(s);
  }
  throw InputError(path, "expected an integer");
}

template <class T, class F>
Matrix<T> parse_matrix(const json& v, const std::string& path, F entry, std::optional<std::size_t> cols = {}) {
  if (!v.is_array()) throw InputError(path, "expected an array of rows");
  std::size_t c = cols.value_or(v.empty() ? 0 : (v[0].is_array() ? v[0].size() : 0));
  Matrix<T> m(v.size(), c);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = at(path, i);
    if (!v[i].is_array()) throw InputError(rp, "expected a row array");
    if (v[i].size() != c) throw InputError(rp, "row has " + std::to_string(v[i].size()) + " entries, expected " +
                                                   std::to_string(c));
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(v[i][j], at(rp, j));
  }
  return m;
}

QMatrix parse_qmatrix(const json& v, const std::string& path, std::size_t rows, std::size_t cols) {
  QMatrix m = parse_matrix<Rational>(v, path, parse_rational, cols);
  if (m.rows() != rows) throw InputError(path, "expected " + std::to_string(rows) + " rows");
  return m;
}

ZMatrix parse_zmatrix(const json& v, const std::string& path) {
  return parse_matrix<Integer>(v, path, parse_integer);
}

Side parse_side(const json& obj, const std::string& path) {
  const std::string s = string_field(obj, path, "side");
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw InputError(at(path, "side"), "expected \"left\" or \"right\"");
}

AlgebraPtr parse_preset_algebra(const json& p, const std::string& path) {
  const std::string kind = string_field(p, path, "kind");
  if (kind == "truncated_polynomial") {
    const std::size_t n = count_field(p, path, "n");
    if (n == 0) throw InputError(at(path, "n"), "must be at least 1");
    return truncated_polynomial(n);
  }
  if (kind == "upper_triangular_2") return upper_triangular_2();
  if (kind == "ground_field") return ground_field();
  if (kind == "product") {
    const json& fs = field(p, path, "factors");
    if (!fs.is_array() || fs.size() != 2) throw InputError(at(path, "factors"), "expected two presets");
    return product_algebra(parse_preset_algebra(fs[0], at(at(path, "factors"), 0)),
                           parse_preset_algebra(fs[1], at(at(path, "factors"), 1)));
  }
  throw InputError(at(path, "kind"), "unknown preset '" + kind + "'");
}

AlgebraPtr parse_algebra(const json& a, const std::string& path, const std::string& name) {
  if (a.contains("preset")) return parse_preset_algebra(a["preset"], at(path, "preset"));
  const json& cube = field(a, path, "constants");
  const std::string cp = at(path, "constants");
  if (!cube.is_array() || cube.empty()) throw InputError(cp, "expected a nonempty d×d×d array");
  const std::size_t d = cube.size();
  std::vector<std::vector<std::vector<Rational>>> c(d);
  for (std::size_t i = 0; i < d; ++i) {
    QMatrix m = parse_qmatrix(cube[i], at(cp, i), d, d);
    c[i].assign(d, std::vector<Rational>(d));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) c[i][j][k] = m(j, k);
  }
  const json& u = field(a, path, "unit");
  if (!u.is_array() || u.size() != d) throw InputError(at(path, "unit"), "expected " + std::to_string(d) + " entries");
  std::vector<Rational> unit;
  for (std::size_t i = 0; i < d; ++i) unit.push_back(parse_rational(u[i], at(at(path, "unit"), i)));
  try {
    return validate_algebra(name, c, unit);
  } catch (const AlgebraError& e) {
    throw InputError(path, e.what());
  }
}

Module parse_module(const json& m, const std::string& path, const Workspace& ws) {
  const std::string an = string_field(m, path, "algebra");
  auto it = ws.algebras.find(an);
  if (it == ws.algebras.end()) throw InputError(at(path, "algebra"), "unknown algebra '" + an + "'");
  const AlgebraPtr& alg = it->second;
  const Side side = parse_side(m, path);
  try {
    if (m.contains("preset")) {
      const std::string p = string_field(m, path, "preset");
      if (p == "regular") return preset_regular(alg, side);
      if (p == "dual_regular") return preset_dual_regular(alg, side);
      if (p == "simple_top") {
        const std::size_t index = m.contains("index") ? count_field(m, path, "index") : 0;
        if (index >= indecomposable_projectives(alg, side).size())
          throw InputError(at(path, "index"), "no simple with index " + std::to_string(index));
        return preset_simple_top(alg, side, index);
      }
      if (p == "radical_layer") return preset_radical_layer(alg, side, count_field(m, path, "j"));
      if (p == "radical_power") return preset_radical_power(alg, side, count_field(m, path, "j"));
      throw InputError(at(path, "preset"), "unknown module preset '" + p + "'");
    }
    const json& acts = field(m, path, "actions");
    const std::string ap = at(path, "actions");
    if (!acts.is_array() || acts.size() != alg->dim())
      throw InputError(ap, "expected one matrix per basis element (" + std::to_string(alg->dim()) + ")");
    const std::size_t n = acts[0].size();
    std::vector<QMatrix> action;
    for (std::size_t i = 0; i < acts.size(); ++i) action.push_back(parse_qmatrix(acts[i], at(ap, i), n, n));
    return Module::create(alg, side, std::move(action));
  } catch (const ModuleError& e) {
    throw InputError(path, e.what());
  }
}

const std::set<std::string>& known_ops() {
  static const std::set<std::string> ops{"tensor",      "tensor_stab", "torsion",        "tor",    "ext",
                                         "rn_tensor",   "transpose",   "stable_hom",     "duality", "splice",
                                         "half_exactness", "defect",   "eilenberg_watts", "ext1"};
  return ops;
}

void check_module_ref(const json& t, const std::string& path, const std::string& key, const Workspace& ws) {
  const std::string name = string_field(t, path, key);
  if (ws.modules.count(name) || ws.algebras.count(name)) return;
  throw InputError(at(path, key), "unknown module '" + name + "'");
}

void check_group_ref(const json& t, const std::string& path, const std::string& key, const Workspace& ws) {
  const json& v = field(t, path, key);
  if (v.is_array()) {
    parse_zmatrix(v, at(path, key));
    return;
  }
  if (!v.is_string() || !ws.groups.count(v.get<std::string>()))
    throw InputError(at(path, key), "expected a presentation matrix or a group name");
}

void validate_task(const json& t, const std::string& path, const Workspace& ws) {
  const std::string op = string_field(t, path, "op");
  if (!known_ops().count(op)) throw InputError(at(path, "op"), "unknown op '" + op + "'");
  const bool z = t.contains("backend") && t["backend"] == "Z";
  if (t.contains("backend") && !z && t["backend"] != "Q")
    throw InputError(at(path, "backend"), "expected \"Q\" or \"Z\"");
  if (z) {
    if (op == "torsion" || op == "transpose") {
      if (t.contains("presentation")) check_group_ref(t, path, "presentation", ws);
      else check_group_ref(t, path, "A", ws);
    } else if (op == "tensor_stab") {
      check_group_ref(t, path, "A", ws);
      check_group_ref(t, path, "B", ws);
    } else if (op == "ext1") {
      check_group_ref(t, path, "M", ws);
      check_group_ref(t, path, "N", ws);
    } else {
      throw InputError(at(path, "op"), "op '" + op + "' is not available over Z");
    }
    return;
  }
  if (op == "ext1") throw InputError(at(path, "op"), "ext1 is a Z backend op; use ext with n = 1");
  static const std::map<std::string, std::vector<std::string>> module_fields{
      {"tensor", {"A", "B"}},    {"tensor_stab", {"A", "B"}}, {"torsion", {"A"}},      {"tor", {"A", "B"}},
      {"ext", {"M", "N"}},       {"rn_tensor", {"A", "B"}},   {"transpose", {"A"}},    {"stable_hom", {"B", "C"}},
      {"duality", {"A", "B"}},   {"splice", {"A"}},           {"half_exactness", {"A"}}, {"defect", {}},
      {"eilenberg_watts", {}}};
  for (const auto& k : module_fields.at(op)) check_module_ref(t, path, k, ws);
  if (op == "splice" || op == "half_exactness") {
    if (t.contains("maps")) {
      const json& m = t["maps"];
      if (!m.is_array() || m.size() != 2) throw InputError(at(path, "maps"), "expected [f, g]");
      for (std::size_t i = 0; i < 2; ++i)
        if (!m[i].is_string() || !ws.maps.count(m[i].get<std::string>()))
          throw InputError(at(at(path, "maps"), i), "unknown map");
    } else {
      const json& s = field(t, path, "ses");
      if (!s.is_array() || s.size() != 3) throw InputError(at(path, "ses"), "expected three module names");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!s[i].is_string()) throw InputError(at(at(path, "ses"), i), "expected a module name");
        const std::string n = s[i].get<std::string>();
        if (!ws.modules.count(n) && !ws.algebras.count(n))
          throw InputError(at(at(path, "ses"), i), "unknown module '" + n + "'");
      }
    }
  }
  if (op == "defect" || op == "eilenberg_watts") {
    const std::string f = string_field(t, path, "f");
    if (!ws.maps.count(f)) throw InputError(at(path, "f"), "unknown map '" + f + "'");
  }
  for (const char* k : {"n", "tor_rows", "sigma_rows", "random_modules", "max_dim"})
    if (t.contains(k)) count_field(t, path, k);
  if (t.contains("route")) {
    const std::string r = string_field(t, path, "route");
    if (r != "all" && r != "definition" && r != "transpose" && r != "satellite_of_tor" &&
        r != "satellite-of-tor")
      throw InputError(at(path, "route"), "unknown route '" + r + "'");
  }
  if (t.contains("mode")) {
    const std::string m = string_field(t, path, "mode");
    if (m != "minimal" && m != "free") throw InputError(at(path, "mode"), "expected \"minimal\" or \"free\"");
  }
  if (op == "stable_hom" && t.contains("modulo")) {
    const std::string m = string_field(t, path, "modulo");
    if (m != "injectives" && m != "projectives")
      throw InputError(at(path, "modulo"), "expected \"injectives\" or \"projectives\"");
  }
}

}  // namespace

Workspace parse_workspace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open workspace");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_workspace(doc);
}

Workspace parse_workspace(const json& doc) {
  if (!doc.is_object()) throw InputError("$", "workspace must be a JSON object");
  for (const auto& [k, v] : doc.items())
    if (k != "algebras" && k != "modules" && k != "maps" && k != "groups" && k != "tasks" && k != "version")
      throw InputError("$." + k, "unknown key");
  Workspace ws;
  std::set<std::string> names;
  auto list = [&](const char* key) -> const json& {
    static const json empty = json::array();
    if (!doc.contains(key)) return empty;
    if (!doc[key].is_array()) throw InputError(std::string("$.") + key, "expected an array");
    return doc[key];
  };
  auto claim = [&](const json& item, const std::string& path) {
    std::string n = string_field(item, path, "name");
    if (n.empty()) throw InputError(at(path, "name"), "empty name");
    if (!names.insert(n).second) throw InputError(at(path, "name"), "duplicate name '" + n + "'");
    return n;
  };

  const json& algs = list("algebras");
  for (std::size_t i = 0; i < algs.size(); ++i) {
    const std::string p = at("$.algebras", i);
    std::string n = claim(algs[i], p);
    ws.algebras.emplace(n, parse_algebra(algs[i], p, n));
  }
  const json& mods = list("modules");
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const std::string p = at("$.modules", i);
    std::string n = claim(mods[i], p);
    ws.modules.emplace(n, parse_module(mods[i], p, ws));
  }
  auto module_named = [&](const std::string& name, const std::string& path) {
    auto it = ws.modules.find(name);
    if (it == ws.modules.end()) throw InputError(path, "unknown module '" + name + "'");
    return it->second;
  };
  const json& maps = list("maps");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string p = at("$.maps", i);
    std::string n = claim(maps[i], p);
    Module from = module_named(string_field(maps[i], p, "from"), at(p, "from"));
    Module to = module_named(string_field(maps[i], p, "to"), at(p, "to"));
    QMatrix m = parse_qmatrix(field(maps[i], p, "matrix"), at(p, "matrix"), to.dim(), from.dim());
    try {
      ws.maps.emplace(n, ModuleMap::create(from, to, m));
    } catch (const ModuleError& e) {
      throw InputError(p, e.what());
    }
  }
  const json& groups = list("groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string p = at("$.groups", i);
    std::string n = claim(groups[i], p);
    ws.groups.emplace(n, parse_zmatrix(field(groups[i], p, "presentation"), at(p, "presentation")));
  }
  const json& tasks = list("tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    validate_task(tasks[i], at("$.tasks", i), ws);
    ws.tasks.push_back(tasks[i]);
  }
  return ws;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

json module_to_json(const Module& m) {
  json acts = json::array();
  for (const auto& a : m.actions()) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(rational_str(a(r, c)));
      rows.push_back(std::move(row));
    }
    acts.push_back(std::move(rows));
  }
  return json{{"algebra", m.algebra()->name()},
              {"side", m.side() == Side::Left ? "left" : "right"},
              {"dim", m.dim()},
              {"actions", std::move(acts)}};
}

}  // namespace stabcalc::cli
