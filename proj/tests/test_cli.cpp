#include "cli.hpp"
#include "doctest.h"
#include "stabcalc/presets.hpp"

using namespace stabcalc;
using namespace stabcalc::cli;

namespace {

json base() {
  return json::parse(R"({
    "algebras": [{"name": "L", "preset": {"kind": "truncated_polynomial", "n": 2}}],
    "modules": [{"name": "k", "preset": "simple_top", "algebra": "L", "side": "right"}]
  })");
}

json with_tasks(json ws, const char* tasks) {
  ws["tasks"] = json::parse(tasks);
  return ws;
}

std::string input_error(const json& doc) {
  try {
    parse_workspace(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("workspace parsing") {
  Workspace ws = parse_workspace(base());
  CHECK(ws.algebras.at("L")->dim() == 2);
  CHECK(ws.modules.at("k").dim() == 1);
  CHECK(ws.modules.at("k").side() == Side::Right);

  json doc = base();
  doc["algebras"].push_back(json::parse(R"({"name": "T", "preset": {"kind": "product", "factors": [
      {"kind": "ground_field"}, {"kind": "upper_triangular_2"}]}})"));
  doc["modules"].push_back(json::parse(R"({"name": "D", "preset": "dual_regular", "algebra": "T", "side": "left"})"));
  doc["modules"].push_back(json::parse(R"({"name": "R", "preset": "radical_layer", "j": 1, "algebra": "L", "side": "left"})"));
  doc["modules"].push_back(json::parse(R"({"name": "kl", "algebra": "L", "side": "left",
      "actions": [[["1"]], [["0"]]]})"));
  doc["maps"] = json::parse(R"([{"name": "f", "from": "kl", "to": "kl", "matrix": [["-3/6"]]}])");
  doc["groups"] = json::parse(R"([{"name": "G", "presentation": [[4, 0], [0, "6"]]}])");
  ws = parse_workspace(doc);
  CHECK(ws.algebras.at("T")->dim() == 4);
  CHECK(ws.modules.at("D").dim() == 4);
  CHECK(ws.modules.at("R").dim() == 1);
  CHECK(ws.maps.at("f").matrix()(0, 0) == Rational(-1, 2));
  CHECK(ZFGModule(ws.groups.at("G")).str() == "Z/2 + Z/12");
}

TEST_CASE("workspace errors name the key path") {
  // Unit e_0 with e_1 e_1 = e_2 and e_2 e_1 = e_1, so (e_1 e_1) e_1 != e_1 (e_1 e_1).
  json bad = json::parse(R"({"algebras": [{"name": "N", "unit": [1, 0, 0], "constants": [
      [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
      [[0, 0, 1], [0, 1, 0], [0, 0, 0]]]}]})");
  std::string e = input_error(bad);
  CHECK(contains(e, "$.algebras[0]"));
  CHECK(contains(e, "triple"));

  e = input_error(with_tasks(base(), R"([{"op": "tensor_stab", "A": "k", "B": "kk"}])"));
  CHECK(contains(e, "$.tasks[0].B"));
  e = input_error(with_tasks(base(), R"([{"op": "tensor"}, {"op": "frobnicate"}])"));
  CHECK(contains(e, "$.tasks[0].A"));
  e = input_error(with_tasks(base(), R"([{"op": "tensor", "A": "k", "B": "L"}, {"op": "frobnicate"}])"));
  CHECK(contains(e, "$.tasks[1].op"));

  json doc = base();
  doc["modules"].push_back(json::parse(R"({"name": "k", "preset": "regular", "algebra": "L", "side": "left"})"));
  CHECK(contains(input_error(doc), "duplicate"));

  doc = base();
  doc["algebras"][0] = json::parse(R"({"name": "Q", "constants": [[[1.0]]], "unit": [1]})");
  CHECK(contains(input_error(doc), "$.algebras[0].constants[0][0][0]"));
  doc["algebras"][0] = json::parse(R"({"name": "Q", "constants": [[["1/0"]]], "unit": [1]})");
  CHECK(contains(input_error(doc), "$.algebras[0].constants[0][0][0]"));

  doc = base();
  doc["modules"].push_back(json::parse(R"({"name": "m", "algebra": "L", "side": "left",
      "actions": [[["1"]], [["1"]]]})"));
  CHECK(contains(input_error(doc), "$.modules[1]"));

  doc = base();
  doc["modules"].push_back(json::parse(R"({"name": "P", "preset": "regular", "algebra": "L", "side": "right"})"));
  doc["maps"] = json::parse(R"([{"name": "f", "from": "k", "to": "P", "matrix": [[1], [0]]}])");
  CHECK(contains(input_error(doc), "$.maps[0]"));
  doc["maps"] = json::parse(R"([{"name": "f", "from": "k", "to": "P", "matrix": [[1]]}])");
  CHECK(contains(input_error(doc), "$.maps[0].matrix"));

  CHECK(contains(input_error(json::parse(R"({"algebra": []})")), "$.algebra"));
  CHECK(contains(input_error(with_tasks(base(), R"([{"op": "ext1", "M": "k", "N": "k"}])")), "$.tasks[0].op"));
}

TEST_CASE("run examples") {
  Workspace ws = parse_workspace(with_tasks(base(), R"([
      {"op": "tensor_stab", "A": "k", "B": "k", "route": "all"},
      {"op": "splice", "A": "k", "ses": ["k", "L", "k"], "tor_rows": 1, "sigma_rows": 3},
      {"op": "torsion", "backend": "Z", "presentation": [[6, 0], [0, 0]]},
      {"op": "tensor_stab", "A": "k", "B": "L", "route": "definition", "mode": "free"},
      {"op": "ext1", "backend": "Z", "M": [[4]], "N": [[6]]}
  ])"));
  RunReport r = run_tasks(ws, 42, false);
  REQUIRE(r.tasks.size() == 5);
  for (const auto& t : r.tasks) CHECK(t.status == "ok");
  const json& s = r.tasks[0].result;
  CHECK(s["dim"] == 1);
  CHECK(s["routes"].size() == 3);
  for (const auto& [route, d] : s["routes"].items()) CHECK(d == 1);
  CHECK(r.tasks[1].result["all_exact"] == true);
  CHECK(r.tasks[1].result["terms"].size() == 12);
  CHECK(r.tasks[1].result["verdicts"].size() == 10);
  CHECK(r.tasks[2].result["group"] == "Z/6");
  CHECK(r.tasks[3].result["dim"] == 0);
  CHECK(r.tasks[4].result["group"] == "Z/2");
  CHECK_FALSE(r.route_failure());

  const std::string text = to_text(r);
  CHECK(contains(text, "group=Z/6"));
  CHECK(contains(text, "all_exact=true"));
  CHECK(contains(dump(to_json(r)), "\"group\": \"Z/6\""));
  CHECK_FALSE(contains(dump(to_json(r)), "seconds"));
  CHECK(contains(dump(to_json(r, true)), "seconds"));
}

TEST_CASE("text table carries the JSON numbers") {
  Workspace ws = parse_workspace(with_tasks(base(), R"([
      {"op": "tor", "A": "k", "B": "k", "n": 2}, {"op": "rn_tensor", "A": "k", "B": "k", "n": 3},
      {"op": "stable_hom", "B": "k", "C": "L", "modulo": "projectives"}, {"op": "transpose", "A": "k"}])"));
  RunReport r = run_tasks(ws, 1, false);
  const std::string text = to_text(r);
  for (const auto& t : to_json(r)["tasks"])
    for (const auto& [key, v] : t["result"].items())
      if (!v.is_structured()) CHECK(contains(text, key + "=" + (v.is_string() ? v.get<std::string>() : v.dump())));
}

TEST_CASE("errors, strict mode and skipping") {
  // B′ = Λ cannot sit inside k.
  const char* tasks = R"([
      {"op": "tensor", "A": "k", "B": "L"},
      {"op": "splice", "A": "k", "ses": ["L", "k", "k"]},
      {"op": "torsion", "A": "k"}])";
  Workspace ws = parse_workspace(with_tasks(base(), tasks));
  RunReport loose = run_tasks(ws, 42, false);
  CHECK(loose.tasks[0].status == "ok");
  CHECK(loose.tasks[1].status == "error");
  CHECK_FALSE(loose.tasks[1].error.empty());
  CHECK(loose.tasks[2].status == "ok");
  CHECK(loose.any_error());

  RunReport strict = run_tasks(ws, 42, true, 3);
  CHECK(strict.tasks[1].status == "error");
  CHECK(strict.tasks[2].status == "skipped");
  CHECK(to_json(strict)["summary"]["skipped"] == 1);
}

TEST_CASE("reports do not depend on jobs") {
  Workspace ws = parse_workspace(with_tasks(base(), R"([
      {"op": "tensor_stab", "A": "k", "B": "k"}, {"op": "duality", "A": "k", "B": "k"},
      {"op": "half_exactness", "A": "k", "ses": ["k", "L", "k"]},
      {"op": "splice", "A": "k", "ses": ["k", "L", "k"]}, {"op": "torsion", "A": "L"},
      {"op": "transpose", "backend": "Z", "A": [[2, 4], [6, 8]]}])"));
  const std::string one = dump(to_json(run_tasks(ws, 9, false, 1)));
  CHECK(one == dump(to_json(run_tasks(ws, 9, false, 4))));
  CHECK(one == dump(to_json(run_tasks(ws, 9, false, 1))));
}

TEST_CASE("fp functor tasks") {
  json doc = base();
  doc["modules"].push_back(json::parse(R"({"name": "P", "preset": "regular", "algebra": "L", "side": "left"})"));
  doc["modules"].push_back(json::parse(R"({"name": "kl", "preset": "simple_top", "algebra": "L", "side": "left"})"));
  doc["maps"] = json::parse(R"([{"name": "x", "from": "P", "to": "P", "matrix": [[0, 0], [1, 0]]},
                                {"name": "top", "from": "P", "to": "kl", "matrix": [[1, 0]]}])");
  doc["tasks"] = json::parse(R"([{"op": "defect", "f": "x"}, {"op": "eilenberg_watts", "f": "x"},
                                 {"op": "defect", "f": "top"}])");
  RunReport r = run_tasks(parse_workspace(doc), 42, false);
  for (const auto& t : r.tasks) REQUIRE(t.status == "ok");
  const json& d = r.tasks[0].result;
  CHECK(d["defect_dim"] == 1);
  CHECK(d["stable"] == false);
  CHECK(d["vanishes_on_injectives"] == false);
  CHECK(d["four_term_exact"] == true);
  CHECK(d["r0_matches_hom_defect"] == true);
  // f between projectives: the counit is an isomorphism everywhere.
  const json& w = r.tasks[1].result;
  CHECK(w["f_lambda_dim"] == 1);
  CHECK(w["iso_count"] == w["battery"]);
  CHECK(r.tasks[2].result["defect_dim"] == 1);
}

TEST_CASE("suite report serialization") {
  SuiteOptions o;
  o.samples = 2;
  o.max_dim = 3;
  o.algebras = {"Q[x]/(x^2)", "Z"};
  o.properties = {"vanishing", "z_torsion"};
  SuiteReport r = check_suite(o);
  REQUIRE(r.outcomes.size() == 2);
  CHECK(r.all_passed());
  const std::string j = dump(to_json(r));
  CHECK(j == dump(to_json(check_suite(o))));
  CHECK_FALSE(contains(j, "seconds"));

  // A forged failure shows how counterexamples are dumped.
  AlgebraPtr a = truncated_polynomial(2);
  Counterexample c{2, "dims differ", {{"A", preset_regular(a, Side::Right)}}, {}, {{"G", ZMatrix{{6}}}}};
  r.outcomes[0].failed = 1;
  r.outcomes[0].counterexample = c;
  json out = to_json(r);
  CHECK(out["summary"]["failed"] == 1);
  const json& ce = out["outcomes"][0]["counterexample"];
  CHECK(ce["modules"][0]["name"] == "A");
  CHECK(ce["modules"][0]["actions"][1] == json::parse(R"([["0", "0"], ["1", "0"]])"));
  CHECK(ce["groups"][0]["presentation"] == json::parse(R"([["6"]])"));
  CHECK(contains(to_text(r), "counterexample for vanishing"));
}
