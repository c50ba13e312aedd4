#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabcalc/check_suite.hpp"

namespace stabcalc::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

/// Bad input: schema violation, failed validation, unresolved reference.
/// The message starts with the offending key path.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& path, const std::string& msg) : std::runtime_error(path + ": " + msg) {}
};

struct Workspace {
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Module> modules;
  std::map<std::string, ModuleMap> maps;
  std::map<std::string, ZMatrix> groups;
  std::vector<json> tasks;
};

Workspace parse_workspace(const std::string& path);
Workspace parse_workspace(const json& doc);

struct TaskResult {
  std::string op;
  /// ok, error (recorded, run continues), route_failure, skipped.
  std::string status;
  json result = json::object();
  std::string error;
  double seconds = 0;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<TaskResult> tasks;

  bool route_failure() const;
  bool any_error() const;
};

/// Tasks run on `jobs` threads; results are assembled in task order, and a
/// route failure (or any error with strict) marks every later task skipped.
RunReport run_tasks(const Workspace& ws, std::uint64_t seed, bool strict, std::size_t jobs = 1);

json to_json(const RunReport& r, bool timing = false);
std::string to_text(const RunReport& r, bool timing = false);

json to_json(const SuiteReport& r, bool timing = false);
std::string to_text(const SuiteReport& r, bool timing = false);

/// Stable serialization (two-space indent, trailing newline).
std::string dump(const json& j);

json module_to_json(const Module& m);
std::string rational_str(const Rational& q);

}  // namespace stabcalc::cli
