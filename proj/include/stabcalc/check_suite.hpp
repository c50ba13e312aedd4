#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabcalc/fd_algebra.hpp"
#include "stabcalc/zmod.hpp"

namespace stabcalc {

/// Smallest failing input found for a property, with the inputs themselves.
struct Counterexample {
  std::size_t max_dim = 0;  // dimension bound the failing sample was drawn with
  std::string detail;
  std::vector<std::pair<std::string, Module>> modules;
  std::vector<std::pair<std::string, ModuleMap>> maps;
  std::vector<std::pair<std::string, ZMatrix>> groups;  // presentations over Z
};

struct PropertyOutcome {
  std::string property;
  std::string algebra;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<Counterexample> counterexample;
  double seconds = 0;  // wall time, not part of deterministic output

  bool passed() const { return failed == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 25;
  std::size_t max_dim = 4;
  std::size_t jobs = 1;
  /// Restrict to these property / algebra names (empty = all).
  std::vector<std::string> properties;
  std::vector<std::string> algebras;
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<PropertyOutcome> outcomes;  // in (algebra, property) order

  bool all_passed() const;
};

/// Hard limit on max_dim.
constexpr std::size_t kMaxSuiteDim = 8;

/// Preset algebras of the suite in report order, "Z" last.
std::vector<std::string> suite_algebras();
/// Property names applicable to an algebra name ("Z" has its own).
std::vector<std::string> suite_properties(const std::string& algebra);
/// Resolves a suite algebra name to its preset ("Z" is not an algebra here).
AlgebraPtr suite_algebra(const std::string& name);

/// Runs one property on `samples` samples; throws std::invalid_argument for
/// unknown names or bad options.
PropertyOutcome run_property(const std::string& property, const std::string& algebra, std::uint64_t seed,
                             std::size_t samples, std::size_t max_dim);

/// Every selected property on every selected algebra. Outcome order does
/// not depend on `jobs`.
SuiteReport check_suite(const SuiteOptions& options);

}  // namespace stabcalc
