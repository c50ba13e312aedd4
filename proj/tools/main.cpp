#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

using namespace stabcalc;
using namespace stabcalc::cli;

namespace {

constexpr int kOk = 0, kFailure = 1, kInputError = 2;

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

// Text table on stdout, JSON to --out; --json puts the JSON on stdout instead.
int emit(const json& j, const std::string& text, const std::string& out_path, bool as_json) {
  std::cout << (as_json ? dump(j) : text);
  if (!out_path.empty() && !write_file(out_path, dump(j))) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact injective stabilization calculator for finite-dimensional algebras"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string ws_path, out_path;
  std::uint64_t seed = 42;
  bool strict = false, as_json = false, timing = false;
  std::size_t jobs = 1;

  auto* run = app.add_subcommand("run", "Run the tasks of a workspace file");
  run->add_option("workspace", ws_path, "Workspace JSON")->required();
  run->add_option("--out", out_path, "Write the JSON report here");
  run->add_option("--seed", seed, "Seed for randomized steps");
  run->add_flag("--strict", strict, "Stop at the first task error");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--json", as_json, "Print JSON instead of the table");
  run->add_flag("--timing", timing, "Include wall times (not deterministic)");

  SuiteOptions opts;
  auto* check = app.add_subcommand("check", "Run the randomized property suite");
  check->add_option("--seed", opts.seed, "Suite seed");
  check->add_option("--samples", opts.samples, "Samples per property and algebra");
  check->add_option("--max-dim", opts.max_dim, "Largest sampled module dimension (at most 8)");
  check->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  check->add_option("--property", opts.properties, "Restrict to these properties");
  check->add_option("--algebra", opts.algebras, "Restrict to these algebras");
  check->add_option("--out", out_path, "Write the JSON report here");
  check->add_flag("--json", as_json, "Print JSON instead of the table");
  check->add_flag("--timing", timing, "Include wall times (not deterministic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*run) {
    Workspace ws;
    try {
      ws = parse_workspace(ws_path);
    } catch (const InputError& e) {
      std::cerr << "input error: " << e.what() << "\n";
      return kInputError;
    }
    RunReport r = run_tasks(ws, seed, strict, jobs);
    if (int rc = emit(to_json(r, timing), to_text(r, timing), out_path, as_json)) return rc;
    if (r.route_failure() || (strict && r.any_error())) return kFailure;
    return kOk;
  }

  if (opts.samples == 0) {
    std::cerr << "usage error: --samples must be at least 1\n";
    return kInputError;
  }
  if (opts.max_dim == 0 || opts.max_dim > kMaxSuiteDim) {
    std::cerr << "usage error: --max-dim must be between 1 and " << kMaxSuiteDim << "\n";
    return kInputError;
  }
  for (const auto& p : opts.properties) {
    bool known = false;
    for (const auto& a : suite_algebras())
      for (const auto& q : suite_properties(a)) known = known || q == p;
    if (!known) {
      std::cerr << "usage error: unknown property '" << p << "'\n";
      return kInputError;
    }
  }
  SuiteReport r;
  try {
    r = check_suite(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kInputError;
  }
  if (int rc = emit(to_json(r, timing), to_text(r, timing), out_path, as_json)) return rc;
  return r.all_passed() ? kOk : kFailure;
}
