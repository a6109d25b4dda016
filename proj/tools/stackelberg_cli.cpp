/*
 Copyright 2026 The Stackelberg Solver Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stackelberg/report.hpp"

using stackelberg::RunReport;

namespace {

int finish(const RunReport& r, const std::string& out) {
  std::cout << r.text;
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return stackelberg::kExitInputError;
    }
    f << stackelberg::report_to_json(r).dump(2) << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon LQ Stackelberg game solver"};
  app.set_version_flag("--version", stackelberg::tool_version());
  app.require_subcommand(1);

  std::string out;
  app.add_option("--out", out, "Write the machine-readable report (JSON) here");

  std::string path;

  auto* validate = app.add_subcommand("validate", "Check a game spec file");
  validate->add_option("file", path, "Game spec (JSON)")->required();

  stackelberg::SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Compute a solution");
  solve->add_option("file", path, "Game spec (JSON)")->required();
  solve->add_option("--mode", solve_opts.mode, "precommit or equilibrium")
      ->check(CLI::IsMember({"precommit", "equilibrium"}));
  solve->add_option("--at", solve_opts.at, "Initial pair override: k0 x0...")
      ->expected(2, -1);

  stackelberg::CheckOptions check_opts;
  auto* check = app.add_subcommand("check", "Run a verifier");
  check->add_option("file", path, "Game spec (JSON)")->required();
  check->add_option("--which", check_opts.which, "consistency, deviations or variation")
      ->check(CLI::IsMember({"consistency", "deviations", "variation"}));
  check->add_option("--mode", check_opts.mode, "Solution used by the consistency check")
      ->check(CLI::IsMember({"precommit", "equilibrium"}));
  check->add_option("--seed", check_opts.seed, "Random seed");
  check->add_option("--probes", check_opts.probes, "Random probes per stage / perturbations")
      ->check(CLI::NonNegativeNumber);

  // --out is accepted after the subcommand as well.
  for (auto* sub : {validate, solve, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stackelberg::kExitInputError;
  }

  if (*validate) return finish(stackelberg::run_validate(path), out);
  if (*solve) return finish(stackelberg::run_solve(path, solve_opts), out);
  return finish(stackelberg::run_check(path, check_opts), out);
}
