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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace stackelberg {

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailure = 1,
  kExitNotSolvable = 2,
  kExitInputError = 3,
};

/// Outcome of one CLI command. `status` is one of Solved, Violations,
/// NotSolvable, NotUnique, InputError. `text` is the display form
/// (4 decimals); `payload` carries full-precision values.
struct RunReport {
  std::string command;
  std::string spec_digest;
  std::string status;
  int exit_code = kExitPass;
  std::optional<int> stage;  // NotSolvable only
  std::string matrix;        // NotSolvable only
  nlohmann::json payload = nlohmann::json::object();
  std::string tool_version;
  std::string text;
};

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string tool_version();

RunReport run_validate(const std::string& path);

struct SolveOptions {
  std::string mode = "equilibrium";  // or "precommit"
  /// Optional override of the initial pair: k0 followed by x0.
  std::vector<double> at;
};

RunReport run_solve(const std::string& path, const SolveOptions& options);

struct CheckOptions {
  std::string which = "consistency";  // consistency | deviations | variation
  std::string mode = "equilibrium";   // consistency only
  std::uint64_t seed = 20260101;
  int probes = 20;
};

RunReport run_check(const std::string& path, const CheckOptions& options);

}  // namespace stackelberg
