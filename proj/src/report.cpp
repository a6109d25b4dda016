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

#include "stackelberg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "stackelberg/equilibrium.hpp"
#include "stackelberg/follower.hpp"
#include "stackelberg/game_io.hpp"
#include "stackelberg/precommit.hpp"
#include "stackelberg/verify.hpp"

#ifndef STACKELBERG_VERSION
#define STACKELBERG_VERSION "0.0.0"
#endif

namespace stackelberg {

namespace {

using nlohmann::json;

constexpr double kDeviationTol = 1e-8;
constexpr double kStationaryTol = 1e-9;
constexpr double kRouteTol = 1e-8;
constexpr double kVariationTol = 1e-8;
constexpr double kRearrangedTol = 1e-10;
constexpr double kConsistencyTol = 1e-6;

std::string fixed4(double x) {
  char buf[64];
  // avoid "-0.0000"
  if (std::abs(x) < 5e-5) x = 0.0;
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string show(const Vec& v) {
  if (v.size() == 1) return fixed4(v(0));
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fixed4(v(i));
  }
  return s + ")";
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

RunReport start(const std::string& command) {
  RunReport r;
  r.command = command;
  r.tool_version = tool_version();
  r.status = "Solved";
  return r;
}

RunReport input_error(RunReport r, const std::string& message) {
  r.status = "InputError";
  r.exit_code = kExitInputError;
  r.payload = json{{"error", message}};
  r.text = "error: " + message + "\n";
  return r;
}

// Reads, parses and validates. Returns nullopt after filling r on failure.
std::optional<GameSpec> load(RunReport& r, const std::string& path,
                             bool require_valid) {
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const std::exception& e) {
    r = input_error(r, e.what());
    return std::nullopt;
  }
  r.spec_digest = fnv1a_hex(bytes);
  GameSpec spec;
  try {
    spec = parse_game_spec(bytes);
  } catch (const std::exception& e) {
    r = input_error(r, path + ": " + e.what());
    return std::nullopt;
  }
  if (require_valid) {
    const auto problems = validate(spec);
    if (!problems.empty()) {
      r.status = "Violations";
      r.exit_code = kExitInputError;
      r.payload = json{{"violations", problems}};
      r.text = "invalid game spec:\n";
      for (const auto& p : problems) r.text += "  " + p + "\n";
      return std::nullopt;
    }
  }
  return spec;
}

void not_solvable(RunReport& r, const NotSolvable& e) {
  r.status = "NotSolvable";
  r.exit_code = kExitNotSolvable;
  r.stage = e.stage();
  r.matrix = e.matrix();
  r.payload = json{{"stage", e.stage()}, {"matrix", e.matrix()}, {"error", e.what()}};
  r.text = std::string(e.what()) + "\n";
}

void not_unique(RunReport& r, const NotUnique& e) {
  r.status = "NotUnique";
  r.exit_code = kExitNotSolvable;
  r.payload = json{{"error", e.what()}};
  r.text = "not unique: " + std::string(e.what()) + "\n";
}

json stage_row(int k, const Vec& u, const Vec& v, const Vec& X, double residual) {
  return json{{"k", k},
              {"u", vector_to_json(u)},
              {"v", vector_to_json(v)},
              {"X", vector_to_json(X)},
              {"residual", residual}};
}

std::string stage_table(const Sequence& u, const Sequence& v, const Sequence& X,
                        const std::vector<double>& residual) {
  std::ostringstream os;
  os << "k\tu\tv\tX\tresidual\n";
  for (int k = u.start(); k < u.end(); ++k) {
    os << k << '\t' << show(u[k]) << '\t' << show(v[k]) << '\t' << show(X[k])
       << '\t' << sci(residual[k - u.start()]) << '\n';
  }
  const int N = X.end() - 1;
  os << N << "\t-\t-\t" << show(X[N]) << "\t-\n";
  return os.str();
}

// Resolves the (k0, x0) pair from the spec and an optional override.
bool initial_pair(RunReport& r, const GameSpec& spec, const std::vector<double>& at,
                  int& k0, Vec& x0) {
  k0 = spec.t;
  x0 = spec.x;
  if (at.empty()) return true;
  const double kd = at[0];
  if (kd != std::floor(kd) || kd < 0 || kd >= spec.N) {
    r = input_error(r, "--at: k0 must be an integer in [0, N)");
    return false;
  }
  if (static_cast<int>(at.size()) - 1 != spec.n()) {
    r = input_error(r, "--at: expected " + std::to_string(spec.n()) +
                           " state entries after k0");
    return false;
  }
  k0 = static_cast<int>(kd);
  x0 = Eigen::Map<const Vec>(at.data() + 1, spec.n());
  return true;
}

RunReport solve_precommit_report(RunReport r, const GameSpec& spec, int k0,
                                 const Vec& x0) {
  const PrecommitSolution s = solve_precommit(spec, k0, x0);
  const Vec grad = s.quad * s.v_hat.stacked() + s.lin;
  const int m2 = spec.m2();
  std::vector<double> residual;
  json stages = json::array();
  for (int k = k0; k < spec.N; ++k) {
    const double res = grad.segment((k - k0) * m2, m2).cwiseAbs().maxCoeff();
    residual.push_back(res);
    stages.push_back(stage_row(k, s.u_hat[k], s.v_hat[k], s.X_hat[k], res));
  }
  r.payload = json{{"mode", "precommit"},
                   {"k0", k0},
                   {"x0", vector_to_json(x0)},
                   {"stages", stages},
                   {"X_terminal", vector_to_json(s.X_hat[spec.N])},
                   {"J1", s.J1},
                   {"J2", s.J2}};
  r.text = "precommitted solution from k0 = " + std::to_string(k0) + "\n" +
           stage_table(s.u_hat, s.v_hat, s.X_hat, residual);
  return r;
}

RunReport solve_equilibrium_report(RunReport r, const GameSpec& spec, int k0,
                                   const Vec& x0) {
  const FollowerCoeffs fc = riccati(spec, k0);
  const LeaderCoeffs lc = leader_coeffs(spec, fc, k0);
  const TRecursion tr = t_recursion(lc, spec, fc);
  const EquilibriumSolution sol = solve_equilibrium(spec, fc, lc, tr, x0);
  const StationaryReport st = stationary_residual(spec, fc, lc, tr, sol);
  json stages = json::array();
  json diag = json::array();
  for (int k = k0; k < spec.N; ++k) {
    stages.push_back(stage_row(k, sol.u_star[k], sol.v_star[k], sol.X_star[k],
                               st.residual_T[k - k0]));
    const StageDiagnostics& d = sol.diagnostics[k - k0];
    diag.push_back(json{{"k", d.k},
                        {"cond_F", d.cond_F},
                        {"cond_coupling", d.cond_coupling},
                        {"coupling", matrix_to_json(sol.coupling[k - k0])}});
  }
  r.payload = json{{"mode", "equilibrium"},
                   {"k0", k0},
                   {"x0", vector_to_json(x0)},
                   {"stages", stages},
                   {"X_terminal", vector_to_json(sol.X_star[spec.N])},
                   {"J1", cost(spec, Player::kFollower, k0, x0, sol.u_star, sol.v_star)},
                   {"J2", cost(spec, Player::kLeader, k0, x0, sol.u_star, sol.v_star)},
                   {"max_residual", st.max_residual_T},
                   {"max_residual_raw", st.max_residual_raw},
                   {"route_gap", st.route_gap},
                   {"response_gap", sol.response_gap},
                   {"diagnostics", diag}};
  std::ostringstream os;
  os << "equilibrium solution from k0 = " << k0 << "\n"
     << stage_table(sol.u_star, sol.v_star, sol.X_star, st.residual_T);
  os << "\nk\tcond(F)\tcond(I-(C-BFD)T)\n";
  for (const auto& d : sol.diagnostics) {
    os << d.k << '\t' << sci(d.cond_F) << '\t' << sci(d.cond_coupling) << '\n';
  }
  r.text = os.str();
  return r;
}

// Consistency table rows shared by both modes.
json consistency_row(int tau, double max_dv, double max_du, const std::string& verdict) {
  return json{{"tau", tau}, {"max_dv", max_dv}, {"max_du", max_du}, {"verdict", verdict}};
}

RunReport check_consistency(RunReport r, const GameSpec& spec, const CheckOptions& o) {
  json rows = json::array();
  std::ostringstream os;
  os << "time consistency (" << o.mode << "), threshold " << sci(kConsistencyTol) << "\n";
  os << "tau\tmax|dv|\tmax|du|\tverdict\n";
  bool passed = true;
  double worst_dv = 0.0, worst_du = 0.0;
  auto add = [&](int tau, double dv, double du, const std::string& verdict) {
    rows.push_back(consistency_row(tau, dv, du, verdict));
    os << tau << '\t' << sci(dv) << '\t' << sci(du) << '\t' << verdict << '\n';
    worst_dv = std::max(worst_dv, dv);
    worst_du = std::max(worst_du, du);
    passed = passed && verdict == "consistent";
  };
  if (o.mode == "precommit") {
    const PrecommitSolution s = solve_precommit(spec, spec.t, spec.x);
    for (int tau = spec.t + 1; tau < spec.N; ++tau) {
      const PrecommitSolution again = solve_precommit(spec, tau, s.X_hat[tau]);
      const double dv = s.v_hat.tail(tau).max_abs_diff(again.v_hat);
      const double du = s.u_hat.tail(tau).max_abs_diff(again.u_hat);
      add(tau, dv, du,
          dv <= kConsistencyTol && du <= kConsistencyTol ? "consistent" : "inconsistent");
    }
  } else {
    const EquilibriumSolution sol = solve_equilibrium(spec, spec.t, spec.x);
    const ConsistencyReport c = time_consistency_check(spec, sol, kConsistencyTol);
    for (const auto& row : c.rows) {
      add(row.tau, row.max_dv, row.max_du,
          !row.solvable ? "not solvable" : row.consistent ? "consistent" : "inconsistent");
    }
  }
  r.payload = json{{"which", "consistency"},
                   {"mode", o.mode},
                   {"threshold", kConsistencyTol},
                   {"rows", rows},
                   {"max_dv", worst_dv},
                   {"max_du", worst_du},
                   {"passed", passed}};
  os << (passed ? "PASS" : "FAIL") << "\n";
  r.text = os.str();
  r.exit_code = passed ? kExitPass : kExitCheckFailure;
  return r;
}

RunReport check_deviations(RunReport r, const GameSpec& spec, const CheckOptions& o) {
  const FollowerCoeffs fc = riccati(spec, spec.t);
  const LeaderCoeffs lc = leader_coeffs(spec, fc, spec.t);
  const TRecursion tr = t_recursion(lc, spec, fc);
  const EquilibriumSolution sol = solve_equilibrium(spec, fc, lc, tr, spec.x);
  const StationaryReport st = stationary_residual(spec, fc, lc, tr, sol);
  ProbeOptions po;
  po.probes = o.probes;
  po.seed = o.seed;
  const double follower_gain =
      check_response_equilibrium(spec, spec.t, spec.x, sol.v_star, sol.u_star, po);
  const double leader_gain = leader_deviation_test(spec, fc, sol, po);
  const bool passed = follower_gain <= kDeviationTol && leader_gain <= kDeviationTol &&
                      st.max_residual_T <= kStationaryTol && st.route_gap <= kRouteTol;
  r.payload = json{{"which", "deviations"},
                   {"seed", o.seed},
                   {"probes", o.probes},
                   {"follower_gain", follower_gain},
                   {"leader_gain", leader_gain},
                   {"max_residual", st.max_residual_T},
                   {"max_residual_raw", st.max_residual_raw},
                   {"route_gap", st.route_gap},
                   {"passed", passed}};
  std::ostringstream os;
  os << "one-stage deviations from the equilibrium\n"
     << "follower max gain\t" << sci(follower_gain) << "\n"
     << "leader max gain\t" << sci(leader_gain) << "\n"
     << "stationary residual\t" << sci(st.max_residual_T) << "\n"
     << "adjoint route gap\t" << sci(st.route_gap) << "\n"
     << (passed ? "PASS" : "FAIL") << "\n";
  r.text = os.str();
  r.exit_code = passed ? kExitPass : kExitCheckFailure;
  return r;
}

RunReport check_variation(RunReport r, const GameSpec& spec, const CheckOptions& o) {
  const FollowerCoeffs fc = riccati(spec, spec.t);
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> stage(spec.t, spec.N - 1);
  auto draw = [&](int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
    return v;
  };
  json rows = json::array();
  double worst_rel = 0.0, worst_rearranged = 0.0;
  for (int p = 0; p < o.probes; ++p) {
    Perturbation pert;
    pert.t0 = spec.t;
    pert.x = spec.x;
    pert.v = Sequence::zeros(spec.t, spec.N - spec.t, spec.m2());
    for (int k = spec.t; k < spec.N; ++k) pert.v[k] = draw(spec.m2());
    pert.k = stage(rng);
    pert.eps = normal(rng);
    pert.vtil = draw(spec.m2());
    const VariationReport vr = variation_formula(spec, fc, pert);
    const double rel = vr.abs_error / (1.0 + std::abs(vr.lhs));
    worst_rel = std::max(worst_rel, rel);
    worst_rearranged = std::max(worst_rearranged, vr.rearranged_gap);
    rows.push_back(json{{"k", vr.k},
                        {"eps", vr.eps},
                        {"lhs", vr.lhs},
                        {"first_order", vr.first_order},
                        {"second_order", vr.second_order},
                        {"abs_error", vr.abs_error},
                        {"rearranged_gap", vr.rearranged_gap}});
  }
  const bool passed = worst_rel <= kVariationTol && worst_rearranged <= kRearrangedTol;
  r.payload = json{{"which", "variation"},
                   {"seed", o.seed},
                   {"probes", o.probes},
                   {"rows", rows},
                   {"max_relative_error", worst_rel},
                   {"max_rearranged_gap", worst_rearranged},
                   {"passed", passed}};
  std::ostringstream os;
  os << "leader cost variation, " << o.probes << " random perturbations\n"
     << "max |direct - formula| / (1 + |direct|)\t" << sci(worst_rel) << "\n"
     << "max coefficient gap\t" << sci(worst_rearranged) << "\n"
     << (passed ? "PASS" : "FAIL") << "\n";
  r.text = os.str();
  r.exit_code = passed ? kExitPass : kExitCheckFailure;
  return r;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string tool_version() { return STACKELBERG_VERSION; }

json report_to_json(const RunReport& r) {
  json j{{"command", r.command},
         {"spec_digest", r.spec_digest},
         {"status", r.status},
         {"exit_code", r.exit_code},
         {"payload", r.payload},
         {"tool_version", r.tool_version}};
  if (r.stage) {
    j["stage"] = *r.stage;
    j["matrix"] = r.matrix;
  }
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.spec_digest = j.at("spec_digest").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.payload = j.at("payload");
  r.tool_version = j.at("tool_version").get<std::string>();
  if (j.contains("stage")) {
    r.stage = j.at("stage").get<int>();
    r.matrix = j.at("matrix").get<std::string>();
  }
  return r;
}

RunReport run_validate(const std::string& path) {
  RunReport r = start("validate");
  const auto spec = load(r, path, false);
  if (!spec) return r;
  const auto problems = validate(*spec);
  r.payload = json{{"violations", problems}};
  if (problems.empty()) {
    r.text = "valid: n=" + std::to_string(spec->n()) + " m1=" + std::to_string(spec->m1()) +
             " m2=" + std::to_string(spec->m2()) + " N=" + std::to_string(spec->N) +
             " t=" + std::to_string(spec->t) + "\n";
  } else {
    r.status = "Violations";
    r.exit_code = kExitCheckFailure;
    r.text = "violations:\n";
    for (const auto& p : problems) r.text += "  " + p + "\n";
  }
  return r;
}

RunReport run_solve(const std::string& path, const SolveOptions& options) {
  RunReport r = start("solve");
  if (options.mode != "precommit" && options.mode != "equilibrium") {
    return input_error(r, "unknown mode '" + options.mode + "'");
  }
  const auto spec = load(r, path, true);
  if (!spec) return r;
  int k0 = 0;
  Vec x0;
  if (!initial_pair(r, *spec, options.at, k0, x0)) return r;
  try {
    if (options.mode == "precommit") return solve_precommit_report(r, *spec, k0, x0);
    return solve_equilibrium_report(r, *spec, k0, x0);
  } catch (const NotSolvable& e) {
    not_solvable(r, e);
  } catch (const NotUnique& e) {
    not_unique(r, e);
  }
  return r;
}

RunReport run_check(const std::string& path, const CheckOptions& options) {
  RunReport r = start("check");
  if (options.which != "consistency" && options.which != "deviations" &&
      options.which != "variation") {
    return input_error(r, "unknown check '" + options.which + "'");
  }
  if (options.mode != "precommit" && options.mode != "equilibrium") {
    return input_error(r, "unknown mode '" + options.mode + "'");
  }
  if (options.probes < 0) return input_error(r, "--probes must be >= 0");
  const auto spec = load(r, path, true);
  if (!spec) return r;
  try {
    if (options.which == "consistency") return check_consistency(r, *spec, options);
    if (options.which == "deviations") return check_deviations(r, *spec, options);
    return check_variation(r, *spec, options);
  } catch (const NotSolvable& e) {
    not_solvable(r, e);
  } catch (const NotUnique& e) {
    not_unique(r, e);
  }
  return r;
}

}  // namespace stackelberg
