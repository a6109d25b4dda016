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

#include "stackelberg/precommit.hpp"

#include <algorithm>

#include "stackelberg/probe.hpp"

namespace stackelberg {

double PrecommitSolution::gradient_residual() const {
  const Vec r = quad * v_hat.stacked() + lin;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

PrecommitSolution solve_precommit(const GameSpec& spec, int k0, const Vec& x0) {
  return solve_precommit(spec, riccati(spec, k0), k0, x0);
}

PrecommitSolution solve_precommit(const GameSpec& spec, const FollowerCoeffs& fc,
                                  int k0, const Vec& x0) {
  const int m2 = spec.m2();
  auto leader_cost = [&](const Vec& flat) {
    const Sequence v = Sequence::unstack(k0, flat, m2);
    const Trajectory tr = response(spec, fc, k0, x0, v);
    return cost(spec, Player::kLeader, k0, x0, tr.u, v);
  };

  const Vec origin = Vec::Zero(m2 * (spec.N - k0));
  const probe::QuadraticModel model = probe::quadratic_model(leader_cost, origin);

  PrecommitSolution sol;
  sol.k0 = k0;
  sol.quad = matkit::symmetrize(model.quad);
  sol.lin = model.lin;
  sol.constant = model.constant;
  if (!matkit::is_positive_definite(sol.quad, 1e-10)) {
    throw NotUnique("leader's reduced quadratic is singular");
  }
  const Vec v_flat = matkit::solve_linear(sol.quad, -sol.lin);
  sol.v_hat = Sequence::unstack(k0, v_flat, m2);
  const Trajectory tr = response(spec, fc, k0, x0, sol.v_hat);
  sol.u_hat = tr.u;
  sol.X_hat = tr.X;
  sol.J1 = cost(spec, Player::kFollower, k0, x0, sol.u_hat, sol.v_hat);
  sol.J2 = cost(spec, Player::kLeader, k0, x0, sol.u_hat, sol.v_hat);
  return sol;
}

InconsistencyReport inconsistency_report(const GameSpec& spec) {
  const FollowerCoeffs fc = riccati(spec);
  const PrecommitSolution initial = solve_precommit(spec, fc, spec.t, spec.x);
  InconsistencyReport report;
  for (int tau = spec.t + 1; tau < spec.N; ++tau) {
    const PrecommitSolution again =
        solve_precommit(spec, fc, tau, initial.X_hat[tau]);
    for (int k = tau; k < spec.N; ++k) {
      InconsistencyRow row;
      row.tau = tau;
      row.k = k;
      row.v_initial = initial.v_hat[k];
      row.v_resolved = again.v_hat[k];
      row.gap = (row.v_initial - row.v_resolved).norm();
      report.max_gap = std::max(report.max_gap, row.gap);
      report.rows.push_back(std::move(row));
    }
  }
  report.inconsistent = report.max_gap > report.threshold;
  return report;
}

}  // namespace stackelberg
