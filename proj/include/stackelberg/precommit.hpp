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

#include <stdexcept>
#include <vector>

#include "stackelberg/follower.hpp"

namespace stackelberg {

/// The leader's reduced quadratic is singular: no unique precommitted
/// solution exists.
class NotUnique : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classic open-loop Stackelberg solution from a fixed initial pair.
struct PrecommitSolution {
  int k0 = 0;
  Sequence u_hat;  // k0..N-1
  Sequence v_hat;  // k0..N-1
  Sequence X_hat;  // k0..N
  double J1 = 0.0;
  double J2 = 0.0;
  // J2(k0, x0; alpha(x0, v), v) = v' quad v + 2 lin' v + constant on the
  // stacked v.
  Mat quad;
  Vec lin;
  double constant = 0.0;

  /// ||quad v_hat + lin||_inf.
  double gradient_residual() const;
};

/// Minimizes the leader's cost over all of v, anticipating the follower's
/// response. Throws NotUnique when the reduced quadratic is not positive
/// definite and NotSolvable when the follower's Riccati recursion fails.
PrecommitSolution solve_precommit(const GameSpec& spec, int k0, const Vec& x0);
PrecommitSolution solve_precommit(const GameSpec& spec, const FollowerCoeffs& fc,
                                  int k0, const Vec& x0);

struct InconsistencyRow {
  int tau = 0;
  int k = 0;
  Vec v_initial;  // v_hat from (t, x) at stage k
  Vec v_resolved; // v_hat from (tau, X_hat_tau) at stage k
  double gap = 0.0;
};

struct InconsistencyReport {
  std::vector<InconsistencyRow> rows;
  double max_gap = 0.0;
  bool inconsistent = false;  // some gap > threshold
  double threshold = 1e-6;
};

/// Re-solves the precommitted problem at every (tau, X_hat_tau), tau > t,
/// and compares the plans stage by stage.
InconsistencyReport inconsistency_report(const GameSpec& spec);

}  // namespace stackelberg
