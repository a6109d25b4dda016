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

#include <random>

#include <gtest/gtest.h>

#include "stackelberg/game_io.hpp"
#include "stackelberg/precommit.hpp"
#include "test_support.hpp"

using namespace stackelberg;

namespace {

const std::string kData = STACKELBERG_DATA_DIR;

}  // namespace

TEST(Precommit, ExampleOneValues) {
  const GameSpec s = load_game_spec(kData + "/example1.json");
  const PrecommitSolution p = solve_precommit(s, 0, s.x);
  const double u[] = {-0.4240, -0.1843, -0.0823};
  const double v[] = {-0.3363, 0.0465, 0.0626};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(p.u_hat[k](0), u[k], 1e-4);
    EXPECT_NEAR(p.v_hat[k](0), v[k], 1e-4);
  }
  EXPECT_NEAR(p.X_hat[1](0), 0.2397, 1e-4);
  EXPECT_LT(p.gradient_residual(), 1e-12);

  const PrecommitSolution q = solve_precommit(s, 1, p.X_hat[1]);
  EXPECT_NEAR(q.u_hat[1](0), -0.0942, 1e-4);
  EXPECT_NEAR(q.v_hat[1](0), -0.0856, 1e-4);
  EXPECT_NEAR(q.u_hat[2](0), -0.0342, 1e-4);
  EXPECT_NEAR(q.v_hat[2](0), 0.0086, 1e-4);
}

TEST(Precommit, ExampleOneIsInconsistent) {
  const GameSpec s = load_game_spec(kData + "/example1.json");
  const InconsistencyReport r = inconsistency_report(s);
  EXPECT_TRUE(r.inconsistent);
  EXPECT_GE(r.max_gap, 0.1);
  ASSERT_FALSE(r.rows.empty());
  EXPECT_EQ(r.rows.front().tau, 1);
}

TEST(Precommit, MatchesStackedOptimum) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const GameSpec s = testsupport::random_game(rng);
    const PrecommitSolution p = solve_precommit(s, s.t, s.x);
    const Vec ref = testsupport::precommit_oracle(s, s.t, s.x);
    EXPECT_LT((p.v_hat.stacked() - ref).cwiseAbs().maxCoeff(),
              1e-7 * (1 + ref.cwiseAbs().maxCoeff()));
    const Vec u_ref = testsupport::follower_oracle(s, s.t, s.x, ref);
    EXPECT_LT((p.u_hat.stacked() - u_ref).cwiseAbs().maxCoeff(),
              1e-7 * (1 + u_ref.cwiseAbs().maxCoeff()));
    EXPECT_NEAR(p.J2,
                testsupport::cost_oracle(s, 2, s.t, s.x, p.u_hat.stacked(),
                                         p.v_hat.stacked()),
                1e-9 * (1 + std::abs(p.J2)));
  }
}

TEST(Precommit, FlatLeaderCostIsNotUnique) {
  GameSpec s = load_game_spec(kData + "/example2.json");
  s.Q2.setZero();
  s.G2.setZero();
  s.R2.setZero();
  s.W2.setZero();
  EXPECT_THROW(solve_precommit(s, 0, s.x), NotUnique);
}
