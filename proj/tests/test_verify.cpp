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
#include "stackelberg/verify.hpp"
#include "test_support.hpp"

using namespace stackelberg;

namespace {

const std::string kData = STACKELBERG_DATA_DIR;

Perturbation random_perturbation(const GameSpec& s, std::mt19937_64& rng) {
  Perturbation p;
  p.t0 = s.t;
  p.x = s.x;
  p.v = Sequence::unstack(s.t, testsupport::normal_vector(rng, (s.N - s.t) * s.m2()),
                          s.m2());
  p.k = testsupport::uniform_int(rng, s.t, s.N - 1);
  p.eps = testsupport::normal_vector(rng, 1)(0);
  p.vtil = testsupport::normal_vector(rng, s.m2());
  return p;
}

}  // namespace

TEST(Verify, VariationFormulaMatchesDirectDifference) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const GameSpec s = testsupport::random_game(rng);
    const FollowerCoeffs fc = riccati(s);
    const Perturbation p = random_perturbation(s, rng);
    const VariationReport r = variation_formula(s, fc, p);
    EXPECT_LE(r.abs_error, 1e-8 * (1 + std::abs(r.lhs)));
    EXPECT_LE(r.rearranged_gap, 1e-10);
    EXPECT_GE(r.jhat, -1e-12);
  }
}

TEST(Verify, ZeroStepHasZeroVariation) {
  const GameSpec s = load_game_spec(kData + "/example2.json");
  const FollowerCoeffs fc = riccati(s);
  std::mt19937_64 rng(1);
  Perturbation p = random_perturbation(s, rng);
  p.eps = 0.0;
  EXPECT_DOUBLE_EQ(variation_direct(s, fc, p), 0.0);
}

TEST(Verify, LeaderDeviationsFromEquilibrium) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const GameSpec s = testsupport::random_game(rng);
    EquilibriumSolution sol;
    try {
      sol = solve_equilibrium(s, s.t, s.x);
    } catch (const NotSolvable&) {
      continue;
    }
    const FollowerCoeffs fc = riccati(s, s.t);
    EXPECT_LE(leader_deviation_test(s, fc, sol), 1e-8);

    EquilibriumSolution moved = sol;
    const int k = testsupport::uniform_int(rng, s.t, s.N - 1);
    moved.v_star[k] += Vec::Constant(s.m2(), 0.1);
    EXPECT_GT(leader_deviation_test(s, fc, moved), 0.0);
  }
}

TEST(Verify, ConsistentWhenFollowerCannotAct) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    GameSpec s = testsupport::random_game(rng);
    s.B1.setZero();
    const EquilibriumSolution sol = solve_equilibrium(s, s.t, s.x);
    const ConsistencyReport c = time_consistency_check(s, sol);
    EXPECT_TRUE(c.consistent) << c.max_dv;
    EXPECT_EQ(static_cast<int>(c.rows.size()), s.N - s.t - 1);
  }
}

TEST(Verify, ConsistencyRowsMatchManualResolve) {
  const GameSpec s = load_game_spec(kData + "/example2.json");
  const EquilibriumSolution sol = solve_equilibrium(s, 0, s.x);
  const ConsistencyReport c = time_consistency_check(s, sol);
  ASSERT_EQ(c.rows.size(), 2u);
  for (const auto& row : c.rows) {
    const EquilibriumSolution again = solve_equilibrium(s, row.tau, sol.X_star[row.tau]);
    EXPECT_DOUBLE_EQ(row.max_dv, sol.v_star.tail(row.tau).max_abs_diff(again.v_star));
    EXPECT_DOUBLE_EQ(row.max_du, sol.u_star.tail(row.tau).max_abs_diff(again.u_star));
    EXPECT_TRUE(row.solvable);
  }
}

TEST(Verify, BestResponseFixedPointIsTheEquilibrium) {
  for (const char* name : {"/example1.json", "/example2.json"}) {
    const GameSpec s = load_game_spec(kData + name);
    const FollowerCoeffs fc = riccati(s);
    const BestResponseResult br = best_response_iteration(s, fc, s.t, s.x);
    ASSERT_TRUE(br.converged) << name;
    const EquilibriumSolution sol = solve_equilibrium(s, s.t, s.x);
    EXPECT_LT(br.v.max_abs_diff(sol.v_star), 1e-9) << name;
  }
}
