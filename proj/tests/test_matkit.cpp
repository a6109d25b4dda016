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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "stackelberg/matkit.hpp"
#include "test_support.hpp"

using namespace stackelberg;

TEST(Matkit, SolveLinearRecoversKnownSolution) {
  Mat a(3, 3);
  a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  Vec x(3);
  x << 1, -2, 0.5;
  const Mat got = matkit::solve_linear(a, a * x);
  EXPECT_LT((got.col(0) - x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Matkit, SolveLinearRejectsSingular) {
  Mat a(2, 2);
  a << 1, 2, 2, 4;
  EXPECT_THROW(matkit::solve_linear(a, Mat::Identity(2, 2)), SingularMatrix);
}

TEST(Matkit, SolveLinearRejectsShapes) {
  EXPECT_THROW(matkit::solve_linear(Mat::Identity(2, 3), Mat::Identity(2, 2)),
               DimensionError);
  EXPECT_THROW(matkit::solve_linear(Mat::Identity(2, 2), Mat::Identity(3, 1)),
               DimensionError);
  EXPECT_THROW(matkit::mat_mul(Mat::Identity(2, 3), Mat::Identity(2, 2)),
               DimensionError);
}

TEST(Matkit, DefinitenessAgreesWithLeadingMinors) {
  std::mt19937_64 rng(7);
  int pd = 0, not_pd = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = testsupport::uniform_int(rng, 1, 4);
    Mat s = testsupport::normal_matrix(rng, d, d, 1.0);
    s = s + s.transpose();
    if (trial % 2) s += 3.0 * Mat::Identity(d, d);
    const bool expected = testsupport::pd_oracle(s);
    EXPECT_EQ(matkit::is_positive_definite(s), expected) << s;
    (expected ? pd : not_pd)++;
  }
  EXPECT_GT(pd, 20);
  EXPECT_GT(not_pd, 20);
}

TEST(Matkit, SemidefiniteAcceptsRankDeficientGram) {
  Mat L(3, 1);
  L << 1, 2, -1;
  const Mat g = L * L.transpose();
  EXPECT_TRUE(matkit::is_positive_semidefinite(g));
  EXPECT_FALSE(matkit::is_positive_definite(g));
  EXPECT_FALSE(matkit::is_positive_semidefinite(-g));
  EXPECT_TRUE(matkit::is_positive_semidefinite(Mat::Zero(2, 2)));
}

TEST(Matkit, SymmetryAndNorms) {
  Mat a(2, 2);
  a << 1, 2, 3, 4;
  EXPECT_FALSE(matkit::is_symmetric(a));
  EXPECT_TRUE(matkit::is_symmetric(matkit::symmetrize(a)));
  EXPECT_DOUBLE_EQ(matkit::norm_inf(a), 7.0);
  EXPECT_DOUBLE_EQ(matkit::condition_inf(Mat::Identity(3, 3)), 1.0);
  Mat sing(2, 2);
  sing << 1, 1, 1, 1;
  EXPECT_TRUE(std::isinf(matkit::condition_inf(sing)));
  a(0, 1) = std::nan("");
  EXPECT_FALSE(matkit::all_finite(a));
}
