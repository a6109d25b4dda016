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
#include <string>

#include <Eigen/Dense>

namespace stackelberg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Raised when operand shapes are incompatible.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by solve_linear when a pivot falls below the singularity threshold.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace matkit {

/// Relative pivot threshold used by solve_linear.
inline constexpr double kSingularTol = 1e-12;

/// Product a*b; throws DimensionError when a.cols() != b.rows().
Mat mat_mul(const Mat& a, const Mat& b);

/// Solves a*Y = b with row-pivoted elimination.
///
/// Throws SingularMatrix when some pivot magnitude is at or below
/// rel_tol * ||a||_inf (so the zero matrix is always singular).
Mat solve_linear(const Mat& a, const Mat& b, double rel_tol = kSingularTol);

/// True iff the symmetric part of a factorizes with every pivot above
/// tol * (1 + ||a||_inf).
bool is_positive_definite(const Mat& a, double tol = kSingularTol);

/// True iff a is square and every pivot of its symmetric part is >= -tol.
bool is_positive_semidefinite(const Mat& a, double tol = 1e-10);

bool is_symmetric(const Mat& a, double tol = 1e-10);

inline Mat symmetrize(const Mat& a) { return 0.5 * (a + a.transpose()); }

double norm_inf(const Mat& a);

/// ||a||_inf * ||a^{-1}||_inf, or +inf when a is singular.
double condition_inf(const Mat& a);

bool all_finite(const Mat& a);

}  // namespace matkit
}  // namespace stackelberg
