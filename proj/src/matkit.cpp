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

#include "stackelberg/matkit.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace stackelberg::matkit {

namespace {

std::string shape(const Mat& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

// Pivots of the symmetric part, LDL^T with diagonal pivoting.
Vec symmetric_pivots(const Mat& a) {
  const Mat s = symmetrize(a);
  if (s.size() == 0) return Vec();
  Eigen::LDLT<Mat> ldlt(s);
  return ldlt.vectorD();
}

}  // namespace

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + shape(a) + " times " + shape(b));
  }
  return a * b;
}

Mat solve_linear(const Mat& a, const Mat& b, double rel_tol) {
  if (a.rows() != a.cols()) {
    throw DimensionError("solve_linear: matrix is " + shape(a));
  }
  if (b.rows() != a.rows()) {
    throw DimensionError("solve_linear: " + shape(a) + " with rhs " + shape(b));
  }
  if (a.rows() == 0) return Mat(0, b.cols());
  const double threshold = rel_tol * norm_inf(a);
  Eigen::PartialPivLU<Mat> lu(a);
  const Vec pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.minCoeff() > threshold)) {
    std::ostringstream os;
    os << "solve_linear: pivot " << pivots.minCoeff() << " <= " << threshold;
    throw SingularMatrix(os.str());
  }
  return lu.solve(b);
}

bool is_positive_definite(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  if (!all_finite(a)) return false;
  const double threshold = tol * (1.0 + norm_inf(a));
  return symmetric_pivots(a).minCoeff() > threshold;
}

bool is_positive_semidefinite(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  if (!all_finite(a)) return false;
  return symmetric_pivots(a).minCoeff() >= -tol;
}

bool is_symmetric(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol;
}

double norm_inf(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

double condition_inf(const Mat& a) {
  try {
    const Mat inv = solve_linear(a, Mat::Identity(a.rows(), a.cols()));
    return norm_inf(a) * norm_inf(inv);
  } catch (const SingularMatrix&) {
    return std::numeric_limits<double>::infinity();
  }
}

bool all_finite(const Mat& a) { return a.allFinite(); }

}  // namespace stackelberg::matkit
