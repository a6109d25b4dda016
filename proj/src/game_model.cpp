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

#include "stackelberg/game_model.hpp"

#include <algorithm>
#include <cmath>

namespace stackelberg {

Sequence Sequence::zeros(int start, int count, int dim) {
  return Sequence(start, std::vector<Vec>(std::max(count, 0), Vec::Zero(dim)));
}

Sequence Sequence::tail(int from) const {
  if (from < start_ || from > end()) {
    throw DimensionError("Sequence::tail: index outside sequence");
  }
  return Sequence(from, std::vector<Vec>(values_.begin() + (from - start_),
                                         values_.end()));
}

Sequence Sequence::with(int k, const Vec& value) const {
  Sequence out = *this;
  out[k] = value;
  return out;
}

Vec Sequence::stacked() const {
  Eigen::Index total = 0;
  for (const auto& v : values_) total += v.size();
  Vec flat(total);
  Eigen::Index offset = 0;
  for (const auto& v : values_) {
    flat.segment(offset, v.size()) = v;
    offset += v.size();
  }
  return flat;
}

Sequence Sequence::unstack(int start, const Vec& flat, int dim) {
  if (dim <= 0 || flat.size() % dim != 0) {
    throw DimensionError("Sequence::unstack: length not a multiple of dim");
  }
  std::vector<Vec> values;
  for (Eigen::Index i = 0; i < flat.size(); i += dim) {
    values.push_back(flat.segment(i, dim));
  }
  return Sequence(start, std::move(values));
}

double Sequence::max_abs_diff(const Sequence& other) const {
  if (start_ != other.start_ || size() != other.size()) {
    throw DimensionError("Sequence::max_abs_diff: windows differ");
  }
  double worst = 0.0;
  for (int i = 0; i < size(); ++i) {
    if (values_[i].size() != other.values_[i].size()) {
      throw DimensionError("Sequence::max_abs_diff: entry sizes differ");
    }
    if (values_[i].size() > 0) {
      worst = std::max(worst, (values_[i] - other.values_[i]).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::vector<std::string> validate(const GameSpec& spec) {
  std::vector<std::string> out;
  const int n = static_cast<int>(spec.A.rows());
  const int m1 = static_cast<int>(spec.B1.cols());
  const int m2 = static_cast<int>(spec.B2.cols());

  auto shape = [&](const std::string& name, const Mat& m, int rows,
                   const char* rows_name, int cols, const char* cols_name) {
    bool ok = true;
    if (m.rows() != rows) {
      out.push_back(name + " rows ≠ " + rows_name);
      ok = false;
    }
    if (m.cols() != cols) {
      out.push_back(name + " cols ≠ " + cols_name);
      ok = false;
    }
    return ok;
  };

  if (n == 0) out.push_back("A is empty");
  shape("A", spec.A, n, "n", n, "n");
  shape("B1", spec.B1, n, "n", m1, "m1");
  shape("B2", spec.B2, n, "n", m2, "m2");

  struct Weight {
    const char* name;
    const Mat* m;
    int dim;
    const char* dim_name;
  };
  const Weight weights[] = {
      {"Q1", &spec.Q1, n, "n"},   {"Q2", &spec.Q2, n, "n"},
      {"R1", &spec.R1, m1, "m1"}, {"R2", &spec.R2, m1, "m1"},
      {"W1", &spec.W1, m2, "m2"}, {"W2", &spec.W2, m2, "m2"},
      {"G1", &spec.G1, n, "n"},   {"G2", &spec.G2, n, "n"},
  };
  for (const auto& w : weights) {
    if (!shape(w.name, *w.m, w.dim, w.dim_name, w.dim, w.dim_name)) continue;
    if (!matkit::all_finite(*w.m)) {
      out.push_back(std::string(w.name) + " has non-finite entries");
      continue;
    }
    if (!matkit::is_symmetric(*w.m)) {
      out.push_back(std::string(w.name) + " not symmetric");
    } else if (!matkit::is_positive_semidefinite(*w.m)) {
      out.push_back(std::string(w.name) + " not positive semidefinite");
    }
  }
  for (const auto* m : {&spec.A, &spec.B1, &spec.B2}) {
    if (!matkit::all_finite(*m)) {
      out.push_back(std::string(m == &spec.A ? "A" : m == &spec.B1 ? "B1" : "B2") +
                    " has non-finite entries");
    }
  }

  if (spec.N <= 2) out.push_back("N must be > 2");
  if (spec.t < 0 || spec.t >= spec.N) out.push_back("t outside [0, N)");
  if (spec.x.size() != n) out.push_back("x length ≠ n");
  if (!spec.x.allFinite()) out.push_back("x has non-finite entries");
  return out;
}

Sequence simulate(const GameSpec& spec, int k0, const Vec& x0,
                  const Sequence& u, const Sequence& v) {
  if (x0.size() != spec.n()) throw DimensionError("simulate: x0 length ≠ n");
  if (k0 < 0 || k0 > spec.N) throw DimensionError("simulate: k0 outside [0, N]");
  std::vector<Vec> X;
  X.reserve(spec.N - k0 + 1);
  X.push_back(x0);
  for (int k = k0; k < spec.N; ++k) {
    if (!u.contains(k) || !v.contains(k)) {
      throw DimensionError("simulate: control missing at stage " + std::to_string(k));
    }
    if (u[k].size() != spec.m1() || v[k].size() != spec.m2()) {
      throw DimensionError("simulate: control size mismatch at stage " +
                           std::to_string(k));
    }
    X.push_back(spec.A * X.back() + spec.B1 * u[k] + spec.B2 * v[k]);
  }
  return Sequence(k0, std::move(X));
}

double cost(const GameSpec& spec, Player which, int k0, const Vec& x0,
            const Sequence& u, const Sequence& v) {
  const bool leader = which == Player::kLeader;
  const Mat& Q = leader ? spec.Q2 : spec.Q1;
  const Mat& R = leader ? spec.R2 : spec.R1;
  const Mat& W = leader ? spec.W2 : spec.W1;
  const Mat& G = leader ? spec.G2 : spec.G1;

  const Sequence X = simulate(spec, k0, x0, u, v);
  double total = 0.0;
  for (int k = k0; k < spec.N; ++k) {
    total += X[k].dot(Q * X[k]) + u[k].dot(R * u[k]) + v[k].dot(W * v[k]);
  }
  total += X[spec.N].dot(G * X[spec.N]);
  return total;
}

}  // namespace stackelberg
