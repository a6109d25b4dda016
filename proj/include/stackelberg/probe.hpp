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

// Finite-difference probes of scalar functions of one vector argument.
// All routines are exact up to rounding when the function is quadratic.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "stackelberg/matkit.hpp"

namespace stackelberg::probe {

template <typename F>
Vec central_gradient(const F& f, const Vec& x, double h) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec plus = x, minus = x;
    plus(i) += h;
    minus(i) -= h;
    g(i) = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

/// Quadratic model f(x + d) = f(x) + 2 lin'd + d' quad d, probed with unit
/// steps (exact for quadratics). Matches the "x'Qx + 2l'x + c" convention.
struct QuadraticModel {
  double constant = 0.0;
  Vec lin;
  Mat quad;
};

template <typename F>
QuadraticModel quadratic_model(const F& f, const Vec& x) {
  const Eigen::Index d = x.size();
  QuadraticModel m;
  m.constant = f(x);
  m.lin.resize(d);
  m.quad.resize(d, d);
  auto shifted = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    Vec y = x;
    y(i) += si;
    y(j) += sj;
    return f(y);
  };
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec plus = x, minus = x;
    plus(i) += 1.0;
    minus(i) -= 1.0;
    m.lin(i) = (f(plus) - f(minus)) / 4.0;
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double q = (shifted(i, 1, j, 1) - shifted(i, 1, j, -1) -
                        shifted(i, -1, j, 1) + shifted(i, -1, j, -1)) /
                       8.0;
      m.quad(i, j) = q;
      m.quad(j, i) = q;
    }
  }
  return m;
}

/// Largest f(x) - f(probe) over: the exact minimizer along the negative
/// finite-difference gradient, and `count` Gaussian probes of size `scale`.
template <typename F>
double max_deviation_gain(const F& f, const Vec& x, int count, double scale,
                          double h, std::mt19937_64& rng) {
  const double base = f(x);
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec& y) { best = std::max(best, base - f(y)); };

  const Vec g = central_gradient(f, x, h);
  const double gnorm = g.norm();
  if (gnorm > 0.0) {
    const Vec d = -g / gnorm;
    const double curvature = f(x + d) - 2.0 * base + f(x - d);
    const double step = curvature > 0.0 ? gnorm / curvature : scale;
    consider(x + step * d);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int p = 0; p < count; ++p) {
    Vec delta(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) delta(i) = normal(rng);
    consider(x + scale * delta);
  }
  if (!std::isfinite(best)) best = 0.0;
  return best;
}

}  // namespace stackelberg::probe
