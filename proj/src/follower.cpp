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

#include "stackelberg/follower.hpp"

#include <algorithm>
#include <random>

#include "stackelberg/probe.hpp"

namespace stackelberg {

NotSolvable::NotSolvable(int stage, std::string matrix, const std::string& detail)
    : std::runtime_error("not solvable: matrix " + matrix + " at stage " +
                         std::to_string(stage) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      stage_(stage),
      matrix_(std::move(matrix)) {}

FollowerCoeffs riccati(const GameSpec& spec) { return riccati(spec, spec.t); }

FollowerCoeffs riccati(const GameSpec& spec, int base_time) {
  if (base_time < 0 || base_time >= spec.N) {
    throw DimensionError("riccati: base time outside [0, N)");
  }
  const Mat& A = spec.A;
  const Mat& B1 = spec.B1;
  const Mat& B2 = spec.B2;

  FollowerCoeffs fc;
  fc.base_time = base_time;
  fc.N = spec.N;
  const int count = spec.N - base_time;
  fc.P.assign(count + 1, Mat());
  fc.stages.assign(count, FollowerStage{});
  fc.P[count] = spec.G1;

  for (int k = spec.N - 1; k >= base_time; --k) {
    const Mat& Pn = fc.P[k + 1 - base_time];
    FollowerStage& s = fc.stages[k - base_time];
    s.M = matkit::symmetrize(B1.transpose() * Pn * B1 + spec.R1);
    if (!matkit::is_positive_definite(s.M)) {
      throw NotSolvable(k, "M", "follower stage weight not positive definite");
    }
    const Mat PnA = Pn * A;
    // One factorization-solve for [B1'P A | B1'P B2 | B1'].
    Mat rhs(B1.cols(), A.cols() + B2.cols() + B1.rows());
    rhs << B1.transpose() * PnA, B1.transpose() * Pn * B2, B1.transpose();
    const Mat sol = matkit::solve_linear(s.M, rhs);
    s.H1 = sol.leftCols(A.cols());
    s.H2 = sol.middleCols(A.cols(), B2.cols());
    s.H3 = sol.rightCols(B1.rows());

    s.Atil = A - B1 * s.H1;
    s.Btil = B2 - B1 * s.H2;
    s.Ctil = -B1 * s.H3;
    // (B2' - B2' P B1 M^{-1} B1') P A, with M^{-1} B1' = H3.
    s.C = (B2.transpose() - B2.transpose() * Pn * B1 * s.H3) * PnA;

    fc.P[k - base_time] = matkit::symmetrize(
        spec.Q1 + A.transpose() * PnA - PnA.transpose() * B1 * s.H1);
  }
  return fc;
}

Sequence backward_pi(const GameSpec& spec, const FollowerCoeffs& fc, int k0,
                     const Sequence& v) {
  if (k0 < fc.base_time) {
    throw DimensionError("backward_pi: start precedes coefficient base time");
  }
  Sequence pi = Sequence::zeros(k0, spec.N - k0 + 1, spec.n());
  for (int k = spec.N - 1; k >= k0; --k) {
    const FollowerStage& s = fc.stage(k);
    pi[k] = s.C.transpose() * v[k] + s.Atil.transpose() * pi[k + 1];
  }
  return pi;
}

Trajectory response(const GameSpec& spec, const FollowerCoeffs& fc, int k0,
                    const Vec& x0, const Sequence& v) {
  if (x0.size() != spec.n()) throw DimensionError("response: x0 length ≠ n");
  for (int k = k0; k < spec.N; ++k) {
    if (!v.contains(k) || v[k].size() != spec.m2()) {
      throw DimensionError("response: leader control missing or misshaped at " +
                           std::to_string(k));
    }
  }
  Trajectory tr;
  tr.pi = backward_pi(spec, fc, k0, v);
  tr.v = v.tail(k0);
  tr.X = Sequence::zeros(k0, spec.N - k0 + 1, spec.n());
  tr.u = Sequence::zeros(k0, spec.N - k0, spec.m1());
  tr.X[k0] = x0;
  for (int k = k0; k < spec.N; ++k) {
    const FollowerStage& s = fc.stage(k);
    tr.u[k] = -(s.H1 * tr.X[k] + s.H2 * v[k] + s.H3 * tr.pi[k + 1]);
    tr.X[k + 1] = s.Atil * tr.X[k] + s.Btil * v[k] + s.Ctil * tr.pi[k + 1];
  }
  return tr;
}

namespace {

// u_k -> J1 from (k, X_k) with the rest of u and v held.
struct FollowerStageCost {
  const GameSpec& spec;
  const Sequence& u;
  const Sequence& v;
  int k;
  Vec Xk;

  double operator()(const Vec& uk) const {
    return cost(spec, Player::kFollower, k, Xk, u.with(k, uk), v);
  }
};

}  // namespace

Vec follower_stage_gradient(const GameSpec& spec, int k0, const Vec& x0,
                            const Sequence& u, const Sequence& v, int k,
                            double h) {
  const Sequence X = simulate(spec, k0, x0, u, v);
  FollowerStageCost f{spec, u, v, k, X[k]};
  return probe::central_gradient(f, u[k], h);
}

double check_response_equilibrium(const GameSpec& spec, int k0, const Vec& x0,
                                  const Sequence& v, const Sequence& u,
                                  const ProbeOptions& options) {
  const Sequence X = simulate(spec, k0, x0, u, v);
  std::mt19937_64 rng(options.seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = k0; k < spec.N; ++k) {
    FollowerStageCost f{spec, u, v, k, X[k]};
    worst = std::max(worst, probe::max_deviation_gain(f, u[k], options.probes,
                                                      options.scale,
                                                      options.fd_step, rng));
  }
  return worst;
}

}  // namespace stackelberg
