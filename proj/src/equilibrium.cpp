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

#include "stackelberg/equilibrium.hpp"

#include <algorithm>

namespace stackelberg {

Mat DTable::sum(int k, int m2, int n) const {
  Mat total = Mat::Zero(m2, n);
  for (int i = base_time_; i < k; ++i) total += at(i, k);
  return total;
}

DTable d_matrices(const FollowerCoeffs& fc, int base_time) {
  if (base_time < fc.base_time) {
    throw DimensionError("d_matrices: base time precedes follower coefficients");
  }
  std::vector<std::vector<Mat>> rows;
  for (int k = base_time; k < fc.N; ++k) {
    std::vector<Mat> row(k - base_time);
    const Mat& Ck = fc.stage(k).C;
    // chain = Atil_{k-1} ... Atil_{i+1}; identity for i = k-1.
    Mat chain = Mat::Identity(Ck.cols(), Ck.cols());
    for (int i = k - 1; i >= base_time; --i) {
      row[i - base_time] = Ck * chain * fc.stage(i).Ctil.transpose() * chain.transpose();
      chain = chain * fc.stage(i).Atil;
    }
    rows.push_back(std::move(row));
  }
  return DTable(base_time, fc.N, std::move(rows));
}

LeaderCoeffs leader_coeffs(const GameSpec& spec, const FollowerCoeffs& fc,
                           int base_time) {
  const int n = spec.n();
  const int m1 = spec.m1();
  const int m2 = spec.m2();
  const Mat& R2 = spec.R2;
  const Mat& B1 = spec.B1;
  const Mat Znn = Mat::Zero(n, n);

  LeaderCoeffs lc;
  lc.base_time = base_time;
  lc.N = spec.N;
  lc.D = d_matrices(fc, base_time);
  lc.bG = Mat::Zero(3 * n, n);
  lc.bG.topRows(n) = spec.G2;

  for (int k = base_time; k < spec.N; ++k) {
    const FollowerStage& f = fc.stage(k);
    LeaderStage s;
    s.sumD = lc.D.sum(k, m2, n);
    const Mat sumDt = s.sumD.transpose();
    const Mat H1tR2 = f.H1.transpose() * R2;

    s.F = spec.W2 + f.H2.transpose() * R2 * f.H2 + s.sumD * H1tR2 * f.H2;
    s.O = f.H2.transpose() * R2 * f.H1 + s.sumD * H1tR2 * f.H1;

    s.bH.resize(3 * n, n);
    s.bH << spec.Q2, H1tR2 * f.H1, Znn;

    s.bK.resize(3 * n, m2);
    s.bK << Mat::Zero(n, m2), H1tR2 * f.H2, f.C.transpose();

    s.bL.resize(3 * n, 3 * n);
    s.bL << spec.A.transpose(), Znn, Znn,
            -f.H1.transpose() * B1.transpose(), f.Atil.transpose(), H1tR2 * f.H3,
            Znn, Znn, f.Atil.transpose();

    s.bCt.resize(3 * n, n);
    s.bCt << Znn, Znn, f.Ctil.transpose();

    s.bS.resize(3 * n, m1);
    s.bS << Mat::Zero(n, m1), Mat::Zero(n, m1), f.H3.transpose();

    const Mat H3tR2 = f.H3.transpose() * R2;
    s.bD.resize(3 * n, m2);
    s.bD << f.Btil - B1 * f.H1 * sumDt,
            f.Btil + f.Atil * sumDt,
            H3tR2 * f.H2 + H3tR2 * f.H1 * sumDt;

    lc.stages.push_back(std::move(s));
  }
  return lc;
}

TRecursion t_recursion(const LeaderCoeffs& lc, const GameSpec& spec,
                       const FollowerCoeffs& fc) {
  const int n = spec.n();
  const int t0 = lc.base_time;
  const int count = spec.N - t0;

  for (int k = t0; k < spec.N; ++k) {
    const Mat& F = lc.stage(k).F;
    try {
      matkit::solve_linear(F, Mat::Identity(F.rows(), F.cols()));
    } catch (const SingularMatrix& e) {
      throw NotSolvable(k, kMatrixF, e.what());
    }
  }

  TRecursion tr;
  tr.base_time = t0;
  tr.T.assign(count + 1, Mat());
  tr.stages.assign(count, TStage{});
  tr.T[count] = lc.bG;

  for (int k = spec.N - 1; k >= t0; --k) {
    const LeaderStage& s = lc.stage(k);
    const FollowerStage& f = fc.stage(k);
    const Mat& Tn = tr.T[k + 1 - t0];
    TStage& ts = tr.stages[k - t0];

    Mat rhs(s.F.rows(), n + s.bD.rows());
    rhs << s.O, s.bD.transpose();
    const Mat sol = matkit::solve_linear(s.F, rhs);
    ts.FinvO = sol.leftCols(n);
    ts.FinvD = sol.rightCols(s.bD.rows());
    ts.cond_F = matkit::condition_inf(s.F);

    ts.coupling = Mat::Identity(n, n) - (s.bCt.transpose() - f.Btil * ts.FinvD) * Tn;
    const Mat drift = f.Atil - f.Btil * ts.FinvO;
    try {
      ts.transition = matkit::solve_linear(ts.coupling, drift);
    } catch (const SingularMatrix& e) {
      throw NotSolvable(k, kMatrixCoupling, e.what());
    }
    ts.cond_coupling = matkit::condition_inf(ts.coupling);

    tr.T[k - t0] = (s.bL - s.bK * ts.FinvD) * Tn * ts.transition + s.bH - s.bK * ts.FinvO;
  }
  return tr;
}

EquilibriumSolution solve_equilibrium(const GameSpec& spec, int k0, const Vec& x0) {
  const FollowerCoeffs fc = riccati(spec, k0);
  const LeaderCoeffs lc = leader_coeffs(spec, fc, k0);
  const TRecursion tr = t_recursion(lc, spec, fc);
  return solve_equilibrium(spec, fc, lc, tr, x0);
}

EquilibriumSolution solve_equilibrium(const GameSpec& spec, const FollowerCoeffs& fc,
                                      const LeaderCoeffs& lc, const TRecursion& tr,
                                      const Vec& x0) {
  const int n = spec.n();
  const int k0 = lc.base_time;
  const int N = spec.N;
  if (x0.size() != n) throw DimensionError("solve_equilibrium: x0 length ≠ n");

  EquilibriumSolution sol;
  sol.base_time = k0;
  sol.X_star = Sequence::zeros(k0, N - k0 + 1, n);
  sol.u_star = Sequence::zeros(k0, N - k0, spec.m1());
  sol.v_star = Sequence::zeros(k0, N - k0, spec.m2());
  sol.bZ_star = Sequence::zeros(k0, N - k0 + 1, 3 * n);
  sol.X_star[k0] = x0;

  for (int k = k0; k < N; ++k) {
    const TStage& ts = tr.stage(k);
    const FollowerStage& f = fc.stage(k);
    const LeaderStage& s = lc.stage(k);
    const Vec& Xk = sol.X_star[k];
    const Vec Xn = ts.transition * Xk;
    const Vec Zn = tr.T_at(k + 1) * Xn;
    sol.X_star[k + 1] = Xn;
    sol.v_star[k] = -(ts.FinvO * Xk + ts.FinvD * Zn);
    sol.u_star[k] = (f.H2 * ts.FinvD - s.bS.transpose()) * Zn +
                    (-f.H1 + f.H2 * ts.FinvO) * Xk;
    sol.coupling.push_back(ts.coupling);
    sol.diagnostics.push_back({k, ts.cond_F, ts.cond_coupling});
  }
  for (int k = k0; k <= N; ++k) sol.bZ_star[k] = tr.T_at(k) * sol.X_star[k];

  sol.Z_star = Sequence::zeros(k0, N - k0 + 1, n);
  sol.Zbar_star = Sequence::zeros(k0, N - k0 + 1, n);
  sol.pi_star = Sequence::zeros(k0, N - k0 + 1, n);
  for (int k = k0; k <= N; ++k) {
    sol.Z_star[k] = sol.bZ_star[k].segment(0, n);
    sol.Zbar_star[k] = sol.bZ_star[k].segment(n, n);
    sol.pi_star[k] = sol.bZ_star[k].segment(2 * n, n);
  }

  const Trajectory check = response(spec, fc, k0, x0, sol.v_star);
  sol.response_gap = check.u.max_abs_diff(sol.u_star);
  return sol;
}

Sequence adjoint_Z(const GameSpec& spec, const Sequence& X) {
  const int t0 = X.start();
  Sequence Z = Sequence::zeros(t0, spec.N - t0 + 1, spec.n());
  Z[spec.N] = spec.G2 * X[spec.N];
  for (int k = spec.N - 1; k >= t0; --k) {
    Z[k] = spec.Q2 * X[k] + spec.A.transpose() * Z[k + 1];
  }
  return Z;
}

Sequence adjoint_Zbar(const GameSpec& spec, const FollowerCoeffs& fc, int t0,
                      int k, const Sequence& X, const Sequence& v,
                      const Sequence& pi, const Sequence& Z) {
  Sequence Zbar = Sequence::zeros(t0, spec.N - t0 + 1, spec.n());
  for (int l = spec.N - 1; l >= t0; --l) {
    const FollowerStage& f = fc.stage(l);
    if (l >= k) {
      const Vec follower_u = f.H1 * X[l] + f.H2 * v[l] + f.H3 * pi[l + 1];
      Zbar[l] = f.H1.transpose() * (spec.R2 * follower_u) -
                f.H1.transpose() * (spec.B1.transpose() * Z[l + 1]) +
                f.Atil.transpose() * Zbar[l + 1];
    } else {
      Zbar[l] = f.Atil.transpose() * Zbar[l + 1];
    }
  }
  return Zbar;
}

StationaryReport stationary_residual(const GameSpec& spec, const FollowerCoeffs& fc,
                                     const LeaderCoeffs& lc, const TRecursion& tr,
                                     const EquilibriumSolution& sol) {
  const int n = spec.n();
  const int t0 = sol.base_time;
  const Sequence& X = sol.X_star;
  const Sequence& v = sol.v_star;

  const Sequence pi = backward_pi(spec, fc, t0, v);
  const Sequence Z = adjoint_Z(spec, X);
  const Sequence Zbar = adjoint_Zbar(spec, fc, t0, t0, X, v, pi, Z);

  StationaryReport report;
  for (int k = t0; k <= spec.N; ++k) {
    Vec raw(3 * n);
    raw << Z[k], Zbar[k], pi[k];
    const Vec viaT = tr.T_at(k) * X[k];
    report.route_gap = std::max(report.route_gap, (raw - viaT).cwiseAbs().maxCoeff());
    if (k == spec.N) break;

    const LeaderStage& s = lc.stage(k);
    Vec raw_next(3 * n);
    raw_next << Z[k + 1], Zbar[k + 1], pi[k + 1];
    const Vec base = s.F * v[k] + s.O * X[k];
    const double rT = (base + s.bD.transpose() * (tr.T_at(k + 1) * X[k + 1])).norm();
    const double rRaw = (base + s.bD.transpose() * raw_next).norm();
    report.residual_T.push_back(rT);
    report.residual_raw.push_back(rRaw);
    report.max_residual_T = std::max(report.max_residual_T, rT);
    report.max_residual_raw = std::max(report.max_residual_raw, rRaw);
  }
  return report;
}

}  // namespace stackelberg
