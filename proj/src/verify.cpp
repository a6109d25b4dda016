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

#include "stackelberg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "stackelberg/probe.hpp"

namespace stackelberg {

double variation_direct(const GameSpec& spec, const FollowerCoeffs& fc,
                        const Perturbation& p) {
  const Trajectory base = response(spec, fc, p.t0, p.x, p.v);
  const Sequence v_eps = p.v.with(p.k, p.v[p.k] + p.eps * p.vtil);
  const Trajectory pert = response(spec, fc, p.t0, p.x, v_eps);
  const Vec& Xk = base.X[p.k];
  return cost(spec, Player::kLeader, p.k, Xk, pert.u, v_eps) -
         cost(spec, Player::kLeader, p.k, Xk, base.u, p.v);
}

VariationReport variation_formula(const GameSpec& spec, const FollowerCoeffs& fc,
                                  const Perturbation& p) {
  const int t0 = p.t0;
  const int k = p.k;
  const int N = spec.N;
  const int n = spec.n();
  const Mat& R2 = spec.R2;
  const Vec& vt = p.vtil;

  const Trajectory base = response(spec, fc, t0, p.x, p.v);
  const Sequence& X = base.X;
  const Sequence& pi = base.pi;
  const Sequence Z = adjoint_Z(spec, X);
  const Sequence Zbar = adjoint_Zbar(spec, fc, t0, k, X, p.v, pi, Z);
  const FollowerStage& fk = fc.stage(k);

  VariationReport r;
  r.k = k;
  r.eps = p.eps;
  r.vtil = vt;

  // Linear coefficient before rearrangement.
  const Vec follower_u = fk.H1 * X[k] + fk.H2 * p.v[k] + fk.H3 * pi[k + 1];
  Vec coeff = fk.Btil.transpose() * Z[k + 1] + fk.Btil.transpose() * Zbar[k + 1] +
              spec.W2 * p.v[k] + fk.H2.transpose() * (R2 * follower_u);
  {
    // C_k Atil_{k-1}...Atil_{i+1} Ctil_i' Zbar_{i+1}
    Mat chain = fk.C;
    for (int i = k - 1; i >= t0; --i) {
      coeff += chain * (fc.stage(i).Ctil.transpose() * Zbar[i + 1]);
      chain = chain * fc.stage(i).Atil;
    }
  }
  r.coeff = coeff;

  // Rearranged over D_i^(k).
  const Mat sumD = d_matrices(fc, t0).sum(k, spec.m2(), n);
  const Mat H1tR2 = fk.H1.transpose() * R2;
  const Mat H2tR2 = fk.H2.transpose() * R2;
  r.coeff_rearranged = (H2tR2 * fk.H1 + sumD * H1tR2 * fk.H1) * X[k] +
                  (spec.W2 + H2tR2 * fk.H2 + sumD * H1tR2 * fk.H2) * p.v[k] +
                  (fk.Btil.transpose() - sumD * fk.H1.transpose() * spec.B1.transpose()) * Z[k + 1] +
                  (fk.Btil.transpose() + sumD * fk.Atil.transpose()) * Zbar[k + 1] +
                  (H2tR2 * fk.H3 + sumD * H1tR2 * fk.H3) * pi[k + 1];
  r.rearranged_gap = (r.coeff - r.coeff_rearranged).cwiseAbs().maxCoeff();

  // Forward perturbation of the full-window state (eta) and of the
  // internal state started at X_k (xi).
  std::vector<Vec> injection(std::max(k - t0, 0));
  {
    Vec w = fk.C.transpose() * vt;  // Atil_{i+1}'...Atil_{k-1}' C_k' vtil
    for (int i = k - 1; i >= t0; --i) {
      injection[i - t0] = fc.stage(i).Ctil * w;
      w = fc.stage(i).Atil.transpose() * w;
    }
  }
  Sequence eta = Sequence::zeros(t0, N - t0 + 1, n);
  for (int l = t0; l < N; ++l) {
    const FollowerStage& f = fc.stage(l);
    eta[l + 1] = f.Atil * eta[l];
    if (l < k) eta[l + 1] += injection[l - t0];
    if (l == k) eta[l + 1] += f.Btil * vt;
  }
  Sequence xi = Sequence::zeros(k, N - k + 1, n);
  for (int l = k; l < N; ++l) {
    xi[l + 1] = spec.A * xi[l] - spec.B1 * (fc.stage(l).H1 * eta[l]);
    if (l == k) xi[l + 1] += fk.Btil * vt;
  }

  double jhat = vt.dot(spec.W2 * vt) + xi[N].dot(spec.G2 * xi[N]);
  for (int l = k; l < N; ++l) jhat += xi[l].dot(spec.Q2 * xi[l]);
  for (int l = k + 1; l < N; ++l) {
    const Vec h = fc.stage(l).H1 * eta[l];
    jhat += h.dot(R2 * h);
  }
  const Vec hk = fk.H1 * eta[k] + fk.H2 * vt;
  jhat += hk.dot(R2 * hk);
  r.jhat = jhat;

  r.first_order = 2.0 * p.eps * r.coeff.dot(vt);
  r.second_order = p.eps * p.eps * jhat;
  r.lhs = variation_direct(spec, fc, p);
  r.abs_error = std::abs(r.lhs - r.first_order - r.second_order);
  return r;
}

double leader_stage_cost(const GameSpec& spec, const FollowerCoeffs& fc, int t0,
                         const Vec& x, const Sequence& v, const Vec& Xk, int k,
                         const Vec& vk) {
  const Sequence deviated = v.with(k, vk);
  const Trajectory tr = response(spec, fc, t0, x, deviated);
  return cost(spec, Player::kLeader, k, Xk, tr.u, deviated);
}

double leader_deviation_test(const GameSpec& spec, const FollowerCoeffs& fc,
                             const EquilibriumSolution& sol,
                             const ProbeOptions& options) {
  const int t0 = sol.base_time;
  const Vec& x = sol.X_star[t0];
  std::mt19937_64 rng(options.seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = t0; k < spec.N; ++k) {
    auto f = [&](const Vec& vk) {
      return leader_stage_cost(spec, fc, t0, x, sol.v_star, sol.X_star[k], k, vk);
    };
    worst = std::max(worst, probe::max_deviation_gain(f, sol.v_star[k], options.probes,
                                                      options.scale,
                                                      options.fd_step, rng));
  }
  return worst;
}

ConsistencyReport time_consistency_check(const GameSpec& spec,
                                         const EquilibriumSolution& sol,
                                         double threshold) {
  ConsistencyReport report;
  report.threshold = threshold;
  for (int tau = sol.base_time + 1; tau < spec.N; ++tau) {
    ConsistencyRow row;
    row.tau = tau;
    try {
      const EquilibriumSolution again = solve_equilibrium(spec, tau, sol.X_star[tau]);
      row.max_dv = sol.v_star.tail(tau).max_abs_diff(again.v_star);
      row.max_du = sol.u_star.tail(tau).max_abs_diff(again.u_star);
      row.consistent = row.max_dv <= threshold && row.max_du <= threshold;
    } catch (const NotSolvable& e) {
      row.solvable = false;
      row.error = e.what();
      row.consistent = false;
    }
    report.max_dv = std::max(report.max_dv, row.max_dv);
    report.max_du = std::max(report.max_du, row.max_du);
    report.consistent = report.consistent && row.consistent;
    report.rows.push_back(std::move(row));
  }
  return report;
}

BestResponseResult best_response_iteration(const GameSpec& spec,
                                           const FollowerCoeffs& fc, int t0,
                                           const Vec& x, int max_iterations,
                                           double tol) {
  BestResponseResult out;
  out.v = Sequence::zeros(t0, spec.N - t0, spec.m2());
  for (int it = 1; it <= max_iterations; ++it) {
    double change = 0.0;
    for (int k = t0; k < spec.N; ++k) {
      const Vec Xk = response(spec, fc, t0, x, out.v).X[k];
      auto f = [&](const Vec& vk) {
        return leader_stage_cost(spec, fc, t0, x, out.v, Xk, k, vk);
      };
      const probe::QuadraticModel m = probe::quadratic_model(f, out.v[k]);
      Vec step;
      try {
        step = matkit::solve_linear(matkit::symmetrize(m.quad), -m.lin);
      } catch (const SingularMatrix&) {
        out.iterations = it;
        return out;
      }
      out.v[k] += step;
      change = std::max(change, step.cwiseAbs().maxCoeff());
    }
    out.iterations = it;
    out.last_change = change;
    if (!std::isfinite(change)) return out;
    if (change <= tol) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace stackelberg
