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

#include <string>
#include <vector>

#include "stackelberg/equilibrium.hpp"
#include "stackelberg/follower.hpp"

namespace stackelberg {

/// Perturbation of the leader's control at one stage k by eps * vtil,
/// with the baseline (v, x) started at base time t0.
struct Perturbation {
  int t0 = 0;
  Vec x;
  Sequence v;
  int k = 0;
  double eps = 0.0;
  Vec vtil;
};

struct VariationReport {
  int k = 0;
  double eps = 0.0;
  Vec vtil;
  double lhs = 0.0;           // direct cost difference
  double first_order = 0.0;   // 2 eps coeff' vtil
  double second_order = 0.0;  // eps^2 Jhat2(k, 0; vtil)
  double abs_error = 0.0;     // |lhs - first_order - second_order|
  Vec coeff;                  // linear coefficient, adjoint form
  Vec coeff_rearranged;            // same coefficient rearranged over D_i^(k)
  double rearranged_gap = 0.0;     // max |coeff - coeff_rearranged|
  double jhat = 0.0;          // Jhat2(k, 0; vtil)
};

/// J2 from the unperturbed X_k under the perturbed follower response and
/// leader control, minus the same cost at the baseline.
double variation_direct(const GameSpec& spec, const FollowerCoeffs& fc,
                        const Perturbation& p);

/// The same difference assembled from the two leader adjoints and the
/// forward perturbation systems; fills lhs by calling variation_direct.
VariationReport variation_formula(const GameSpec& spec, const FollowerCoeffs& fc,
                                  const Perturbation& p);

/// Largest cost reduction any single-stage leader deviation achieves
/// against sol (internal state started at X*_k, follower response
/// recomputed over the whole window).
double leader_deviation_test(const GameSpec& spec, const FollowerCoeffs& fc,
                             const EquilibriumSolution& sol,
                             const ProbeOptions& options = {});

/// Leader's stage cost as a function of its stage-k control, everything
/// else taken from (x, v) started at t0.
double leader_stage_cost(const GameSpec& spec, const FollowerCoeffs& fc, int t0,
                         const Vec& x, const Sequence& v, const Vec& Xk, int k,
                         const Vec& vk);

struct ConsistencyRow {
  int tau = 0;
  bool solvable = true;
  std::string error;  // NotSolvable message when !solvable
  double max_dv = 0.0;
  double max_du = 0.0;
  bool consistent = false;
};

struct ConsistencyReport {
  std::vector<ConsistencyRow> rows;
  double threshold = 1e-6;
  bool consistent = true;
  double max_dv = 0.0;
  double max_du = 0.0;
};

/// Re-solves the equilibrium at every (tau, X*_tau), tau > base time, with
/// leader coefficients rebuilt at base time tau, and compares controls with
/// the truncation of sol.
ConsistencyReport time_consistency_check(const GameSpec& spec,
                                         const EquilibriumSolution& sol,
                                         double threshold = 1e-6);

struct BestResponseResult {
  bool converged = false;
  int iterations = 0;
  double last_change = 0.0;
  Sequence v;
};

/// Cyclic per-stage minimization of the leader's stage costs, each stage
/// solved exactly as a quadratic, iterated to a fixed point.
BestResponseResult best_response_iteration(const GameSpec& spec,
                                           const FollowerCoeffs& fc, int t0,
                                           const Vec& x, int max_iterations = 500,
                                           double tol = 1e-12);

}  // namespace stackelberg
