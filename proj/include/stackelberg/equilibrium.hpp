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

#include "stackelberg/follower.hpp"

namespace stackelberg {

inline const std::string kMatrixF = "F";
inline const std::string kMatrixCoupling = "I-(C-BFD)T";

/// D_i^(k) = C_k Atil_{k-1}...Atil_{i+1} Ctil_i' Atil_{i+1}'...Atil_{k-1}'
/// for base_time <= i < k <= N-1 (m2 x n each). Empty products are the
/// identity.
class DTable {
 public:
  DTable() = default;
  DTable(int base_time, int N, std::vector<std::vector<Mat>> rows)
      : base_time_(base_time), N_(N), rows_(std::move(rows)) {}

  int base_time() const { return base_time_; }
  const Mat& at(int i, int k) const { return rows_.at(k - base_time_).at(i - base_time_); }
  /// Number of i entries for stage k (k - base_time).
  int count(int k) const { return static_cast<int>(rows_.at(k - base_time_).size()); }
  /// Sum over i = base_time..k-1; zero (m2 x n) when k == base_time.
  Mat sum(int k, int m2, int n) const;

 private:
  int base_time_ = 0;
  int N_ = 0;
  std::vector<std::vector<Mat>> rows_;
};

DTable d_matrices(const FollowerCoeffs& fc, int base_time);

/// Leader coefficients at stage k of the lifted system, where the lifted
/// adjoint is Z = [Z; Zbar; pi] (3n).
struct LeaderStage {
  Mat sumD;  // sum_{i=t0}^{k-1} D_i^(k), m2 x n
  Mat F;     // m2 x m2
  Mat O;     // m2 x n
  Mat bH;    // 3n x n
  Mat bK;    // 3n x m2
  Mat bL;    // 3n x 3n
  Mat bCt;   // 3n x n
  Mat bS;    // 3n x m1
  Mat bD;    // 3n x m2
};

struct LeaderCoeffs {
  int base_time = 0;
  int N = 0;
  DTable D;
  Mat bG;  // [G2; 0; 0]
  std::vector<LeaderStage> stages;  // base_time..N-1

  const LeaderStage& stage(int k) const { return stages.at(k - base_time); }
};

/// Fills every block of the lifted system. The sums over D start at
/// base_time, so the coefficients depend on it.
LeaderCoeffs leader_coeffs(const GameSpec& spec, const FollowerCoeffs& fc,
                           int base_time);

/// Stage quantities of the decoupled recursion.
struct TStage {
  Mat coupling;    // I - (bCt' - Btil F^{-1} bD') T_{k+1}, n x n
  Mat transition;  // coupling^{-1} (Atil - Btil F^{-1} O)
  Mat FinvO;       // F^{-1} O
  Mat FinvD;       // F^{-1} bD'
  double cond_F = 0.0;
  double cond_coupling = 0.0;
};

struct TRecursion {
  int base_time = 0;
  std::vector<Mat> T;         // base_time..N, 3n x n, T_N = bG
  std::vector<TStage> stages; // base_time..N-1

  const Mat& T_at(int k) const { return T.at(k - base_time); }
  const TStage& stage(int k) const { return stages.at(k - base_time); }
};

/// Runs the backward recursion for T from T_N = bG. Every F_k is checked
/// first (NotSolvable{k, "F"}); then each coupling matrix as it is formed
/// (NotSolvable{k, "I-(C-BFD)T"}).
TRecursion t_recursion(const LeaderCoeffs& lc, const GameSpec& spec,
                       const FollowerCoeffs& fc);

struct StageDiagnostics {
  int k = 0;
  double cond_F = 0.0;
  double cond_coupling = 0.0;
};

struct EquilibriumSolution {
  int base_time = 0;
  Sequence u_star;     // k0..N-1
  Sequence v_star;     // k0..N-1
  Sequence X_star;     // k0..N
  Sequence bZ_star;    // k0..N, 3n
  Sequence Z_star;     // blocks of bZ_star
  Sequence Zbar_star;
  Sequence pi_star;
  std::vector<Mat> coupling;  // per stage k0..N-1
  std::vector<StageDiagnostics> diagnostics;
  /// max |u* - alpha(x0, v*)| from the independent follower response.
  double response_gap = 0.0;
};

/// Open-loop equilibrium from (k0, x0); leader coefficients are built with
/// base time k0.
EquilibriumSolution solve_equilibrium(const GameSpec& spec, int k0, const Vec& x0);
EquilibriumSolution solve_equilibrium(const GameSpec& spec, const FollowerCoeffs& fc,
                                      const LeaderCoeffs& lc, const TRecursion& tr,
                                      const Vec& x0);

/// Leader adjoint Z: Z_N = G2 X_N, Z_k = Q2 X_k + A' Z_{k+1}.
Sequence adjoint_Z(const GameSpec& spec, const Sequence& X);

/// Second leader adjoint Zbar^(k) over t0..N for perturbation stage k:
/// the full recursion on k..N-1 and Zbar_i = Atil_i' Zbar_{i+1} below k.
/// With k == t0 this is the collapsed adjoint of the equilibrium system.
Sequence adjoint_Zbar(const GameSpec& spec, const FollowerCoeffs& fc, int t0,
                      int k, const Sequence& X, const Sequence& v,
                      const Sequence& pi, const Sequence& Z);

struct StationaryReport {
  std::vector<double> residual_T;    // per stage, with Z_{k+1} = T_{k+1} X_{k+1}
  std::vector<double> residual_raw;  // per stage, with raw backward adjoints
  double max_residual_T = 0.0;
  double max_residual_raw = 0.0;
  double route_gap = 0.0;  // max |T_k X_k - raw Z_k| over k
};

/// ||F_k v_k + O_k X_k + bD_k' Z_{k+1}|| along sol, by both adjoint routes.
StationaryReport stationary_residual(const GameSpec& spec, const FollowerCoeffs& fc,
                                     const LeaderCoeffs& lc, const TRecursion& tr,
                                     const EquilibriumSolution& sol);

}  // namespace stackelberg
