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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackelberg/game_model.hpp"

namespace stackelberg {

/// A stage matrix required to be positive definite or invertible failed
/// the check, so no unique solution exists. `matrix` is "M" for the
/// follower's Riccati stage, "F" or "I-(C-BFD)T" for the leader recursion.
class NotSolvable : public std::runtime_error {
 public:
  NotSolvable(int stage, std::string matrix, const std::string& detail = "");

  int stage() const { return stage_; }
  const std::string& matrix() const { return matrix_; }

 private:
  int stage_;
  std::string matrix_;
};

/// Follower coefficients at one stage k.
struct FollowerStage {
  Mat M;      // B1' P_{k+1} B1 + R1
  Mat H1;     // M^{-1} B1' P_{k+1} A
  Mat H2;     // M^{-1} B1' P_{k+1} B2
  Mat H3;     // M^{-1} B1'
  Mat Atil;   // A - B1 H1
  Mat Btil;   // B2 - B1 H2
  Mat Ctil;   // -B1 H3
  Mat C;      // (B2' - B2' P B1 M^{-1} B1') P_{k+1} A, m2 x n
};

/// Output of the follower's backward Riccati recursion over base_time..N.
///
/// The recursion runs from the fixed terminal weight G1, so coefficients
/// built for base time t serve every later start k0 >= t unchanged.
struct FollowerCoeffs {
  int base_time = 0;
  int N = 0;
  std::vector<Mat> P;                // base_time..N
  std::vector<FollowerStage> stages; // base_time..N-1

  const FollowerStage& stage(int k) const { return stages.at(k - base_time); }
  const Mat& P_at(int k) const { return P.at(k - base_time); }
};

FollowerCoeffs riccati(const GameSpec& spec);
/// Throws NotSolvable{k, "M"} when M_k is not positive definite.
FollowerCoeffs riccati(const GameSpec& spec, int base_time);

/// Follower response alpha^{k0}(x0, v): the controls u together with the
/// state X and backward variable pi of the decoupled forward-backward
/// system. v must cover k0..N-1.
Trajectory response(const GameSpec& spec, const FollowerCoeffs& fc, int k0,
                    const Vec& x0, const Sequence& v);

/// The backward variable only: pi_N = 0, pi_k = C_k' v_k + Atil_k' pi_{k+1}.
Sequence backward_pi(const GameSpec& spec, const FollowerCoeffs& fc, int k0,
                     const Sequence& v);

/// Gradient of u_k -> J1(k, X_k; (u_k, u|_{k+1..}), v|_{k..}) at the given
/// u_k, by central differences with step h. X_k comes from simulating u
/// from (k0, x0).
Vec follower_stage_gradient(const GameSpec& spec, int k0, const Vec& x0,
                            const Sequence& u, const Sequence& v, int k,
                            double h = 1e-5);

struct ProbeOptions {
  int probes = 20;
  double scale = 0.1;
  std::uint64_t seed = 20260101;
  double fd_step = 1e-5;
};

/// One-stage deviation test of a follower control sequence u against v.
///
/// For each stage k, compares J1 from (k, X_k) under u with the same cost
/// after replacing only u_k by probe values (an exact line minimization
/// along the finite-difference gradient plus random probes). Returns the
/// largest cost reduction any probe achieves; <= 0 up to rounding when u
/// is the follower's equilibrium response.
double check_response_equilibrium(const GameSpec& spec, int k0, const Vec& x0,
                                  const Sequence& v, const Sequence& u,
                                  const ProbeOptions& options = {});

}  // namespace stackelberg
