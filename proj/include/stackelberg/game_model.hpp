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

#include "stackelberg/matkit.hpp"

namespace stackelberg {

/// Problem data of a finite-horizon LQ Stackelberg game.
///
/// Player 1 (control u, dimension m1) is the follower and player 2
/// (control v, dimension m2) is the leader. Stage costs run over
/// k = t..N-1 and the terminal cost is charged at N.
struct GameSpec {
  Mat A, B1, B2;
  Mat Q1, Q2;
  Mat R1, R2;
  Mat W1, W2;
  Mat G1, G2;
  int N = 0;
  int t = 0;
  Vec x;

  int n() const { return static_cast<int>(A.rows()); }
  int m1() const { return static_cast<int>(B1.cols()); }
  int m2() const { return static_cast<int>(B2.cols()); }
};

enum class Player { kFollower = 1, kLeader = 2 };

/// A sequence of vectors indexed by absolute time, starting at `start`.
class Sequence {
 public:
  Sequence() = default;
  Sequence(int start, std::vector<Vec> values)
      : start_(start), values_(std::move(values)) {}
  /// `count` zero vectors of length `dim` starting at `start`.
  static Sequence zeros(int start, int count, int dim);

  int start() const { return start_; }
  /// One past the last index.
  int end() const { return start_ + static_cast<int>(values_.size()); }
  int size() const { return static_cast<int>(values_.size()); }
  bool contains(int k) const { return k >= start_ && k < end(); }

  const Vec& operator[](int k) const { return values_.at(k - start_); }
  Vec& operator[](int k) { return values_.at(k - start_); }

  /// Copy restricted to [from, end()).
  Sequence tail(int from) const;
  /// Same sequence with the entry at k replaced.
  Sequence with(int k, const Vec& value) const;

  /// Concatenation of all entries into one vector.
  Vec stacked() const;
  static Sequence unstack(int start, const Vec& flat, int dim);

  double max_abs_diff(const Sequence& other) const;

 private:
  int start_ = 0;
  std::vector<Vec> values_;
};

/// State, controls and the follower's backward variable pi over a window.
struct Trajectory {
  Sequence X;   // k0..N
  Sequence u;   // k0..N-1
  Sequence v;   // k0..N-1
  Sequence pi;  // k0..N, pi_N == 0
};

/// Lists every violated GameSpec invariant; empty means valid.
std::vector<std::string> validate(const GameSpec& spec);

/// X_{k0} = x0 and X_{k+1} = A X_k + B1 u_k + B2 v_k up to N.
Sequence simulate(const GameSpec& spec, int k0, const Vec& x0,
                  const Sequence& u, const Sequence& v);

/// J_i(k0, x0; u, v) with the state generated by simulate.
double cost(const GameSpec& spec, Player which, int k0, const Vec& x0,
            const Sequence& u, const Sequence& v);

}  // namespace stackelberg
