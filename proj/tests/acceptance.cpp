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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stackelberg/equilibrium.hpp"
#include "stackelberg/follower.hpp"
#include "stackelberg/game_io.hpp"
#include "stackelberg/precommit.hpp"
#include "stackelberg/verify.hpp"
#include "test_support.hpp"

using namespace stackelberg;

namespace {

const std::string kData = STACKELBERG_DATA_DIR;
constexpr std::uint64_t kSeed = 20260415;

struct Outcome {
  bool pass = true;
  std::string detail;
};

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// The random instances shared by criteria 4 to 7.
struct Instance {
  GameSpec spec;
  FollowerCoeffs fc;
  Perturbation p;
};

std::vector<Instance> make_instances(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    Instance in;
    in.spec = testsupport::random_game(rng);
    const GameSpec& s = in.spec;
    in.fc = riccati(s);
    in.p.t0 = s.t;
    in.p.x = s.x;
    in.p.v = Sequence::unstack(
        s.t, testsupport::normal_vector(rng, (s.N - s.t) * s.m2()), s.m2());
    in.p.k = testsupport::uniform_int(rng, s.t, s.N - 1);
    in.p.eps = testsupport::normal_vector(rng, 1)(0);
    in.p.vtil = testsupport::normal_vector(rng, s.m2());
    out.push_back(std::move(in));
  }
  return out;
}

const std::vector<Instance>& instances() {
  static const std::vector<Instance> all = make_instances(200, kSeed);
  return all;
}

Outcome criterion1() {
  const GameSpec s = load_game_spec(kData + "/example1.json");
  const PrecommitSolution p = solve_precommit(s, 0, s.x);
  const double u[] = {-0.4240, -0.1843, -0.0823};
  const double v[] = {-0.3363, 0.0465, 0.0626};
  double err = std::abs(p.X_hat[1](0) - 0.2397);
  for (int k = 0; k < 3; ++k) {
    err = std::max({err, std::abs(p.u_hat[k](0) - u[k]), std::abs(p.v_hat[k](0) - v[k])});
  }
  const PrecommitSolution q = solve_precommit(s, 1, Vec::Constant(1, 0.2397));
  const double u1[] = {-0.0942, -0.0342};
  const double v1[] = {-0.0856, 0.0086};
  for (int k = 1; k < 3; ++k) {
    err = std::max({err, std::abs(q.u_hat[k](0) - u1[k - 1]),
                    std::abs(q.v_hat[k](0) - v1[k - 1])});
  }
  const double gap = std::abs(p.v_hat[1](0) - q.v_hat[1](0));
  Outcome o;
  o.pass = err <= 1e-3 && gap >= 0.1;
  o.detail = "max err " + fmt("%.2e", err) + ", v gap at k=1 " + fmt("%.4f", gap);
  return o;
}

Outcome criterion2() {
  const GameSpec s = load_game_spec(kData + "/example2.json");
  const FollowerCoeffs fc = riccati(s);
  const LeaderCoeffs lc = leader_coeffs(s, fc, 0);
  const TRecursion tr = t_recursion(lc, s, fc);
  const EquilibriumSolution sol = solve_equilibrium(s, fc, lc, tr, s.x);

  const Mat M[] = {mat2(2.1841, 2.6175, 2.6175, 9.1965),
                   mat2(2.1360, 2.6922, 2.6922, 8.5144),
                   mat2(1.8000, 2.0800, 2.0800, 5.0000)};
  const Mat F = mat2(1.45, 0.3, 0.3, 1.0);
  const Mat I[] = {mat2(1.0371, -0.0969, 0.0417, 0.8908),
                   mat2(0.9552, 0.1173, -0.0019, 0.9903),
                   mat2(0.9971, 0.0650, -0.0547, 1.0858)};
  const Vec u[] = {vec2(-0.3711, -0.3204), vec2(-0.1583, -0.0632), vec2(-0.0456, -0.0139)};
  const Vec v[] = {vec2(0.0053, -0.0057), vec2(0.0230, 0.0462), vec2(0.0254, 0.0094)};
  const Vec X1 = vec2(0.3003, -0.0883);

  double eM = 0, eF = 0, eI = 0, eu = 0, ev = 0;
  for (int k = 0; k < 3; ++k) {
    eM = std::max(eM, max_abs(fc.stage(k).M - M[k]));
    eF = std::max(eF, max_abs(lc.stage(k).F - F));
    eI = std::max(eI, max_abs(tr.stage(k).coupling - I[k]));
    eu = std::max(eu, max_abs(sol.u_star[k] - u[k]));
    ev = std::max(ev, max_abs(sol.v_star[k] - v[k]));
  }
  const double eX = max_abs(sol.X_star[1] - X1);
  auto mark = [](double e) { return e <= 1e-3 ? "ok" : "off"; };
  Outcome o;
  o.pass = std::max({eM, eF, eI, eu, ev, eX}) <= 1e-3;
  o.detail = "M " + fmt("%.1e", eM) + " " + mark(eM) + ", F " + fmt("%.1e", eF) + " " +
             mark(eF) + ", I-(C-BFD)T " + fmt("%.1e", eI) + " " + mark(eI) + ", u* " +
             fmt("%.1e", eu) + " " + mark(eu) + ", v* " + fmt("%.1e", ev) + " " +
             mark(ev) + ", X*_1 " + fmt("%.1e", eX) + " " + mark(eX);
  return o;
}

Outcome criterion3() {
  const GameSpec s = load_game_spec(kData + "/example2.json");
  const EquilibriumSolution sol = solve_equilibrium(s, 0, s.x);
  const ConsistencyReport c = time_consistency_check(s, sol, 1e-6);
  Outcome o;
  o.pass = c.consistent && c.rows.size() == 2;
  std::ostringstream os;
  for (const auto& row : c.rows) {
    os << "tau=" << row.tau << " dv " << fmt("%.2e", row.max_dv) << " du "
       << fmt("%.2e", row.max_du) << "; ";
  }
  o.detail = os.str();
  return o;
}

Outcome criterion4() {
  double worst = 0.0;
  for (const auto& in : instances()) {
    const VariationReport r = variation_formula(in.spec, in.fc, in.p);
    worst = std::max(worst, r.abs_error / (1.0 + std::abs(r.lhs)));
  }
  return {worst <= 1e-8, "200 instances, max relative gap " + fmt("%.2e", worst)};
}

Outcome criterion5() {
  double worst = 0.0;
  for (const auto& in : instances()) {
    worst = std::max(worst, variation_formula(in.spec, in.fc, in.p).rearranged_gap);
  }
  return {worst <= 1e-10, "max coefficient gap " + fmt("%.2e", worst)};
}

Outcome criterion6() {
  double worst_u = 0.0, worst_g = 0.0;
  for (const auto& in : instances()) {
    const GameSpec& s = in.spec;
    const Trajectory tr = response(s, in.fc, s.t, s.x, in.p.v);
    const Vec ref = testsupport::follower_oracle(s, s.t, s.x, in.p.v.stacked());
    worst_u = std::max(worst_u, max_abs(tr.u.stacked() - ref));
    for (int k = s.t; k < s.N; ++k) {
      worst_g = std::max(worst_g,
                         max_abs(follower_stage_gradient(s, s.t, s.x, tr.u, in.p.v, k)));
    }
  }
  return {worst_u <= 1e-7 && worst_g <= 1e-8,
          "max |u - normal eq| " + fmt("%.2e", worst_u) + ", max stage gradient " +
              fmt("%.2e", worst_g)};
}

Outcome criterion7() {
  double res = 0.0, gain = -1.0, route = 0.0;
  int solved = 0, skipped = 0;
  for (const auto& in : instances()) {
    const GameSpec& s = in.spec;
    try {
      const LeaderCoeffs lc = leader_coeffs(s, in.fc, s.t);
      const TRecursion tr = t_recursion(lc, s, in.fc);
      const EquilibriumSolution sol = solve_equilibrium(s, in.fc, lc, tr, s.x);
      const StationaryReport st = stationary_residual(s, in.fc, lc, tr, sol);
      res = std::max({res, st.max_residual_T, st.max_residual_raw});
      route = std::max(route, st.route_gap);
      gain = std::max(gain, leader_deviation_test(s, in.fc, sol));
      ++solved;
    } catch (const NotSolvable&) {
      ++skipped;
    }
  }
  return {solved > 0 && res <= 1e-9 && gain <= 1e-8 && route <= 1e-8,
          std::to_string(solved) + " solvable (" + std::to_string(skipped) +
              " not), residual " + fmt("%.2e", res) + ", leader gain " +
              fmt("%.2e", gain) + ", route gap " + fmt("%.2e", route)};
}

Outcome criterion8() {
  std::mt19937_64 rng(kSeed + 8);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const GameSpec s = testsupport::random_game(rng);
    const FollowerCoeffs fc = riccati(s);
    const Sequence v = Sequence::unstack(
        s.t, testsupport::normal_vector(rng, (s.N - s.t) * s.m2()), s.m2());
    const Trajectory tr = response(s, fc, s.t, s.x, v);
    const Sequence Z = adjoint_Z(s, tr.X);
    const int k1 = testsupport::uniform_int(rng, s.t, s.N - 1);
    const int k2 = testsupport::uniform_int(rng, k1, s.N - 1);
    const Sequence a = adjoint_Zbar(s, fc, s.t, k1, tr.X, v, tr.pi, Z);
    const Sequence b = adjoint_Zbar(s, fc, s.t, k2, tr.X, v, tr.pi, Z);
    for (int l = k2; l <= s.N; ++l) worst = std::max(worst, max_abs(a[l] - b[l]));
  }
  return {worst <= 1e-10, "50 instances, max tail gap " + fmt("%.2e", worst)};
}

Outcome criterion9() {
  GameSpec s = load_game_spec(kData + "/example2.json");
  s.W2.setZero();
  s.R2.setZero();
  try {
    solve_equilibrium(s, 0, s.x);
    return {false, "solver returned a solution"};
  } catch (const NotSolvable& e) {
    return {e.matrix() == "F" && e.stage() == 0, std::string("NotSolvable: ") + e.what()};
  } catch (const std::exception& e) {
    return {false, std::string("unexpected exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = no runtime bound
  };
  const std::vector<Criterion> all = {
      {1, "Example 1 precommitted regression", criterion1, 1.0},
      {2, "Example 2 equilibrium regression", criterion2, 1.0},
      {3, "Example 2 time consistency", criterion3, 0.0},
      {4, "variation identity, random instances", criterion4, 30.0},
      {5, "linear coefficient forms agree", criterion5, 0.0},
      {6, "follower response optimality", criterion6, 0.0},
      {7, "equilibrium stationarity and deviations", criterion7, 0.0},
      {8, "second adjoint tails coincide", criterion8, 0.0},
      {9, "singular F reported as not solvable", criterion9, 0.0},
  };
  instances();  // build outside the timed sections
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += " [over time budget]";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.3f s) %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures,
              all.size());
  return failures == 0 ? 0 : 1;
}
