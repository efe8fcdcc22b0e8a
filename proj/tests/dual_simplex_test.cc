// Copyright 2026 The EUA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "eua/dual_simplex.h"

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace eua::lp {
namespace {

TEST(DualSimplexTest, TwoVariablePackingLp) {
  // min -x - y  s.t.  x + 2y <= 4,  3x + y <= 6,  0 <= x, y <= 10.
  LinearProgram lp;
  const int r0 = lp.AddRow(RowSense::kLessEqual, 4);
  const int r1 = lp.AddRow(RowSense::kLessEqual, 6);
  lp.AddColumn(-1, 0, 10, {r0, r1}, {1, 3});
  lp.AddColumn(-1, 0, 10, {r0, r1}, {2, 1});
  DualSimplex s(lp);
  ASSERT_EQ(s.Solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.value(0), 1.6, 1e-9);
  EXPECT_NEAR(s.value(1), 1.2, 1e-9);
  EXPECT_NEAR(s.objective_value(), -2.8, 1e-9);
}

TEST(DualSimplexTest, EqualityRow) {
  // min x + 2y  s.t.  x + y = 1.5,  0 <= x, y <= 1.
  LinearProgram lp;
  const int r = lp.AddRow(RowSense::kEqual, 1.5);
  lp.AddColumn(1, 0, 1, {r}, {1});
  lp.AddColumn(2, 0, 1, {r}, {1});
  DualSimplex s(lp);
  ASSERT_EQ(s.Solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.value(0), 1.0, 1e-9);
  EXPECT_NEAR(s.value(1), 0.5, 1e-9);
  EXPECT_NEAR(s.objective_value(), 2.0, 1e-9);
}

TEST(DualSimplexTest, DetectsInfeasibility) {
  LinearProgram lp;
  const int r = lp.AddRow(RowSense::kEqual, 5);
  lp.AddColumn(0, 0, 1, {r}, {1});
  lp.AddColumn(0, 0, 1, {r}, {1});
  DualSimplex s(lp);
  EXPECT_EQ(s.Solve(), LpStatus::kInfeasible);
}

TEST(DualSimplexTest, IterationLimit) {
  LinearProgram lp;
  const int r0 = lp.AddRow(RowSense::kLessEqual, 4);
  const int r1 = lp.AddRow(RowSense::kEqual, 3);
  lp.AddColumn(-1, 0, 10, {r0, r1}, {1, 3});
  lp.AddColumn(-1, 0, 10, {r0, r1}, {2, 1});
  DualSimplex s(lp);
  LpLimits limits;
  limits.max_iterations = 1;
  EXPECT_EQ(s.Solve(limits), LpStatus::kLimitReached);
}

// Optimum of min c.x over {A x <= b, 0 <= x <= u} in two variables by
// enumerating every intersection of two constraint lines.
std::optional<double> VertexOptimum(const std::vector<std::array<double, 3>>& rows,
                                    double c0, double c1, double u0, double u1) {
  std::vector<std::array<double, 3>> lines = rows;  // a0 x + a1 y <= b
  lines.push_back({-1, 0, 0});
  lines.push_back({0, -1, 0});
  lines.push_back({1, 0, u0});
  lines.push_back({0, 1, u1});
  std::optional<double> best;
  for (size_t p = 0; p < lines.size(); ++p) {
    for (size_t q = p + 1; q < lines.size(); ++q) {
      const double det = lines[p][0] * lines[q][1] - lines[p][1] * lines[q][0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (lines[p][2] * lines[q][1] - lines[p][1] * lines[q][2]) / det;
      const double y = (lines[p][0] * lines[q][2] - lines[p][2] * lines[q][0]) / det;
      bool ok = true;
      for (const auto& l : lines) ok = ok && l[0] * x + l[1] * y <= l[2] + 1e-9;
      if (!ok) continue;
      const double v = c0 * x + c1 * y;
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

TEST(DualSimplexTest, MatchesVertexEnumerationOnRandomLps) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), rhs(-1.0, 6.0), ub(0.5, 4.0);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int rows = 1 + trial % 4;
    std::vector<std::array<double, 3>> a(rows);
    LinearProgram lp;
    std::vector<int> ids;
    for (auto& row : a) {
      row = {coef(rng), coef(rng), rhs(rng)};
      ids.push_back(lp.AddRow(RowSense::kLessEqual, row[2]));
    }
    const double c0 = coef(rng), c1 = coef(rng), u0 = ub(rng), u1 = ub(rng);
    std::vector<double> col0, col1;
    for (const auto& row : a) {
      col0.push_back(row[0]);
      col1.push_back(row[1]);
    }
    lp.AddColumn(c0, 0, u0, ids, col0);
    lp.AddColumn(c1, 0, u1, ids, col1);
    DualSimplex s(lp);
    const LpStatus status = s.Solve();
    const std::optional<double> expected = VertexOptimum(a, c0, c1, u0, u1);
    if (!expected) {
      EXPECT_EQ(status, LpStatus::kInfeasible) << "trial " << trial;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective_value(), *expected, 1e-7) << "trial " << trial;
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
  EXPECT_GT(infeasible, 10);
}

// Random 0-1 knapsack-style LP relaxations: many boxed columns, few rows.
LinearProgram RandomBoxedLp(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_int_distribution<int> w(0, 9);
  LinearProgram lp;
  std::vector<int> ids;
  for (int r = 0; r < rows; ++r) ids.push_back(lp.AddRow(RowSense::kLessEqual, 5 + w(rng) * 2));
  for (int c = 0; c < cols; ++c) {
    std::vector<int> rr;
    std::vector<double> vv;
    for (int r = 0; r < rows; ++r) {
      const int v = w(rng);
      if (v > 0 && v < 7) {
        rr.push_back(ids[r]);
        vv.push_back(v);
      }
    }
    lp.AddColumn(-1.0 - w(rng), 0, 1, rr, vv);
  }
  return lp;
}

TEST(DualSimplexTest, ResolveAfterBoundChangeMatchesFreshSolve) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    LinearProgram lp = RandomBoxedLp(rng, 4, 12);
    DualSimplex warm(lp);
    ASSERT_EQ(warm.Solve(), LpStatus::kOptimal);
    const std::vector<int> root_basis = warm.basis();
    const int col = static_cast<int>(rng() % 12);
    const double fix = static_cast<double>(rng() % 2);
    warm.SetColumnBounds(col, fix, fix);
    const LpStatus warm_status = warm.Solve();

    DualSimplex fresh(lp);
    fresh.SetColumnBounds(col, fix, fix);
    const LpStatus fresh_status = fresh.Solve();
    ASSERT_EQ(warm_status, fresh_status);
    if (warm_status == LpStatus::kOptimal) {
      EXPECT_NEAR(warm.objective_value(), fresh.objective_value(), 1e-7);
    }

    // Restoring the root basis after undoing the fix returns to the root.
    warm.SetColumnBounds(col, 0, 1);
    ASSERT_TRUE(warm.SetBasis(root_basis));
    ASSERT_EQ(warm.Solve(), LpStatus::kOptimal);
    DualSimplex root(lp);
    ASSERT_EQ(root.Solve(), LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective_value(), root.objective_value(), 1e-7);
  }
}

TEST(DualSimplexTest, SingularBasisFallsBackToSlacks) {
  LinearProgram lp;
  const int r0 = lp.AddRow(RowSense::kLessEqual, 1);
  const int r1 = lp.AddRow(RowSense::kLessEqual, 1);
  lp.AddColumn(-1, 0, 1, {r0, r1}, {1, 1});
  lp.AddColumn(-1, 0, 1, {r0, r1}, {2, 2});
  DualSimplex s(lp);
  EXPECT_FALSE(s.SetBasis({0, 1}));
  EXPECT_EQ(s.basis(), (std::vector<int>{2, 3}));
  ASSERT_EQ(s.Solve(), LpStatus::kOptimal);
  EXPECT_NEAR(s.objective_value(), -1.0, 1e-9);
}

}  // namespace
}  // namespace eua::lp
