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

// Bounded-variable dual simplex for
//
//   minimize    c^T x
//   subject to  A x + s = b,   lo <= x <= hi,
//               s_r in [0, +inf) for "<=" rows, s_r = 0 for "=" rows.
//
// Structural columns must have finite bounds. With that restriction the
// all-slack basis, with every structural placed at the bound its cost sign
// prefers, is dual feasible, so a single dual simplex handles both the first
// solve and every re-solve after bound changes (branch-and-bound keeps the
// costs fixed and only moves bounds).
//
// The basis inverse is kept as an explicit dense matrix updated by
// elementary row operations and periodically recomputed from scratch;
// recomputation inverts only the block of structural basic columns.
// Leaving rows are chosen by largest infeasibility. The entering column comes
// from a bound-flipping ratio test: boxed columns whose breakpoints the dual
// step passes move to their opposite bound, and a Harris pass picks the
// entering column among the rest. After a run of degenerate pivots the method
// switches to Bland's smallest-index rule, without flips, until progress
// resumes.

#ifndef EUA_DUAL_SIMPLEX_H_
#define EUA_DUAL_SIMPLEX_H_

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace eua::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual };

class LinearProgram {
 public:
  int AddRow(RowSense sense, double rhs);
  // `rows`/`values` are the column's nonzeros; rows must be distinct.
  int AddColumn(double cost, double lo, double hi, const std::vector<int>& rows,
                const std::vector<double>& values);

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_columns() const { return static_cast<int>(cost_.size()); }

 private:
  friend class DualSimplex;
  std::vector<RowSense> sense_;
  std::vector<double> rhs_;
  std::vector<double> cost_, lo_, hi_;
  std::vector<int> col_start_{0};
  std::vector<int> row_index_;
  std::vector<double> value_;
};

enum class LpStatus { kOptimal, kInfeasible, kLimitReached };

struct LpLimits {
  int64_t max_iterations = 0;  // 0 = unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class DualSimplex {
 public:
  explicit DualSimplex(LinearProgram lp);

  void SetColumnBounds(int col, double lo, double hi);
  double column_lower(int col) const { return lo_[col]; }
  double column_upper(int col) const { return hi_[col]; }

  LpStatus Solve(const LpLimits& limits = {});

  // Basic variable per row; structurals are 0..n-1, the slack of row r is
  // n + r. A basis taken from an earlier optimal solve stays dual feasible
  // under any bound changes and can be restored with SetBasis, which
  // refactors and falls back to the slack basis if it is singular.
  std::vector<int> basis() const;
  bool SetBasis(const std::vector<int>& basis);

  // Valid after kOptimal.
  double objective_value() const;
  double value(int col) const { return x_[col]; }

  int num_rows() const { return m_; }
  int num_columns() const { return n_; }
  int64_t total_iterations() const { return total_iterations_; }

 private:
  int num_vars() const { return n_ + m_; }
  bool IsSlack(int var) const { return var >= n_; }
  // Dot product of row r of the basis inverse with column `var` of [A | I].
  double RowTimesColumn(const double* row, int var) const;
  void ColumnOfInverseTimes(int var, std::vector<double>* out) const;
  void RowOfInverse(int r, std::vector<double>* out) const;

  bool Refactor();
  void ResetToSlackBasis();
  void ComputePrimal();
  void ComputeDuals();
  void PlaceNonbasicByCostSign();
  bool PrimalFeasible() const;
  // Largest |A x + s - b| over rows.
  double PrimalResidual() const;

  int m_ = 0;
  int n_ = 0;
  std::vector<double> rhs_;
  std::vector<double> cost_;  // size n + m, slacks cost 0
  std::vector<double> lo_, hi_;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;

  std::vector<int> basis_;      // row -> variable
  std::vector<int> position_;   // variable -> row, or -1 when nonbasic
  std::vector<char> at_upper_;  // nonbasic placement
  std::vector<double> binv_;    // m x m, column-major
  std::vector<double> x_;       // all variable values
  std::vector<double> d_;       // reduced costs (0 for basic)
  int updates_since_refactor_ = 0;
  int64_t total_iterations_ = 0;

  // Scratch.
  std::vector<double> alpha_row_;
  std::vector<double> alpha_col_;
  std::vector<double> rho_;
  std::vector<int> candidates_;
  std::vector<std::pair<double, int>> ratios_;
  std::vector<int> flips_;
  std::vector<double> flip_col_;
};

}  // namespace eua::lp

#endif  // EUA_DUAL_SIMPLEX_H_
