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

#include <algorithm>
#include <cassert>
#include <cmath>

namespace eua::lp {

namespace {

constexpr double kPrimalTolerance = 1e-9;
constexpr double kDualTolerance = 1e-9;
constexpr double kPivotTolerance = 1e-9;
constexpr double kSingularTolerance = 1e-11;
constexpr double kResidualTolerance = 1e-9;
constexpr int kRefactorInterval = 100;
constexpr int kDegenerateRunBeforeBland = 50;

}  // namespace

int LinearProgram::AddRow(RowSense sense, double rhs) {
  sense_.push_back(sense);
  rhs_.push_back(rhs);
  return num_rows() - 1;
}

int LinearProgram::AddColumn(double cost, double lo, double hi,
                             const std::vector<int>& rows,
                             const std::vector<double>& values) {
  assert(rows.size() == values.size());
  assert(std::isfinite(lo) && std::isfinite(hi) && lo <= hi);
  cost_.push_back(cost);
  lo_.push_back(lo);
  hi_.push_back(hi);
  for (size_t e = 0; e < rows.size(); ++e) {
    if (values[e] == 0.0) continue;
    row_index_.push_back(rows[e]);
    value_.push_back(values[e]);
  }
  col_start_.push_back(static_cast<int>(row_index_.size()));
  return num_columns() - 1;
}

DualSimplex::DualSimplex(LinearProgram lp)
    : m_(lp.num_rows()),
      n_(lp.num_columns()),
      rhs_(std::move(lp.rhs_)),
      col_start_(std::move(lp.col_start_)),
      row_index_(std::move(lp.row_index_)),
      value_(std::move(lp.value_)) {
  cost_ = std::move(lp.cost_);
  cost_.resize(num_vars(), 0.0);
  lo_ = std::move(lp.lo_);
  hi_ = std::move(lp.hi_);
  lo_.resize(num_vars(), 0.0);
  hi_.resize(num_vars(), kInfinity);
  for (int r = 0; r < m_; ++r) {
    if (lp.sense_[r] == RowSense::kEqual) hi_[n_ + r] = 0.0;
  }
  x_.assign(num_vars(), 0.0);
  d_.assign(num_vars(), 0.0);
  at_upper_.assign(num_vars(), 0);
  alpha_row_.assign(num_vars(), 0.0);
  alpha_col_.assign(m_, 0.0);
  rho_.assign(m_, 0.0);
  flip_col_.assign(m_, 0.0);
  ResetToSlackBasis();
}

void DualSimplex::SetColumnBounds(int col, double lo, double hi) {
  assert(col >= 0 && col < n_ && lo <= hi);
  lo_[col] = lo;
  hi_[col] = hi;
}

void DualSimplex::ResetToSlackBasis() {
  basis_.resize(m_);
  position_.assign(num_vars(), -1);
  for (int r = 0; r < m_; ++r) {
    basis_[r] = n_ + r;
    position_[n_ + r] = r;
  }
  binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
  for (int r = 0; r < m_; ++r) binv_[static_cast<size_t>(r) * m_ + r] = 1.0;
  updates_since_refactor_ = 0;
  ComputeDuals();
}

double DualSimplex::RowTimesColumn(const double* row, int var) const {
  if (IsSlack(var)) return row[var - n_];
  double sum = 0.0;
  for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
    sum += row[row_index_[e]] * value_[e];
  }
  return sum;
}

void DualSimplex::ColumnOfInverseTimes(int var, std::vector<double>* out) const {
  double* o = out->data();
  if (IsSlack(var)) {
    const double* col = &binv_[static_cast<size_t>(var - n_) * m_];
    std::copy(col, col + m_, o);
    return;
  }
  std::fill(out->begin(), out->end(), 0.0);
  for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
    const double* col = &binv_[static_cast<size_t>(row_index_[e]) * m_];
    const double v = value_[e];
    for (int r = 0; r < m_; ++r) o[r] += col[r] * v;
  }
}

void DualSimplex::RowOfInverse(int r, std::vector<double>* out) const {
  double* o = out->data();
  for (int c = 0; c < m_; ++c) o[c] = binv_[static_cast<size_t>(c) * m_ + r];
}

std::vector<int> DualSimplex::basis() const { return basis_; }

bool DualSimplex::SetBasis(const std::vector<int>& basis) {
  if (basis.size() != static_cast<size_t>(m_)) return false;
  const std::vector<int> previous = basis_;
  basis_ = basis;
  std::fill(position_.begin(), position_.end(), -1);
  for (int r = 0; r < m_; ++r) position_[basis_[r]] = r;
  if (Refactor()) return true;
  ResetToSlackBasis();
  return false;
}

bool DualSimplex::Refactor() {
  // Slack columns of B are unit vectors. With T the rows whose slack is
  // nonbasic and K = A[T, structural basics], B^-1 follows from K^-1:
  //   structural rows:  K^-1 on columns T, zero elsewhere
  //   slack row of i:   e_i - A[i, structural basics] K^-1 on columns T
  const size_t m = static_cast<size_t>(m_);
  std::vector<int> structural;  // basis positions
  std::vector<int> kernel_row(m_, -1);
  for (int r = 0; r < m_; ++r) kernel_row[r] = 0;
  for (int p = 0; p < m_; ++p) {
    const int var = basis_[p];
    if (IsSlack(var)) {
      kernel_row[var - n_] = -1;
    } else {
      structural.push_back(p);
    }
  }
  std::vector<int> rows_t;
  for (int r = 0; r < m_; ++r) {
    if (kernel_row[r] >= 0) {
      kernel_row[r] = static_cast<int>(rows_t.size());
      rows_t.push_back(r);
    }
  }
  const size_t k = structural.size();
  if (rows_t.size() != k) return false;

  // Gauss-Jordan on [K | I] with partial pivoting.
  std::vector<double> a(k * k, 0.0);
  for (size_t s = 0; s < k; ++s) {
    const int var = basis_[structural[s]];
    for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
      const int t = kernel_row[row_index_[e]];
      if (t >= 0) a[static_cast<size_t>(t) * k + s] = value_[e];
    }
  }
  std::vector<double> inv(k * k, 0.0);
  for (size_t r = 0; r < k; ++r) inv[r * k + r] = 1.0;
  for (size_t col = 0; col < k; ++col) {
    size_t pivot = col;
    double best = std::abs(a[col * k + col]);
    for (size_t r = col + 1; r < k; ++r) {
      const double v = std::abs(a[r * k + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < kSingularTolerance) return false;
    if (pivot != col) {
      std::swap_ranges(a.begin() + pivot * k, a.begin() + (pivot + 1) * k,
                       a.begin() + col * k);
      std::swap_ranges(inv.begin() + pivot * k, inv.begin() + (pivot + 1) * k,
                       inv.begin() + col * k);
    }
    const double p = 1.0 / a[col * k + col];
    double* arow = &a[col * k];
    double* irow = &inv[col * k];
    for (size_t c = 0; c < k; ++c) {
      arow[c] *= p;
      irow[c] *= p;
    }
    for (size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * k + col];
      if (f == 0.0) continue;
      double* ar = &a[r * k];
      double* ir = &inv[r * k];
      for (size_t c = col; c < k; ++c) ar[c] -= f * arow[c];
      for (size_t c = 0; c < k; ++c) ir[c] -= f * irow[c];
    }
  }
  // Row s of inv is the inverse row of the structural at position structural[s].

  // Column-major: entry (basis position p, row c) lives at c * m + p.
  std::fill(binv_.begin(), binv_.end(), 0.0);
  for (size_t s = 0; s < k; ++s) {
    const size_t p = static_cast<size_t>(structural[s]);
    const double* irow = &inv[s * k];
    for (size_t t = 0; t < k; ++t) binv_[static_cast<size_t>(rows_t[t]) * m + p] = irow[t];
  }
  for (int p = 0; p < m_; ++p) {
    const int var = basis_[p];
    if (IsSlack(var)) binv_[static_cast<size_t>(var - n_) * m + p] = 1.0;
  }
  for (size_t s = 0; s < k; ++s) {
    const int var = basis_[structural[s]];
    const double* irow = &inv[s * k];
    for (int e = col_start_[var]; e < col_start_[var + 1]; ++e) {
      const int i = row_index_[e];
      if (kernel_row[i] >= 0) continue;
      const double v = value_[e];
      const size_t p = static_cast<size_t>(position_[n_ + i]);
      for (size_t t = 0; t < k; ++t) binv_[static_cast<size_t>(rows_t[t]) * m + p] -= v * irow[t];
    }
  }
  updates_since_refactor_ = 0;
  return true;
}

double DualSimplex::PrimalResidual() const {
  std::vector<double> r(m_, 0.0);
  for (int i = 0; i < m_; ++i) r[i] = x_[n_ + i] - rhs_[i];
  for (int j = 0; j < n_; ++j) {
    if (x_[j] == 0.0) continue;
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      r[row_index_[e]] += value_[e] * x_[j];
    }
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

void DualSimplex::ComputeDuals() {
  std::vector<int> priced;
  for (int r = 0; r < m_; ++r) {
    if (cost_[basis_[r]] != 0.0) priced.push_back(r);
  }
  std::vector<double> y(m_, 0.0);
  for (int c = 0; c < m_; ++c) {
    const double* col = &binv_[static_cast<size_t>(c) * m_];
    double sum = 0.0;
    for (int r : priced) sum += cost_[basis_[r]] * col[r];
    y[c] = sum;
  }
  for (int j = 0; j < num_vars(); ++j) {
    if (position_[j] >= 0) {
      d_[j] = 0.0;
      continue;
    }
    d_[j] = cost_[j] - RowTimesColumn(y.data(), j);
  }
}

void DualSimplex::PlaceNonbasicByCostSign() {
  for (int j = 0; j < num_vars(); ++j) {
    if (position_[j] >= 0) continue;
    if (lo_[j] == hi_[j]) {
      at_upper_[j] = 0;
    } else if (d_[j] < -kDualTolerance && std::isfinite(hi_[j])) {
      at_upper_[j] = 1;
    } else if (d_[j] > kDualTolerance) {
      at_upper_[j] = 0;
    } else if (at_upper_[j] && !std::isfinite(hi_[j])) {
      at_upper_[j] = 0;
    }
    x_[j] = at_upper_[j] ? hi_[j] : lo_[j];
  }
}

void DualSimplex::ComputePrimal() {
  std::vector<double> rhs = rhs_;
  for (int j = 0; j < num_vars(); ++j) {
    if (position_[j] >= 0 || x_[j] == 0.0) continue;
    if (IsSlack(j)) {
      rhs[j - n_] -= x_[j];
    } else {
      for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
        rhs[row_index_[e]] -= value_[e] * x_[j];
      }
    }
  }
  std::vector<double> xb(m_, 0.0);
  for (int c = 0; c < m_; ++c) {
    if (rhs[c] == 0.0) continue;
    const double* col = &binv_[static_cast<size_t>(c) * m_];
    const double v = rhs[c];
    for (int r = 0; r < m_; ++r) xb[r] += col[r] * v;
  }
  for (int r = 0; r < m_; ++r) x_[basis_[r]] = xb[r];
}

bool DualSimplex::PrimalFeasible() const {
  for (int r = 0; r < m_; ++r) {
    const int v = basis_[r];
    if (x_[v] < lo_[v] - kPrimalTolerance || x_[v] > hi_[v] + kPrimalTolerance) {
      return false;
    }
  }
  return true;
}

double DualSimplex::objective_value() const {
  double obj = 0.0;
  for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
  return obj;
}

LpStatus DualSimplex::Solve(const LpLimits& limits) {
  ComputeDuals();
  PlaceNonbasicByCostSign();
  ComputePrimal();

  int degenerate_run = 0;
  bool bland = false;
  int64_t iterations = 0;
  bool verified_infeasible = false;

  while (true) {
    if (updates_since_refactor_ >= kRefactorInterval) {
      if (!Refactor()) ResetToSlackBasis();
      ComputeDuals();
      PlaceNonbasicByCostSign();
      ComputePrimal();
    }
    if (limits.max_iterations > 0 && iterations >= limits.max_iterations) {
      return LpStatus::kLimitReached;
    }
    if (limits.deadline && (iterations & 63) == 63 &&
        std::chrono::steady_clock::now() >= *limits.deadline) {
      return LpStatus::kLimitReached;
    }

    // Leaving row.
    int r = -1;
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[i];
      double infeas = 0.0;
      if (x_[v] < lo_[v] - kPrimalTolerance) {
        infeas = lo_[v] - x_[v];
      } else if (x_[v] > hi_[v] + kPrimalTolerance) {
        infeas = x_[v] - hi_[v];
      } else {
        continue;
      }
      if (bland) {
        if (r < 0 || v < basis_[r]) r = i;
      } else if (infeas > worst) {
        worst = infeas;
        r = i;
      }
    }
    if (r < 0) {
      if (updates_since_refactor_ > 0 && PrimalResidual() > kResidualTolerance) {
        // The updated inverse has drifted; refactor and continue.
        if (!Refactor()) ResetToSlackBasis();
        ComputeDuals();
        PlaceNonbasicByCostSign();
        ComputePrimal();
        if (!PrimalFeasible()) continue;
      }
      return LpStatus::kOptimal;
    }

    const int leaving = basis_[r];
    const bool to_lower = x_[leaving] < lo_[leaving];
    RowOfInverse(r, &rho_);
    const double* rho = rho_.data();

    // Ratio test over nonbasic, non-fixed variables.
    candidates_.clear();
    double theta_max = kInfinity;
    for (int j = 0; j < num_vars(); ++j) {
      if (position_[j] >= 0) continue;
      const double a = RowTimesColumn(rho, j);
      alpha_row_[j] = a;
      if (lo_[j] == hi_[j]) continue;
      bool eligible;
      if (to_lower) {
        eligible = at_upper_[j] ? a > kPivotTolerance : a < -kPivotTolerance;
      } else {
        eligible = at_upper_[j] ? a < -kPivotTolerance : a > kPivotTolerance;
      }
      if (!eligible) continue;
      candidates_.push_back(j);
      const double bound =
          bland ? std::abs(d_[j]) / std::abs(a)
                : (std::abs(d_[j]) + kDualTolerance) / std::abs(a);
      theta_max = std::min(theta_max, bound);
    }
    if (candidates_.empty()) {
      if (!verified_infeasible && updates_since_refactor_ > 0) {
        verified_infeasible = true;
        if (!Refactor()) ResetToSlackBasis();
        ComputeDuals();
        PlaceNonbasicByCostSign();
        ComputePrimal();
        continue;
      }
      return LpStatus::kInfeasible;
    }
    verified_infeasible = false;

    int q = -1;
    flips_.clear();
    if (bland) {
      const double slack = theta_max * 1e-12 + 1e-15;
      for (int j : candidates_) {
        if (std::abs(d_[j]) / std::abs(alpha_row_[j]) <= theta_max + slack) {
          q = j;  // candidates_ is ascending
          break;
        }
      }
    } else {
      // Bound-flipping ratio test: pass breakpoints of boxed variables while
      // the dual slope stays positive, then Harris among the remainder.
      ratios_.clear();
      for (int j : candidates_) {
        ratios_.push_back({std::max(0.0, std::abs(d_[j])) / std::abs(alpha_row_[j]), j});
      }
      std::sort(ratios_.begin(), ratios_.end());
      double slope = to_lower ? lo_[leaving] - x_[leaving] : x_[leaving] - hi_[leaving];
      size_t k = 0;
      for (; k + 1 < ratios_.size(); ++k) {
        const int j = ratios_[k].second;
        const double range = hi_[j] - lo_[j];
        if (!std::isfinite(range)) break;
        const double next = slope - std::abs(alpha_row_[j]) * range;
        if (next <= kPrimalTolerance) break;
        slope = next;
      }
      double bound = kInfinity;
      for (size_t i = k; i < ratios_.size(); ++i) {
        const int j = ratios_[i].second;
        bound = std::min(bound, (std::abs(d_[j]) + kDualTolerance) / std::abs(alpha_row_[j]));
      }
      double best_alpha = -1.0;
      for (size_t i = k; i < ratios_.size(); ++i) {
        const int j = ratios_[i].second;
        const double a = std::abs(alpha_row_[j]);
        if (ratios_[i].first <= bound && a > best_alpha) {
          best_alpha = a;
          q = j;
        }
      }
      for (size_t i = 0; i < k; ++i) flips_.push_back(ratios_[i].second);
    }
    assert(q >= 0);

    ColumnOfInverseTimes(q, &alpha_col_);
    const double alpha_rq = alpha_col_[r];
    if (std::abs(alpha_rq) < kPivotTolerance) {
      // Row and column disagree: the factorization has drifted.
      if (!Refactor()) ResetToSlackBasis();
      ComputeDuals();
      PlaceNonbasicByCostSign();
      ComputePrimal();
      ++iterations;
      continue;
    }

    if (!flips_.empty()) {
      for (int j : flips_) {
        const double step = at_upper_[j] ? lo_[j] - hi_[j] : hi_[j] - lo_[j];
        at_upper_[j] ^= 1;
        x_[j] = at_upper_[j] ? hi_[j] : lo_[j];
        ColumnOfInverseTimes(j, &flip_col_);
        for (int i = 0; i < m_; ++i) {
          if (flip_col_[i] != 0.0) x_[basis_[i]] -= step * flip_col_[i];
        }
      }
    }

    // Dual update.
    const double theta_d = d_[q] / alpha_rq;
    if (theta_d != 0.0) {
      for (int j = 0; j < num_vars(); ++j) {
        if (position_[j] < 0) d_[j] -= theta_d * alpha_row_[j];
      }
    }
    d_[q] = 0.0;
    d_[leaving] = -theta_d;

    // Primal update.
    const double target = to_lower ? lo_[leaving] : hi_[leaving];
    const double delta = (x_[leaving] - target) / alpha_rq;
    for (int i = 0; i < m_; ++i) {
      if (alpha_col_[i] != 0.0) x_[basis_[i]] -= delta * alpha_col_[i];
    }
    const double entering_value = x_[q] + delta;

    // Basis inverse update: pivot on (r, q). Every column c gets
    // col[i] -= alpha_i * col[r] / alpha_rq, col[r] /= alpha_rq.
    const double inv_pivot = 1.0 / alpha_rq;
    const double* a = alpha_col_.data();
    for (int c = 0; c < m_; ++c) {
      double* col = &binv_[static_cast<size_t>(c) * m_];
      const double p = col[r] * inv_pivot;
      if (p == 0.0) continue;
      for (int i = 0; i < m_; ++i) col[i] -= a[i] * p;
      col[r] = p;
    }

    basis_[r] = q;
    position_[q] = r;
    position_[leaving] = -1;
    at_upper_[leaving] = to_lower ? 0 : 1;
    x_[leaving] = target;
    x_[q] = entering_value;
    ++updates_since_refactor_;
    ++iterations;
    ++total_iterations_;

    if (std::abs(theta_d) <= 1e-12) {
      if (++degenerate_run >= kDegenerateRunBeforeBland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

}  // namespace eua::lp
