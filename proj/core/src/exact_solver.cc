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

#include "eua/exact_solver.h"

#include <algorithm>
#include <map>
#include <memory>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "absl/strings/str_cat.h"
#include "eua/baselines.h"
#include "eua/random.h"
#include "eua/dual_simplex.h"
#include "eua/validation.h"
#include "json_util.h"

namespace eua {

namespace {

using Clock = std::chrono::steady_clock;
using Choices = ReducedProblem::Assignment;

constexpr double kIntegralityTolerance = 1e-6;
constexpr double kBoundTolerance = 1e-6;
constexpr double kCostPerturbation = 1e-7;
constexpr size_t kMaxStoredBases = 20000;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<Clock::time_point> DeadlineFrom(const SolverParams& params) {
  if (params.time_limit_seconds <= 0.0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(params.time_limit_seconds));
}

int CountAssigned(const Choices& a) {
  return static_cast<int>(std::count_if(a.begin(), a.end(), [](int s) { return s >= 0; }));
}

int CountHired(const Choices& a, int num_servers) {
  std::vector<char> used(num_servers, 0);
  int hired = 0;
  for (int s : a) {
    if (s >= 0 && !used[s]) {
      used[s] = 1;
      ++hired;
    }
  }
  return hired;
}

enum class Phase { kMaximizeUsers, kMinimizeServers };

// LP-based branch-and-bound for one phase. The objective is always
// minimized internally: phase 1 minimizes -sum x, phase 2 minimizes sum y.
class BranchAndBound {
 public:
  BranchAndBound(const ReducedProblem& problem, Phase phase, int cardinality)
      : problem_(problem), phase_(phase), cardinality_(cardinality) {
    BuildModel();
  }

  int64_t ObjectiveOf(const Choices& a) const {
    return phase_ == Phase::kMaximizeUsers
               ? -CountAssigned(a)
               : CountHired(a, problem_.num_servers());
  }

  void OfferIncumbent(const Choices& a) {
    const int64_t value = ObjectiveOf(a);
    if (!has_incumbent_ || value < incumbent_value_) {
      has_incumbent_ = true;
      incumbent_value_ = value;
      incumbent_ = a;
    }
  }

  bool has_incumbent() const { return has_incumbent_; }
  const Choices& incumbent() const { return incumbent_; }
  int64_t incumbent_value() const { return incumbent_value_; }

  // Returns true when the incumbent is proven optimal (or, with no
  // incumbent, when the problem is proven infeasible).
  bool Run(std::optional<Clock::time_point> deadline, int64_t node_limit,
           double gap_tolerance, PhaseStats* stats) {
    struct OpenNode {
      int64_t bound;
      int depth;
      int64_t seq;
      int record;
    };
    auto worse = [](const OpenNode& a, const OpenNode& b) {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.seq > b.seq;
    };
    std::priority_queue<OpenNode, std::vector<OpenNode>, decltype(worse)> open(worse);

    records_.clear();
    records_.push_back({-1, -1, 0, nullptr});
    last_solved_ = -1;
    int64_t seq = 0;
    open.push({std::numeric_limits<int64_t>::min(), 0, seq++, 0});

    while (!open.empty()) {
      const OpenNode node = open.top();
      if (has_incumbent_ && node.bound > std::numeric_limits<int64_t>::min()) {
        const double gap = static_cast<double>(incumbent_value_ - node.bound);
        const double scale = std::max<double>(1.0, std::abs(incumbent_value_));
        if (node.bound >= incumbent_value_ || gap <= gap_tolerance * scale) {
          return true;  // best open bound cannot beat the incumbent
        }
      }
      if (node_limit > 0 && stats->nodes_explored >= node_limit) return false;
      if (deadline && Clock::now() >= *deadline) return false;
      open.pop();

      ApplyNode(node.record);
      NodeRecord& rec = records_[node.record];
      if (rec.parent != last_solved_ && rec.basis != nullptr) lp_->SetBasis(*rec.basis);
      rec.basis.reset();
      last_solved_ = node.record;
      lp::LpLimits limits;
      limits.deadline = deadline;
      const int64_t before = lp_->total_iterations();
      const lp::LpStatus status = lp_->Solve(limits);
      stats->simplex_iterations += lp_->total_iterations() - before;
      if (status == lp::LpStatus::kLimitReached) return false;
      ++stats->lp_relaxations_solved;
      ++stats->nodes_explored;
      if (status == lp::LpStatus::kInfeasible) continue;

      const double lp_value = lp_->objective_value();
      const int64_t bound =
          static_cast<int64_t>(std::ceil(lp_value - perturbation_total_ - kBoundTolerance));
      if (has_incumbent_ && bound >= incumbent_value_) continue;

      const int branch_var = SelectBranchingColumn();
      if (branch_var < 0) {
        Choices candidate = RoundedAssignment();
        if (IsAcceptable(candidate)) {
          OfferIncumbent(candidate);
          continue;
        }
        // Integral within tolerance but rejected by the exact check: the
        // LP solution is numerically off. Branch on anything not exactly
        // integral, otherwise give up on this node.
        const int fallback = MostFractionalColumn(0.0);
        if (fallback < 0) continue;
        Branch(node, bound, fallback, open, seq);
        continue;
      }
      Branch(node, bound, branch_var, open, seq);
    }
    return true;
  }

 private:
  struct NodeRecord {
    int parent;
    int column;
    int value;
    // Optimal basis of the parent; restored when the search jumps here.
    std::shared_ptr<const std::vector<int>> basis;
  };

  int x_column(int edge) const { return edge; }
  int y_column(int server) const { return num_edges() + server; }
  int num_edges() const { return static_cast<int>(problem_.edges.size()); }

  void BuildModel() {
    lp::LinearProgram model;
    const int m = problem_.num_servers();
    const int n = problem_.num_users();

    // Capacity rows: sum_j w_jk x_ij - C_ik y_i <= 0. When every positive
    // w_jk on server i is the same w the row is equivalent to the count row
    //   sum_{j : w_jk > 0} x_ij <= floor(C_ik / w) y_i
    // which is used instead; count rows with equal support keep only the
    // smallest right-hand side. Rows are scaled by their largest coefficient.
    std::vector<std::vector<int>> edges_of_server(m);
    std::vector<std::vector<int>> edges_of_user(n);
    for (int e = 0; e < num_edges(); ++e) {
      edges_of_server[problem_.edges[e].server].push_back(e);
      edges_of_user[problem_.edges[e].user].push_back(e);
    }
    std::vector<std::vector<int>> col_rows(num_edges() + m);
    std::vector<std::vector<double>> col_vals(num_edges() + m);
    auto add_row = [&](int server, const std::vector<int>& support,
                       const std::vector<double>& weights, double cap) {
      double scale = cap;
      for (double w : weights) scale = std::max(scale, w);
      const int row = model.AddRow(lp::RowSense::kLessEqual, 0.0);
      for (size_t t = 0; t < support.size(); ++t) {
        col_rows[x_column(support[t])].push_back(row);
        col_vals[x_column(support[t])].push_back(weights[t] / scale);
      }
      if (cap > 0.0) {
        col_rows[y_column(server)].push_back(row);
        col_vals[y_column(server)].push_back(-cap / scale);
      }
    };
    for (int i = 0; i < m; ++i) {
      std::map<std::vector<int>, int64_t> count_rows;  // support -> count
      for (int k : problem_.kept_dimensions) {
        std::vector<int> support;
        std::vector<double> weights;
        int64_t common = -1;
        for (int e : edges_of_server[i]) {
          const int64_t w = problem_.demand[problem_.edges[e].user][k];
          if (w == 0) continue;
          support.push_back(e);
          weights.push_back(static_cast<double>(w));
          common = (common < 0 || common == w) ? w : 0;
        }
        if (support.empty()) continue;
        if (common > 0) {
          const int64_t count = problem_.capacity[i][k] / common;
          auto [it, inserted] = count_rows.try_emplace(support, count);
          if (!inserted) it->second = std::min(it->second, count);
          continue;
        }
        add_row(i, support, weights, static_cast<double>(problem_.capacity[i][k]));
      }
      for (const auto& [support, count] : count_rows) {
        add_row(i, support, std::vector<double>(support.size(), 1.0),
                static_cast<double>(count));
      }
    }
    for (int j = 0; j < n; ++j) {
      const int row = model.AddRow(lp::RowSense::kLessEqual, 1.0);
      for (int e : edges_of_user[j]) {
        col_rows[x_column(e)].push_back(row);
        col_vals[x_column(e)].push_back(1.0);
      }
    }
    if (phase_ == Phase::kMinimizeServers) {
      // x_ij <= y_i. Implied by the capacity rows for integral points; in
      // the relaxation it keeps a partially used server from costing only
      // its load fraction.
      for (int e = 0; e < num_edges(); ++e) {
        const int row = model.AddRow(lp::RowSense::kLessEqual, 0.0);
        col_rows[x_column(e)].push_back(row);
        col_vals[x_column(e)].push_back(1.0);
        col_rows[y_column(problem_.edges[e].server)].push_back(row);
        col_vals[y_column(problem_.edges[e].server)].push_back(-1.0);
      }
      const int row = model.AddRow(lp::RowSense::kEqual, cardinality_);
      for (int e = 0; e < num_edges(); ++e) {
        col_rows[x_column(e)].push_back(row);
        col_vals[x_column(e)].push_back(1.0);
      }
    }

    const bool maximize_users = phase_ == Phase::kMaximizeUsers;
    root_lo_.assign(num_edges() + m, 0.0);
    root_hi_.assign(num_edges() + m, 1.0);
    for (int e = 0; e < num_edges(); ++e) {
      model.AddColumn((maximize_users ? -1.0 : 0.0) + Perturbation(x_column(e)), 0.0, 1.0,
                      col_rows[e], col_vals[e]);
    }
    for (int i = 0; i < m; ++i) {
      // Phase 1 does not price servers, so y = 1 is optimal at every node.
      const double lo = maximize_users ? 1.0 : 0.0;
      root_lo_[y_column(i)] = lo;
      model.AddColumn((maximize_users ? 0.0 : 1.0) + Perturbation(y_column(i)), lo, 1.0,
                      col_rows[y_column(i)],
                      col_vals[y_column(i)]);
    }
    lp_.emplace(std::move(model));
  }

  // Tiny deterministic cost offsets break the massive dual degeneracy of
  // unit-cost objectives. Every column lies in [0, 1], so the perturbed LP
  // value is within perturbation_total_ of the true one and bounds are
  // lowered by that amount.
  double Perturbation(int column) {
    const double u =
        static_cast<double>(Mix64(static_cast<uint64_t>(column)) >> 11) * 0x1.0p-53;
    const double eps = kCostPerturbation * (1.0 + u);
    perturbation_total_ += eps;
    return eps;
  }

  void ApplyNode(int record) {
    for (int col : applied_) lp_->SetColumnBounds(col, root_lo_[col], root_hi_[col]);
    applied_.clear();
    for (int r = record; r > 0; r = records_[r].parent) {
      const NodeRecord& rec = records_[r];
      lp_->SetColumnBounds(rec.column, rec.value, rec.value);
      applied_.push_back(rec.column);
    }
  }

  static double Fractionality(double v) { return std::abs(v - std::round(v)); }

  int ClosestToHalf(int begin, int end) const {
    int best = -1;
    double best_distance = 2.0;
    for (int c = begin; c < end; ++c) {
      const double v = lp_->value(c);
      if (Fractionality(v) <= kIntegralityTolerance) continue;
      const double distance = std::abs(v - 0.5);
      if (distance < best_distance) {
        best_distance = distance;
        best = c;
      }
    }
    return best;
  }

  int SelectBranchingColumn() const {
    if (phase_ == Phase::kMinimizeServers) {
      const int y = ClosestToHalf(num_edges(), num_edges() + problem_.num_servers());
      if (y >= 0) return y;
    }
    return ClosestToHalf(0, num_edges());
  }

  int MostFractionalColumn(double threshold) const {
    int best = -1;
    double best_frac = threshold;
    for (int c = 0; c < num_edges() + problem_.num_servers(); ++c) {
      if (lp_->column_lower(c) == lp_->column_upper(c)) continue;
      const double f = Fractionality(lp_->value(c));
      if (f > best_frac) {
        best_frac = f;
        best = c;
      }
    }
    return best;
  }

  Choices RoundedAssignment() const {
    Choices a(problem_.num_users(), -1);
    for (int e = 0; e < num_edges(); ++e) {
      if (lp_->value(x_column(e)) > 0.5) {
        const auto& edge = problem_.edges[e];
        if (a[edge.user] >= 0) return {};  // double assignment
        a[edge.user] = edge.server;
      }
    }
    return a;
  }

  bool IsAcceptable(const Choices& a) const {
    if (a.size() != static_cast<size_t>(problem_.num_users())) return false;
    if (!problem_.IsFeasible(a)) return false;
    if (phase_ == Phase::kMinimizeServers && CountAssigned(a) != cardinality_) {
      return false;
    }
    return true;
  }

  template <typename Queue>
  void Branch(const auto& node, int64_t bound, int column, Queue& open, int64_t& seq) {
    const double v = lp_->value(column);
    const int first = v >= 0.5 ? 1 : 0;
    std::shared_ptr<const std::vector<int>> basis;
    if (open.size() < kMaxStoredBases) {
      basis = std::make_shared<const std::vector<int>>(lp_->basis());
    }
    for (int value : {first, 1 - first}) {
      records_.push_back({node.record, column, value, basis});
      open.push({bound, node.depth + 1, seq++, static_cast<int>(records_.size()) - 1});
    }
  }

  const ReducedProblem& problem_;
  const Phase phase_;
  const int cardinality_;
  std::optional<lp::DualSimplex> lp_;
  std::vector<double> root_lo_, root_hi_;
  std::vector<NodeRecord> records_;
  std::vector<int> applied_;
  int last_solved_ = -1;
  double perturbation_total_ = 0.0;
  bool has_incumbent_ = false;
  int64_t incumbent_value_ = 0;
  Choices incumbent_;
};

PhaseOutcome RunPhase1(const ReducedProblem& problem,
                       std::optional<Clock::time_point> deadline,
                       const SolverParams& params, const Choices* incumbent) {
  const Clock::time_point start = Clock::now();
  PhaseOutcome out;
  Choices initial(problem.num_users(), -1);
  if (incumbent != nullptr && problem.IsFeasible(*incumbent)) initial = *incumbent;

  if (CountAssigned(initial) == problem.num_users()) {
    // Every coverable user is already allocated: the trivial bound is met.
    out.assignment = initial;
    out.objective = problem.num_users();
    out.optimal = true;
  } else {
    BranchAndBound bnb(problem, Phase::kMaximizeUsers, 0);
    bnb.OfferIncumbent(initial);
    out.optimal = bnb.Run(deadline, params.node_limit, params.relative_gap_tolerance,
                          &out.stats);
    out.assignment = bnb.incumbent();
    out.objective = CountAssigned(out.assignment);
  }
  out.stats.wall_time_seconds = SecondsSince(start);
  return out;
}

absl::StatusOr<PhaseOutcome> RunPhase2(const ReducedProblem& problem, int cardinality,
                                       std::optional<Clock::time_point> deadline,
                                       const SolverParams& params,
                                       const Choices* incumbent) {
  const Clock::time_point start = Clock::now();
  if (cardinality < 0 || cardinality > problem.num_users()) {
    return absl::FailedPreconditionError(
        absl::StrCat("phase-1 optimum ", cardinality, " is out of range [0, ",
                     problem.num_users(), "]"));
  }
  PhaseOutcome out;
  if (cardinality == 0) {
    out.assignment.assign(problem.num_users(), -1);
    out.optimal = true;
    out.stats.wall_time_seconds = SecondsSince(start);
    return out;
  }
  BranchAndBound bnb(problem, Phase::kMinimizeServers, cardinality);
  if (incumbent != nullptr && problem.IsFeasible(*incumbent) &&
      CountAssigned(*incumbent) == cardinality) {
    bnb.OfferIncumbent(*incumbent);
  }
  if (bnb.has_incumbent() && bnb.incumbent_value() == 1) {
    out.optimal = true;  // at least one server is needed for any user
  } else {
    out.optimal = bnb.Run(deadline, params.node_limit, params.relative_gap_tolerance,
                          &out.stats);
  }
  if (!bnb.has_incumbent()) {
    if (out.optimal) {
      return absl::FailedPreconditionError(absl::StrCat(
          "no feasible assignment allocates ", cardinality, " users"));
    }
    return absl::DeadlineExceededError(
        "phase 2 stopped before finding an assignment of the required size");
  }
  out.assignment = bnb.incumbent();
  out.objective = CountHired(out.assignment, problem.num_servers());
  out.stats.wall_time_seconds = SecondsSince(start);
  return out;
}

}  // namespace

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "OPTIMAL";
    case SolveStatus::kFeasibleTimeLimit:
      return "FEASIBLE_TIME_LIMIT";
    case SolveStatus::kInfeasibleInput:
      return "INFEASIBLE_INPUT";
  }
  return "UNKNOWN";
}

std::optional<SolveStatus> ParseSolveStatus(std::string_view name) {
  for (SolveStatus s : {SolveStatus::kOptimal, SolveStatus::kFeasibleTimeLimit,
                        SolveStatus::kInfeasibleInput}) {
    if (SolveStatusName(s) == name) return s;
  }
  return std::nullopt;
}

Allocation ReducedProblem::Lift(const Choices& assignment) const {
  Allocation alloc;
  for (int j = 0; j < num_users(); ++j) {
    if (assignment[j] >= 0) alloc.Assign(users[j], servers[assignment[j]]);
  }
  return alloc;
}

ReducedProblem::Assignment ReducedProblem::Reduce(const Allocation& alloc) const {
  Choices out(num_users(), -1);
  for (const eua::Assignment& a : alloc.assignments()) {
    auto u = std::lower_bound(users.begin(), users.end(), a.user);
    auto s = std::lower_bound(servers.begin(), servers.end(), a.server);
    if (u == users.end() || *u != a.user || s == servers.end() || *s != a.server) {
      continue;
    }
    const Edge probe{static_cast<int>(s - servers.begin()), static_cast<int>(u - users.begin())};
    const bool is_edge = std::binary_search(
        edges.begin(), edges.end(), probe, [](const Edge& x, const Edge& y) {
          return x.server != y.server ? x.server < y.server : x.user < y.user;
        });
    if (is_edge) out[probe.user] = probe.server;
  }
  return out;
}

bool ReducedProblem::IsFeasible(const Choices& assignment) const {
  if (assignment.size() != static_cast<size_t>(num_users())) return false;
  std::vector<ResourceVector> load;
  load.reserve(servers.size());
  for (const ResourceVector& c : capacity) load.push_back(ResourceVector::Zero(c.dimension()));
  for (int j = 0; j < num_users(); ++j) {
    const int s = assignment[j];
    if (s < 0) continue;
    if (s >= num_servers()) return false;
    const Edge probe{s, j};
    const bool is_edge = std::binary_search(
        edges.begin(), edges.end(), probe, [](const Edge& x, const Edge& y) {
          return x.server != y.server ? x.server < y.server : x.user < y.user;
        });
    if (!is_edge) return false;
    load[s] += demand[j];
  }
  for (int i = 0; i < num_servers(); ++i) {
    if (!load[i].FitsWithin(capacity[i])) return false;
  }
  return true;
}

ReducedProblem Preprocess(const Instance& instance, const CoverageGraph& cov,
                          bool drop_redundant_dimensions) {
  ReducedProblem p;
  p.num_original_users = instance.num_users();
  const int d = instance.dimension;

  std::vector<char> server_used(instance.num_servers(), 0);
  for (const User& u : instance.users) {
    auto list = cov.ServersCovering(u.id);
    if (list.empty()) {
      p.uncovered_users.push_back(u.id);
      continue;
    }
    for (ServerId s : list) server_used[s.index()] = 1;
  }
  std::vector<int> server_pos(instance.num_servers(), -1);
  for (const EdgeServer& s : instance.servers) {
    if (!server_used[s.id.index()]) {
      p.idle_servers.push_back(s.id);
      continue;
    }
    server_pos[s.id.index()] = p.num_servers();
    p.servers.push_back(s.id);
    p.capacity.push_back(s.capacity);
  }
  for (const User& u : instance.users) {
    if (cov.ServersCovering(u.id).empty()) continue;
    const int j = p.num_users();
    p.users.push_back(u.id);
    p.demand.push_back(u.demand);
    for (ServerId s : cov.ServersCovering(u.id)) {
      p.edges.push_back({server_pos[s.index()], j});
    }
  }
  std::sort(p.edges.begin(), p.edges.end(),
            [](const ReducedProblem::Edge& a, const ReducedProblem::Edge& b) {
              return a.server != b.server ? a.server < b.server : a.user < b.user;
            });

  // A dimension is redundant when every server can hold all of the users it
  // covers in that dimension.
  std::vector<char> redundant(d, 0);
  if (drop_redundant_dimensions) {
    std::vector<ResourceVector> covered_total(p.num_servers(), ResourceVector::Zero(d));
    for (const auto& e : p.edges) covered_total[e.server] += p.demand[e.user];
    for (int k = 0; k < d; ++k) {
      redundant[k] = 1;
      for (int i = 0; i < p.num_servers(); ++i) {
        if (covered_total[i][k] > p.capacity[i][k]) {
          redundant[k] = 0;
          break;
        }
      }
    }
    // Capacity rows are also what ties x to y, so every user must keep a
    // positive demand in some retained dimension.
    for (int j = 0; j < p.num_users(); ++j) {
      bool linked = false;
      for (int k = 0; k < d && !linked; ++k) linked = !redundant[k] && p.demand[j][k] > 0;
      for (int k = 0; k < d && !linked; ++k) {
        if (redundant[k] && p.demand[j][k] > 0) {
          redundant[k] = 0;
          linked = true;
        }
      }
    }
  }
  for (int k = 0; k < d; ++k) {
    (redundant[k] ? p.dropped_dimensions : p.kept_dimensions).push_back(k);
  }
  return p;
}

PhaseOutcome SolvePhase1(const ReducedProblem& problem, const SolverParams& params,
                         const Choices* incumbent) {
  return RunPhase1(problem, DeadlineFrom(params), params, incumbent);
}

absl::StatusOr<PhaseOutcome> SolvePhase2(const ReducedProblem& problem,
                                         int phase1_optimum,
                                         const SolverParams& params,
                                         const Choices* incumbent) {
  return RunPhase2(problem, phase1_optimum, DeadlineFrom(params), params, incumbent);
}

SolveResult SolveLexicographic(const Instance& instance, const SolverParams& params) {
  SolveResult result;
  if (absl::Status st = ValidateInstance(instance); !st.ok()) {
    result.status = SolveStatus::kInfeasibleInput;
    result.message = std::string(st.message());
    return result;
  }
  const std::optional<Clock::time_point> deadline = DeadlineFrom(params);
  const CoverageGraph cov = BuildCoverage(instance);
  const ReducedProblem problem = Preprocess(instance, cov, params.preprocess);

  // Warm start: the greedy baseline, or the caller's allocation when it is
  // feasible and at least as good.
  Choices start = problem.Reduce(SolveGreedy(instance, cov));
  if (params.warm_start) {
    absl::StatusOr<ValidationReport> report =
        ValidateAllocation(instance, cov, *params.warm_start);
    if (report.ok() && report->feasible()) {
      Choices provided = problem.Reduce(*params.warm_start);
      if (CountAssigned(provided) >= CountAssigned(start)) start = provided;
    }
  }

  const PhaseOutcome phase1 = RunPhase1(problem, deadline, params, &start);
  result.phase1_stats = phase1.stats;
  if (!phase1.optimal) {
    result.allocation = problem.Lift(phase1.assignment);
    result.status = SolveStatus::kFeasibleTimeLimit;
    return result;
  }
  result.phase1_optimum = phase1.objective;

  // Phase-2 incumbent: the fewest-server assignment of the right size among
  // the phase-1 solution and the warm start.
  const Choices* incumbent = &phase1.assignment;
  if (CountAssigned(start) == phase1.objective &&
      CountHired(start, problem.num_servers()) <
          CountHired(phase1.assignment, problem.num_servers())) {
    incumbent = &start;
  }
  absl::StatusOr<PhaseOutcome> phase2 =
      RunPhase2(problem, phase1.objective, deadline, params, incumbent);
  if (!phase2.ok()) {
    // Phase 2 always has the phase-1 solution as a feasible start.
    result.allocation = problem.Lift(phase1.assignment);
    result.status = SolveStatus::kFeasibleTimeLimit;
    result.message = std::string(phase2.status().message());
    return result;
  }
  result.phase2_stats = phase2->stats;
  result.allocation = problem.Lift(phase2->assignment);
  if (phase2->optimal) {
    result.phase2_optimum = phase2->objective;
    result.status = SolveStatus::kOptimal;
  } else {
    result.status = SolveStatus::kFeasibleTimeLimit;
  }
  return result;
}

std::string SerializeSolveResultJson(const Instance& instance, const SolveResult& result) {
  using internal::Json;
  auto stats_json = [](const PhaseStats& s) {
    Json j;
    j["nodes_explored"] = s.nodes_explored;
    j["lp_relaxations_solved"] = s.lp_relaxations_solved;
    j["simplex_iterations"] = s.simplex_iterations;
    j["wall_time_seconds"] = s.wall_time_seconds;
    return j;
  };
  Json j;
  j["status"] = std::string(SolveStatusName(result.status));
  j["phase1_optimum"] = result.phase1_optimum ? Json(*result.phase1_optimum) : Json(nullptr);
  j["phase2_optimum"] = result.phase2_optimum ? Json(*result.phase2_optimum) : Json(nullptr);
  j["allocated_count"] = result.allocation.size();
  j["hired_count"] = result.allocation.HiredServers().size();
  j["stats"] = {{"phase1", stats_json(result.phase1_stats)},
                {"phase2", stats_json(result.phase2_stats)}};
  if (!result.message.empty()) j["message"] = result.message;
  if (result.status != SolveStatus::kInfeasibleInput) {
    j["allocation"] = internal::AllocationToJson(instance, result.allocation);
  }
  return j.dump(2) + "\n";
}

}  // namespace eua
