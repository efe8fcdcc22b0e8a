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

// Exact lexicographic solver for edge user allocation.
//
// The 0-1 program has assignment variables x_ij (user j on server i, defined
// only where server i covers user j) and hire variables y_i:
//
//   phase 1:  maximize  sum x_ij
//   phase 2:  minimize  sum y_i   subject to  sum x_ij = phase-1 optimum
//   both:     sum_j w_jk x_ij <= C_ik y_i     for every server i, dimension k
//             sum_i x_ij <= 1                 for every user j
//
// Each phase is solved by LP-based branch-and-bound: the bound at a node is
// the LP relaxation with x, y in [0, 1] and that node's fixings, solved by
// the dual simplex in dual_simplex.h. Nodes are taken best bound first
// (rounded to the integer objective), deeper nodes first among equal bounds.
// Phase 1 branches on the fractional x closest to 1/2; phase 2 on the
// fractional y closest to 1/2, then x. Ties go to the lowest (server, user).
// Every incumbent is re-checked in exact integer arithmetic.

#ifndef EUA_EXACT_SOLVER_H_
#define EUA_EXACT_SOLVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "eua/coverage.h"
#include "eua/types.h"

namespace eua {

enum class SolveStatus { kOptimal, kFeasibleTimeLimit, kInfeasibleInput };

std::string_view SolveStatusName(SolveStatus status);
std::optional<SolveStatus> ParseSolveStatus(std::string_view name);

struct SolverParams {
  double time_limit_seconds = 0.0;  // 0 = unlimited; shared by both phases
  int64_t node_limit = 0;           // per phase; 0 = unlimited
  double relative_gap_tolerance = 0.0;
  std::optional<Allocation> warm_start;
  // When false, only users without any covering server are removed.
  bool preprocess = true;
};

struct PhaseStats {
  int64_t nodes_explored = 0;
  int64_t lp_relaxations_solved = 0;
  int64_t simplex_iterations = 0;
  double wall_time_seconds = 0.0;
};

struct SolveResult {
  Allocation allocation;
  // Set only when the corresponding phase was proven optimal.
  std::optional<int> phase1_optimum;
  std::optional<int> phase2_optimum;
  SolveStatus status = SolveStatus::kInfeasibleInput;
  PhaseStats phase1_stats;
  PhaseStats phase2_stats;
  std::string message;  // diagnostic for kInfeasibleInput
};

// Decision space left after sound reductions. Indices are 0-based positions
// in `servers` / `users`; edges are sorted by (server, user).
struct ReducedProblem {
  struct Edge {
    int server = 0;
    int user = 0;
  };

  int num_original_users = 0;
  std::vector<int> kept_dimensions;  // original dimension indices
  std::vector<ServerId> servers;
  std::vector<UserId> users;
  std::vector<ResourceVector> capacity;       // full dimension, per server
  std::vector<ResourceVector> demand;         // full dimension, per user
  std::vector<Edge> edges;
  std::vector<UserId> uncovered_users;        // provably unallocated
  std::vector<ServerId> idle_servers;         // cover nobody, y fixed to 0
  std::vector<int> dropped_dimensions;        // never binding

  int num_servers() const { return static_cast<int>(servers.size()); }
  int num_users() const { return static_cast<int>(users.size()); }

  // Reduced-space assignment: server index per user, or -1.
  using Assignment = std::vector<int>;
  Allocation Lift(const Assignment& assignment) const;
  // Maps an allocation into reduced indices; entries that do not correspond
  // to an edge are dropped.
  Assignment Reduce(const Allocation& alloc) const;
  // Exact check of capacity (every original dimension), coverage and
  // single assignment.
  bool IsFeasible(const Assignment& assignment) const;
};

ReducedProblem Preprocess(const Instance& instance, const CoverageGraph& cov,
                          bool drop_redundant_dimensions = true);

struct PhaseOutcome {
  ReducedProblem::Assignment assignment;
  int objective = 0;    // allocated users (phase 1) or hired servers (phase 2)
  bool optimal = false;
  PhaseStats stats;
};

// `incumbent` must be feasible when given; the all-cloud assignment is used
// otherwise. The deadline is absolute when `time_limit_seconds` > 0.
PhaseOutcome SolvePhase1(const ReducedProblem& problem, const SolverParams& params,
                         const ReducedProblem::Assignment* incumbent = nullptr);

// `incumbent`, when given, must be feasible and allocate exactly
// `phase1_optimum` users. Returns FailedPrecondition when no assignment
// allocates `phase1_optimum` users.
absl::StatusOr<PhaseOutcome> SolvePhase2(
    const ReducedProblem& problem, int phase1_optimum, const SolverParams& params,
    const ReducedProblem::Assignment* incumbent = nullptr);

SolveResult SolveLexicographic(const Instance& instance,
                               const SolverParams& params = {});

// Structured-text rendering: status, optima, per-phase stats and the
// allocation in the allocation file format.
std::string SerializeSolveResultJson(const Instance& instance,
                                     const SolveResult& result);

}  // namespace eua

#endif  // EUA_EXACT_SOLVER_H_
