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

#ifndef EUA_METRICS_H_
#define EUA_METRICS_H_

#include "absl/status/statusor.h"
#include "eua/coverage.h"
#include "eua/types.h"

namespace eua {

struct AllocationMetrics {
  int allocated_count = 0;
  double allocated_pct = 0.0;  // of all n users
  int hired_count = 0;
  double hired_pct = 0.0;  // of all m servers
  friend bool operator==(const AllocationMetrics&,
                         const AllocationMetrics&) = default;
};

// Objective values of a feasible allocation. Percentages are 0 when the
// denominator is 0. An infeasible allocation is rejected with
// FailedPrecondition.
absl::StatusOr<AllocationMetrics> ComputeMetrics(const Instance& instance,
                                                 const CoverageGraph& cov,
                                                 const Allocation& alloc);

// Convenience overload that builds the coverage graph.
absl::StatusOr<AllocationMetrics> ComputeMetrics(const Instance& instance,
                                                 const Allocation& alloc);

}  // namespace eua

#endif  // EUA_METRICS_H_
