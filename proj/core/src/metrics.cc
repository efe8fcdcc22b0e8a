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

#include "eua/metrics.h"

#include "absl/strings/str_cat.h"
#include "eua/validation.h"

namespace eua {

absl::StatusOr<AllocationMetrics> ComputeMetrics(const Instance& instance,
                                                 const CoverageGraph& cov,
                                                 const Allocation& alloc) {
  absl::StatusOr<ValidationReport> report =
      ValidateAllocation(instance, cov, alloc);
  if (!report.ok()) return report.status();
  if (!report->feasible()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "metrics are defined only for feasible allocations: ",
        report->ToString(instance.scale)));
  }
  AllocationMetrics m;
  m.allocated_count = alloc.size();
  m.hired_count = static_cast<int>(alloc.HiredServers().size());
  if (instance.num_users() > 0) {
    m.allocated_pct = 100.0 * m.allocated_count / instance.num_users();
  }
  if (instance.num_servers() > 0) {
    m.hired_pct = 100.0 * m.hired_count / instance.num_servers();
  }
  return m;
}

absl::StatusOr<AllocationMetrics> ComputeMetrics(const Instance& instance,
                                                 const Allocation& alloc) {
  return ComputeMetrics(instance, BuildCoverage(instance), alloc);
}

}  // namespace eua
