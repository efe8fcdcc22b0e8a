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

#ifndef EUA_VALIDATION_H_
#define EUA_VALIDATION_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "eua/coverage.h"
#include "eua/types.h"

namespace eua {

// Aggregate demand on `server` exceeds its capacity in one dimension.
struct CapacityViolation {
  ServerId server;
  int dimension = 0;  // 0-based resource index
  int64_t total_demand = 0;
  int64_t capacity = 0;
  friend bool operator==(const CapacityViolation&,
                         const CapacityViolation&) = default;
};

// `user` is assigned to a server that does not cover it.
struct ProximityViolation {
  UserId user;
  ServerId server;
  friend bool operator==(const ProximityViolation&,
                         const ProximityViolation&) = default;
};

// `user` appears in more than one assignment entry.
struct DoubleAssignment {
  UserId user;
  int count = 0;
  friend bool operator==(const DoubleAssignment&,
                         const DoubleAssignment&) = default;
};

using Violation =
    std::variant<CapacityViolation, ProximityViolation, DoubleAssignment>;

struct ValidationReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
  std::string ToString(int64_t scale = 1) const;
};

// Lists every constraint violation of `alloc`: capacity overflow per server
// and dimension, proximity, and double assignment. Unknown user or server
// ids are an input error (InvalidArgument), not a violation.
absl::StatusOr<ValidationReport> ValidateAllocation(const Instance& instance,
                                                    const CoverageGraph& cov,
                                                    const Allocation& alloc);

}  // namespace eua

#endif  // EUA_VALIDATION_H_
