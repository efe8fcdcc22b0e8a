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

#include "eua/validation.h"

#include <map>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace eua {

namespace {

std::string FormatUnits(int64_t units, int64_t scale) {
  if (scale == 1) return absl::StrCat(units);
  return absl::StrFormat("%.12g", static_cast<double>(units) /
                                      static_cast<double>(scale));
}

struct ViolationPrinter {
  int64_t scale;
  std::string operator()(const CapacityViolation& v) const {
    return absl::StrCat("server ", v.server.value(), " dimension ",
                        v.dimension + 1, ": demand ",
                        FormatUnits(v.total_demand, scale), " > capacity ",
                        FormatUnits(v.capacity, scale));
  }
  std::string operator()(const ProximityViolation& v) const {
    return absl::StrCat("user ", v.user.value(), " is outside the coverage of server ",
                        v.server.value());
  }
  std::string operator()(const DoubleAssignment& v) const {
    return absl::StrCat("user ", v.user.value(), " is assigned ", v.count,
                        " times");
  }
};

}  // namespace

std::string ValidationReport::ToString(int64_t scale) const {
  if (violations.empty()) return "feasible";
  std::string out;
  for (const Violation& v : violations) {
    absl::StrAppend(&out, std::visit(ViolationPrinter{scale}, v), "\n");
  }
  return out;
}

absl::StatusOr<ValidationReport> ValidateAllocation(const Instance& instance,
                                                    const CoverageGraph& cov,
                                                    const Allocation& alloc) {
  if (cov.num_users() != instance.num_users()) {
    return absl::InvalidArgumentError(
        "coverage graph does not match the instance");
  }
  for (const Assignment& a : alloc.assignments()) {
    if (!instance.HasUser(a.user)) {
      return absl::InvalidArgumentError(
          absl::StrCat("allocation references unknown user ", a.user.value()));
    }
    if (!instance.HasServer(a.server)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "allocation references unknown server ", a.server.value()));
    }
  }

  ValidationReport report;
  std::map<UserId, int> count_by_user;
  std::vector<ResourceVector> load(instance.num_servers(),
                                   ResourceVector::Zero(instance.dimension));
  for (const Assignment& a : alloc.assignments()) {
    ++count_by_user[a.user];
    if (!cov.Covers(a.server, a.user)) {
      report.violations.push_back(ProximityViolation{a.user, a.server});
    }
    load[a.server.index()] += instance.user(a.user).demand;
  }
  for (const auto& [user, count] : count_by_user) {
    if (count > 1) report.violations.push_back(DoubleAssignment{user, count});
  }
  for (const EdgeServer& server : instance.servers) {
    const ResourceVector& l = load[server.id.index()];
    for (int k = 0; k < instance.dimension; ++k) {
      if (l[k] > server.capacity[k]) {
        report.violations.push_back(
            CapacityViolation{server.id, k, l[k], server.capacity[k]});
      }
    }
  }
  return report;
}

}  // namespace eua
