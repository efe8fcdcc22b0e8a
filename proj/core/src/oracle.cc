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

#include "eua/oracle.h"

#include <vector>

#include "absl/strings/str_cat.h"
#include "eua/geo.h"

namespace eua {

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Instance& instance)
      : instance_(instance),
        n_(instance.num_users()),
        m_(instance.num_servers()),
        covers_(n_, std::vector<bool>(m_, false)),
        load_(m_, ResourceVector::Zero(instance.dimension)),
        users_on_(m_, 0),
        current_(n_, 0) {
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < m_; ++i) {
        covers_[j][i] = GeoDistanceMeters(instance.servers[i].location,
                                          instance.users[j].location) <=
                        instance.servers[i].coverage_radius_m;
      }
    }
  }

  OracleResult Run() {
    Visit(0, 0, 0);
    OracleResult result;
    result.phase1_optimum = best_allocated_;
    result.phase2_optimum = best_hired_;
    for (int j = 0; j < n_; ++j) {
      if (best_[j] != 0) result.witness.Assign(UserId(j + 1), ServerId(best_[j]));
    }
    return result;
  }

 private:
  bool Fits(int i, const ResourceVector& demand) const {
    const ResourceVector& capacity = instance_.servers[i].capacity;
    for (int k = 0; k < instance_.dimension; ++k) {
      if (load_[i][k] + demand[k] > capacity[k]) return false;
    }
    return true;
  }

  void Visit(int j, int allocated, int hired) {
    if (j == n_) {
      const bool better =
          !found_ || allocated > best_allocated_ ||
          (allocated == best_allocated_ && hired < best_hired_);
      if (better) {
        found_ = true;
        best_allocated_ = allocated;
        best_hired_ = hired;
        best_ = current_;
      }
      return;
    }
    // Option 0: the central cloud.
    current_[j] = 0;
    Visit(j + 1, allocated, hired);
    const ResourceVector& demand = instance_.users[j].demand;
    for (int i = 0; i < m_; ++i) {
      if (!covers_[j][i]) continue;
      if (!Fits(i, demand)) continue;
      load_[i] += demand;
      const int opened = users_on_[i]++ == 0 ? 1 : 0;
      current_[j] = i + 1;
      Visit(j + 1, allocated + 1, hired + opened);
      --users_on_[i];
      load_[i] -= demand;
    }
    current_[j] = 0;
  }

  const Instance& instance_;
  const int n_;
  const int m_;
  std::vector<std::vector<bool>> covers_;
  std::vector<ResourceVector> load_;
  std::vector<int> users_on_;
  std::vector<int> current_;
  std::vector<int> best_;
  bool found_ = false;
  int best_allocated_ = 0;
  int best_hired_ = 0;
};

}  // namespace

absl::StatusOr<OracleResult> BruteForce(const Instance& instance,
                                        const OracleLimits& limits) {
  if (instance.num_users() > limits.max_users ||
      instance.num_servers() > limits.max_servers) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "instance with ", instance.num_users(), " users and ",
        instance.num_servers(), " servers exceeds the oracle limits (",
        limits.max_users, " users, ", limits.max_servers, " servers)"));
  }
  if (absl::Status st = ValidateInstance(instance); !st.ok()) return st;
  return Enumerator(instance).Run();
}

}  // namespace eua
