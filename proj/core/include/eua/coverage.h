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
#ifndef EUA_COVERAGE_H_
#define EUA_COVERAGE_H_

#include <span>
#include <vector>

#include "eua/types.h"

namespace eua {

// Per-user list of servers whose coverage disk contains the user, sorted by
// ascending server id. A user at exactly the coverage radius is covered.
class CoverageGraph {
 public:
  CoverageGraph() = default;
  // `servers_of_user[j]` lists the covering servers of user j + 1; each list
  // is sorted on construction.
  explicit CoverageGraph(std::vector<std::vector<ServerId>> servers_of_user);

  int num_users() const { return static_cast<int>(servers_of_user_.size()); }
  std::span<const ServerId> ServersCovering(UserId user) const {
    return servers_of_user_[user.index()];
  }
  bool Covers(ServerId server, UserId user) const;
  // Users covered by `server`, ascending.
  std::vector<UserId> UsersCoveredBy(ServerId server) const;
  int num_edges() const;

  friend bool operator==(const CoverageGraph&, const CoverageGraph&) = default;

 private:
  std::vector<std::vector<ServerId>> servers_of_user_;
};

CoverageGraph BuildCoverage(const Instance& instance);

}  // namespace eua

#endif  // EUA_COVERAGE_H_
