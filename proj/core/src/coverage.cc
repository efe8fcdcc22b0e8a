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
#include "eua/coverage.h"

#include <algorithm>

#include "eua/geo.h"

namespace eua {

CoverageGraph::CoverageGraph(std::vector<std::vector<ServerId>> servers_of_user)
    : servers_of_user_(std::move(servers_of_user)) {
  for (auto& list : servers_of_user_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool CoverageGraph::Covers(ServerId server, UserId user) const {
  const auto& list = servers_of_user_[user.index()];
  return std::binary_search(list.begin(), list.end(), server);
}

std::vector<UserId> CoverageGraph::UsersCoveredBy(ServerId server) const {
  std::vector<UserId> users;
  for (int j = 0; j < num_users(); ++j) {
    if (Covers(server, UserId::FromIndex(j))) users.push_back(UserId::FromIndex(j));
  }
  return users;
}

int CoverageGraph::num_edges() const {
  int total = 0;
  for (const auto& list : servers_of_user_) total += static_cast<int>(list.size());
  return total;
}

CoverageGraph BuildCoverage(const Instance& instance) {
  std::vector<std::vector<ServerId>> lists(instance.users.size());
  for (const User& user : instance.users) {
    auto& list = lists[user.id.index()];
    for (const EdgeServer& server : instance.servers) {
      if (GeoDistanceMeters(server.location, user.location) <=
          server.coverage_radius_m) {
        list.push_back(server.id);
      }
    }
  }
  return CoverageGraph(std::move(lists));
}

}  // namespace eua
