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


#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "eua/instance_io.h"
#include "gtest/gtest.h"
#include "json.hpp"

#ifndef EUA_TEST_DATA_DIR
#error "EUA_TEST_DATA_DIR must be defined"
#endif

namespace eua::testing {
namespace {

constexpr double kRadius = 6371000.0;
constexpr double kDegree = std::numbers::pi / 180.0;

}  // namespace

GeoPoint North(const GeoPoint& base, double meters) {
  return {base.latitude + meters / (kRadius * kDegree), base.longitude};
}

GeoPoint East(const GeoPoint& base, double meters) {
  return {base.latitude,
          base.longitude + meters / (kRadius * kDegree * std::cos(base.latitude * kDegree))};
}

double ReferenceDistance(const GeoPoint& a, const GeoPoint& b) {
  const double p1 = a.latitude * kDegree;
  const double p2 = b.latitude * kDegree;
  const double dl = (b.longitude - a.longitude) * kDegree;
  const double x = std::cos(p2) * std::sin(dl);
  const double y = std::cos(p1) * std::sin(p2) - std::sin(p1) * std::cos(p2) * std::cos(dl);
  const double z = std::sin(p1) * std::sin(p2) + std::cos(p1) * std::cos(p2) * std::cos(dl);
  return kRadius * std::atan2(std::hypot(x, y), z);
}

Instance MakeInstance(int dimension, const std::vector<ServerSpec>& servers,
                      const std::vector<UserSpec>& users) {
  nlohmann::json doc;
  doc["dimension"] = dimension;
  doc["servers"] = nlohmann::json::array();
  doc["users"] = nlohmann::json::array();
  for (size_t i = 0; i < servers.size(); ++i) {
    doc["servers"].push_back({{"id", i + 1},
                              {"lat", servers[i].location.latitude},
                              {"lon", servers[i].location.longitude},
                              {"radius_m", servers[i].radius_m},
                              {"capacity", servers[i].capacity}});
  }
  for (size_t j = 0; j < users.size(); ++j) {
    doc["users"].push_back({{"id", j + 1},
                            {"lat", users[j].location.latitude},
                            {"lon", users[j].location.longitude},
                            {"demand", users[j].demand}});
  }
  absl::StatusOr<Instance> instance = ParseInstanceJson(doc.dump());
  EXPECT_TRUE(instance.ok()) << instance.status();
  return instance.ok() ? *instance : Instance{};
}

Instance LoadTestData(const std::string& name) {
  absl::StatusOr<Instance> instance =
      LoadInstance(std::string(EUA_TEST_DATA_DIR) + "/" + name);
  EXPECT_TRUE(instance.ok()) << instance.status();
  return instance.ok() ? *instance : Instance{};
}

bool IndependentlyFeasible(const Instance& instance, const Allocation& alloc) {
  std::map<int, int> seen;
  std::vector<std::vector<int64_t>> load(instance.num_servers(),
                                         std::vector<int64_t>(instance.dimension, 0));
  for (const Assignment& a : alloc.assignments()) {
    if (a.user.value() < 1 || a.user.value() > instance.num_users()) return false;
    if (a.server.value() < 1 || a.server.value() > instance.num_servers()) return false;
    if (++seen[a.user.value()] > 1) return false;
    const EdgeServer& s = instance.servers[a.server.value() - 1];
    const User& u = instance.users[a.user.value() - 1];
    // Same boundary rule as the model, with slack for the other formula's
    // round-off.
    if (ReferenceDistance(s.location, u.location) > s.coverage_radius_m + 1e-6) return false;
    for (int k = 0; k < instance.dimension; ++k) {
      load[a.server.value() - 1][k] += u.demand[k];
    }
  }
  for (int i = 0; i < instance.num_servers(); ++i) {
    for (int k = 0; k < instance.dimension; ++k) {
      if (load[i][k] > instance.servers[i].capacity[k]) return false;
    }
  }
  return true;
}

Instance RandomMicroInstance(uint64_t seed, const MicroOptions& options) {
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  auto uniform_real = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  const int mode = static_cast<int>(seed % 3);
  const int n = uniform_int(0, options.max_users);
  const int m = uniform_int(1, options.max_servers);
  const int d = uniform_int(1, options.max_dimension);
  const double box = mode == 1 ? 2000.0 : 300.0;

  auto place = [&](double extent) {
    return East(North(kMelbourne, uniform_real(0.0, extent)), uniform_real(0.0, extent));
  };
  std::vector<ServerSpec> servers;
  for (int i = 0; i < m; ++i) {
    ServerSpec s;
    s.location = place(box);
    s.radius_m = mode == 1 ? uniform_real(200.0, 900.0) : uniform_real(450.0, 750.0);
    for (int k = 0; k < d; ++k) s.capacity.push_back(uniform_int(0, 8));
    servers.push_back(s);
  }
  std::vector<UserSpec> users;
  for (int j = 0; j < n; ++j) {
    UserSpec u;
    u.location = place(box);
    if (mode == 2 && uniform_int(0, 3) == 0) u.location = North(u.location, 5000.0);
    for (int k = 0; k < d; ++k) u.demand.push_back(uniform_int(0, 3));
    if (std::all_of(u.demand.begin(), u.demand.end(), [](double v) { return v == 0; })) {
      u.demand[uniform_int(0, d - 1)] = 1;
    }
    users.push_back(u);
  }
  return MakeInstance(d, servers, users);
}

}  // namespace eua::testing
