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

#include "eua/baselines.h"

#include <numeric>
#include <vector>

namespace eua {

namespace {

std::vector<ResourceVector> InitialResiduals(const Instance& instance) {
  std::vector<ResourceVector> residual;
  residual.reserve(instance.servers.size());
  for (const EdgeServer& s : instance.servers) residual.push_back(s.capacity);
  return residual;
}

}  // namespace

Allocation SolveGreedy(const Instance& instance, const CoverageGraph& cov) {
  const int d = instance.dimension;
  std::vector<int64_t> max_cap(d, 0);
  for (int k = 0; k < d; ++k) {
    for (const EdgeServer& s : instance.servers) max_cap[k] = std::max(max_cap[k], s.capacity[k]);
  }

  std::vector<ResourceVector> residual = InitialResiduals(instance);
  Allocation alloc;
  for (const User& user : instance.users) {
    ServerId best;
    double best_score = -1.0;
    // Covering lists are ascending, so a strict comparison keeps the lowest
    // id among equal scores.
    for (ServerId s : cov.ServersCovering(user.id)) {
      const ResourceVector& r = residual[s.index()];
      if (!user.demand.FitsWithin(r)) continue;
      double score = 0.0;
      for (int k = 0; k < d; ++k) {
        if (max_cap[k] > 0) score += static_cast<double>(r[k]) / static_cast<double>(max_cap[k]);
      }
      if (score > best_score) {
        best_score = score;
        best = s;
      }
    }
    if (best_score >= 0.0) {
      residual[best.index()] -= user.demand;
      alloc.Assign(user.id, best);
    }
  }
  return alloc;
}

Allocation SolveRandom(const Instance& instance, const CoverageGraph& cov,
                       RandomSeed seed, RandomPolicy policy) {
  Rng rng(seed);
  std::vector<int> order(instance.users.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<int>(order));

  std::vector<ResourceVector> residual = InitialResiduals(instance);
  Allocation alloc;
  std::vector<ServerId> fitting;
  for (int j : order) {
    const User& user = instance.users[j];
    if (policy == RandomPolicy::kBlindDraw) {
      if (instance.servers.empty()) break;
      const EdgeServer& pick = instance.servers[rng.UniformIndex(instance.servers.size())];
      if (cov.Covers(pick.id, user.id) && user.demand.FitsWithin(residual[pick.id.index()])) {
        residual[pick.id.index()] -= user.demand;
        alloc.Assign(user.id, pick.id);
      }
      continue;
    }
    fitting.clear();
    for (ServerId s : cov.ServersCovering(user.id)) {
      if (user.demand.FitsWithin(residual[s.index()])) fitting.push_back(s);
    }
    if (fitting.empty()) continue;
    const ServerId chosen = fitting[rng.UniformIndex(fitting.size())];
    residual[chosen.index()] -= user.demand;
    alloc.Assign(user.id, chosen);
  }
  return alloc;
}

std::string_view RandomPolicyName(RandomPolicy policy) {
  return policy == RandomPolicy::kBlindDraw ? "blind" : "fitting";
}

std::optional<RandomPolicy> ParseRandomPolicy(std::string_view name) {
  if (name == "blind") return RandomPolicy::kBlindDraw;
  if (name == "fitting") return RandomPolicy::kAmongFitting;
  return std::nullopt;
}

}  // namespace eua
