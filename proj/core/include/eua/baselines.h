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

// Comparison heuristics. Both process users one at a time, never revisit a
// decision, and update residual capacities after every assignment.

#ifndef EUA_BASELINES_H_
#define EUA_BASELINES_H_

#include <optional>
#include <string_view>

#include "eua/coverage.h"
#include "eua/random.h"
#include "eua/types.h"

namespace eua {

// Users in ascending id order; each goes to the covering server that still
// fits it and has the largest normalized residual capacity
//   score(i) = sum_k residual_ik / max_i' C_i'k
// (dimensions whose instance-wide maximum is zero are skipped). Ties go to
// the lowest server id. A user with no fitting covering server stays
// unallocated.
Allocation SolveGreedy(const Instance& instance, const CoverageGraph& cov);

enum class RandomPolicy {
  // One server drawn uniformly from all servers; the user is placed there if
  // that server covers and fits it, and stays unallocated otherwise.
  kBlindDraw,
  // Uniform choice among the covering servers that fit the user.
  kAmongFitting,
};

std::string_view RandomPolicyName(RandomPolicy policy);
std::optional<RandomPolicy> ParseRandomPolicy(std::string_view name);

// Users in a uniformly random order, each placed per `policy`. Deterministic
// per seed.
Allocation SolveRandom(const Instance& instance, const CoverageGraph& cov,
                       RandomSeed seed, RandomPolicy policy = RandomPolicy::kBlindDraw);

}  // namespace eua

#endif  // EUA_BASELINES_H_
