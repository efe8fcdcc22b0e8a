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


// Model and solver invariants checked over many random instances. Each check
// returns how many instances it examined and how many broke the property.

#ifndef EUA_TESTS_PROPERTIES_H_
#define EUA_TESTS_PROPERTIES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "eua/types.h"

namespace eua::properties {

struct PropertyReport {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
};

// `count` micro-instances from `seed`, followed by a few generated cells.
std::vector<Instance> PropertyInstances(int count, uint64_t seed);

// Multiplying every capacity and demand of one dimension by the same
// positive rational leaves both optima and the greedy allocation unchanged.
PropertyReport ScalingInvariance(const std::vector<Instance>& instances);

// Renumbering users leaves both optima unchanged and maps feasible
// allocations to feasible allocations with the same metrics.
PropertyReport PermutationInvariance(const std::vector<Instance>& instances);

// Adding a server or growing a capacity never lowers the phase-1 optimum.
PropertyReport MonotoneUnderServerAddition(const std::vector<Instance>& instances);

// Any feasible warm start (greedy, random, oracle-free first fit) leaves both
// optima unchanged.
PropertyReport WarmStartSoundness(const std::vector<Instance>& instances);

// Greedy, both random policies and the exact solver pass validation.
PropertyReport BaselineFeasibility(const std::vector<Instance>& instances);

std::vector<PropertyReport> AllProperties(const std::vector<Instance>& instances);

}  // namespace eua::properties

#endif  // EUA_TESTS_PROPERTIES_H_
