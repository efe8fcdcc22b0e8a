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

// Exhaustive lexicographic optimizer for tiny instances. It enumerates every
// map users -> servers ∪ {cloud} and is the reference the exact solver is
// tested against, so it deliberately shares no code with it.

#ifndef EUA_ORACLE_H_
#define EUA_ORACLE_H_

#include "absl/status/statusor.h"
#include "eua/types.h"

namespace eua {

struct OracleLimits {
  int max_users = 12;
  int max_servers = 4;
};

struct OracleResult {
  int phase1_optimum = 0;  // max allocated users
  int phase2_optimum = 0;  // min hired servers at that maximum
  // Lexicographically smallest optimal assignment vector, where user j maps
  // to 0 (cloud) or its server id.
  Allocation witness;
};

// Refuses (ResourceExhausted) instances beyond `limits`.
absl::StatusOr<OracleResult> BruteForce(const Instance& instance,
                                        const OracleLimits& limits = {});

}  // namespace eua

#endif  // EUA_ORACLE_H_
