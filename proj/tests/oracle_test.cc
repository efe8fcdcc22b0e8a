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

#include "eua/coverage.h"
#include "eua/validation.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eua {
namespace {

using ::eua::testing::kMelbourne;
using ::eua::testing::MakeInstance;
using ::eua::testing::North;

TEST(OracleTest, OneUserOneServer) {
  Instance in = MakeInstance(1, {{kMelbourne, 500, {2}}}, {{kMelbourne, {1}}});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 1);
  EXPECT_EQ(r->phase2_optimum, 1);
}

TEST(OracleTest, Pigeonhole) {
  Instance in = MakeInstance(1, {{kMelbourne, 500, {1}}}, {{kMelbourne, {1}}, {kMelbourne, {1}}});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 1);
  EXPECT_EQ(r->phase2_optimum, 1);
}

TEST(OracleTest, NoUsers) {
  Instance in = MakeInstance(1, {{kMelbourne, 500, {1}}}, {});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 0);
  EXPECT_EQ(r->phase2_optimum, 0);
  EXPECT_TRUE(r->witness.empty());
}

TEST(OracleTest, UncoveredUserStaysInTheCloud) {
  Instance in = MakeInstance(1, {{kMelbourne, 100, {5}}},
                             {{kMelbourne, {1}}, {North(kMelbourne, 1000), {1}}});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 1);
  EXPECT_EQ(r->witness.ServerOf(UserId(2)), std::nullopt);
}

TEST(OracleTest, WitnessIsLexicographicallySmallest) {
  // Both servers can take both users; the optimum hires one server and the
  // smallest vector is (1, 1).
  Instance in = MakeInstance(1, {{kMelbourne, 500, {2}}, {kMelbourne, 500, {2}}},
                             {{kMelbourne, {1}}, {kMelbourne, {1}}});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 2);
  EXPECT_EQ(r->phase2_optimum, 1);
  EXPECT_EQ(r->witness.ServerOf(UserId(1)), ServerId(1));
  EXPECT_EQ(r->witness.ServerOf(UserId(2)), ServerId(1));
}

TEST(OracleTest, PrefersFewerServersAtEqualAllocation) {
  // Server 1 fits one user, server 2 fits both: (1, 2) and (2, 2) allocate
  // two users, only (2, 2) hires a single server.
  Instance in = MakeInstance(1, {{kMelbourne, 500, {1}}, {kMelbourne, 500, {2}}},
                             {{kMelbourne, {1}}, {kMelbourne, {1}}});
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase2_optimum, 1);
  EXPECT_EQ(r->witness.ServerOf(UserId(1)), ServerId(2));
}

TEST(OracleTest, LayeredFixtureIsFrozen) {
  Instance in = testing::LoadTestData("seven_users.json");
  absl::StatusOr<OracleResult> r = BruteForce(in);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->phase1_optimum, 7);
  EXPECT_EQ(r->phase2_optimum, 2);
  EXPECT_TRUE(testing::IndependentlyFeasible(in, r->witness));
}

TEST(OracleTest, RefusesInstancesBeyondLimits) {
  std::vector<testing::UserSpec> users(13, {kMelbourne, {1}});
  Instance in = MakeInstance(1, {{kMelbourne, 500, {5}}}, users);
  EXPECT_EQ(BruteForce(in).status().code(), absl::StatusCode::kResourceExhausted);
  OracleLimits wide;
  wide.max_users = 13;
  EXPECT_TRUE(BruteForce(in, wide).ok());
  std::vector<testing::ServerSpec> servers(5, {kMelbourne, 500, {1}});
  Instance many = MakeInstance(1, servers, {{kMelbourne, {1}}});
  EXPECT_EQ(BruteForce(many).status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(OracleTest, WitnessAchievesTheOptimaOnRandomInstances) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Instance in = testing::RandomMicroInstance(seed, {8, 3, 3});
    absl::StatusOr<OracleResult> r = BruteForce(in);
    ASSERT_TRUE(r.ok());
    ASSERT_TRUE(testing::IndependentlyFeasible(in, r->witness)) << "seed " << seed;
    EXPECT_EQ(r->witness.size(), r->phase1_optimum);
    EXPECT_EQ(static_cast<int>(r->witness.HiredServers().size()), r->phase2_optimum);
  }
}

}  // namespace
}  // namespace eua
