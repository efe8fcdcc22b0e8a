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
#include <random>
#include <vector>

#include "eua/coverage.h"
#include "eua/exact_solver.h"
#include "eua/harness.h"
#include "eua/instance_gen.h"
#include "eua/metrics.h"
#include "eua/validation.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eua {
namespace {

using ::eua::testing::kMelbourne;
using ::eua::testing::MakeInstance;
using ::eua::testing::North;

constexpr RandomPolicy kPolicies[] = {RandomPolicy::kBlindDraw, RandomPolicy::kAmongFitting};

TEST(RandomBaselineTest, SingleFittingServerAlwaysTakesTheUser) {
  Instance in = MakeInstance(2, {{kMelbourne, 500, {3, 3}}}, {{kMelbourne, {1, 2}}});
  const CoverageGraph cov = BuildCoverage(in);
  for (RandomPolicy policy : kPolicies) {
    for (uint64_t seed = 0; seed < 50; ++seed) {
      Allocation a = SolveRandom(in, cov, RandomSeed{seed}, policy);
      EXPECT_EQ(a.ServerOf(UserId(1)), ServerId(1));
    }
  }
}

TEST(RandomBaselineTest, CapacityForcesExactlyOneUser) {
  const std::vector<double> w{1, 1, 0.5, 4};
  Instance in = MakeInstance(4, {{kMelbourne, 500, w}}, {{kMelbourne, w}, {kMelbourne, w}});
  const CoverageGraph cov = BuildCoverage(in);
  for (RandomPolicy policy : kPolicies) {
    for (uint64_t seed = 0; seed < 50; ++seed) {
      EXPECT_EQ(SolveRandom(in, cov, RandomSeed{seed}, policy).size(), 1);
    }
  }
}

TEST(RandomBaselineTest, SameSeedSameAllocation) {
  Instance in = testing::RandomMicroInstance(5);
  const CoverageGraph cov = BuildCoverage(in);
  for (RandomPolicy policy : kPolicies) {
    EXPECT_EQ(SolveRandom(in, cov, RandomSeed{77}, policy),
              SolveRandom(in, cov, RandomSeed{77}, policy));
  }
}

TEST(RandomBaselineTest, BlindDrawCanMissAFittingServer) {
  // Only server 1 covers the user; a draw of server 2 leaves it in the cloud.
  Instance in = MakeInstance(1, {{kMelbourne, 100, {5}}, {North(kMelbourne, 3000), 100, {5}}},
                             {{kMelbourne, {1}}});
  const CoverageGraph cov = BuildCoverage(in);
  int allocated = 0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    allocated += SolveRandom(in, cov, RandomSeed{seed}, RandomPolicy::kBlindDraw).size();
    EXPECT_EQ(SolveRandom(in, cov, RandomSeed{seed}, RandomPolicy::kAmongFitting).size(), 1);
  }
  EXPECT_GT(allocated, 60);
  EXPECT_LT(allocated, 140);
}

TEST(RandomBaselineTest, PolicyNamesRoundTrip) {
  for (RandomPolicy policy : kPolicies) {
    EXPECT_EQ(ParseRandomPolicy(RandomPolicyName(policy)), policy);
  }
  EXPECT_EQ(ParseRandomPolicy("nope"), std::nullopt);
}

TEST(RandomBaselineTest, AllocatesFarFewerUsersThanGreedy) {
  ExperimentSpec spec = DefaultSpec(1, ExperimentScale::kDesk);
  double random_pct = 0.0, greedy_pct = 0.0;
  const int seeds = 100;
  for (int rep = 0; rep < seeds; ++rep) {
    absl::StatusOr<GeneratedInstance> gen = Generate(CellConfig(spec, 64, rep));
    ASSERT_TRUE(gen.ok()) << gen.status();
    const Instance& in = gen->instance;
    const CoverageGraph cov = BuildCoverage(in);
    random_pct += ComputeMetrics(in, cov, SolveRandom(in, cov, RandomSeed{uint64_t(rep)}))
                      ->allocated_pct;
    greedy_pct += ComputeMetrics(in, cov, SolveGreedy(in, cov))->allocated_pct;
  }
  EXPECT_LE(random_pct / seeds, greedy_pct / seeds - 20.0);
}

TEST(GreedyBaselineTest, PicksTheLargestNormalizedResidual) {
  // Normalizers are (10, 10). Server 1 scores 0.2 + 0.7 = 0.9, server 2
  // scores 1.0 + 0.7 = 1.7; server 3 only sets the maximum.
  Instance in = MakeInstance(2,
                             {{kMelbourne, 500, {2, 7}},
                              {kMelbourne, 500, {10, 7}},
                              {North(kMelbourne, 5000), 100, {1, 10}}},
                             {{kMelbourne, {1, 1}}});
  EXPECT_EQ(SolveGreedy(in, BuildCoverage(in)).ServerOf(UserId(1)), ServerId(2));
}

TEST(GreedyBaselineTest, TiesGoToTheLowestServerId) {
  Instance in = MakeInstance(1, {{kMelbourne, 500, {4}}, {kMelbourne, 500, {4}}},
                             {{kMelbourne, {1}}, {kMelbourne, {1}}});
  Allocation a = SolveGreedy(in, BuildCoverage(in));
  EXPECT_EQ(a.ServerOf(UserId(1)), ServerId(1));
  // After user 1, server 2 has the larger residual.
  EXPECT_EQ(a.ServerOf(UserId(2)), ServerId(2));
}

TEST(GreedyBaselineTest, SkipsServersThatNoLongerFit) {
  Instance in = MakeInstance(1, {{kMelbourne, 500, {10}}, {kMelbourne, 500, {3}}},
                             {{kMelbourne, {8}}, {kMelbourne, {3}}});
  Allocation a = SolveGreedy(in, BuildCoverage(in));
  EXPECT_EQ(a.ServerOf(UserId(1)), ServerId(1));
  EXPECT_EQ(a.ServerOf(UserId(2)), ServerId(2));
}

TEST(GreedyBaselineTest, LayeredFixtureHiresMoreThanExact) {
  Instance in = testing::LoadTestData("seven_users.json");
  const CoverageGraph cov = BuildCoverage(in);
  absl::StatusOr<AllocationMetrics> greedy = ComputeMetrics(in, cov, SolveGreedy(in, cov));
  ASSERT_TRUE(greedy.ok());
  EXPECT_EQ(greedy->allocated_count, 7);
  EXPECT_EQ(greedy->hired_count, 3);
  SolveResult exact = SolveLexicographic(in);
  EXPECT_LT(static_cast<int>(exact.allocation.HiredServers().size()), greedy->hired_count);
}

TEST(GreedyBaselineTest, InvariantUnderServerRelabeling) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    // Wide integer capacities make score ties practically impossible.
    std::vector<testing::ServerSpec> servers;
    const int m = 2 + trial % 4;
    for (int i = 0; i < m; ++i) {
      servers.push_back({testing::East(kMelbourne, double(rng() % 300)), 600,
                         {double(100 + rng() % 900), double(100 + rng() % 900)}});
    }
    std::vector<testing::UserSpec> users;
    for (int j = 0; j < 12; ++j) {
      users.push_back({North(kMelbourne, double(rng() % 300)),
                       {double(10 + rng() % 90), double(10 + rng() % 90)}});
    }
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<testing::ServerSpec> permuted(m);
    for (int i = 0; i < m; ++i) permuted[perm[i]] = servers[i];

    Instance a = MakeInstance(2, servers, users);
    Instance b = MakeInstance(2, permuted, users);
    Allocation ga = SolveGreedy(a, BuildCoverage(a));
    Allocation gb = SolveGreedy(b, BuildCoverage(b));
    ASSERT_EQ(ga.size(), gb.size());
    for (const Assignment& x : ga.assignments()) {
      EXPECT_EQ(gb.ServerOf(x.user), ServerId(perm[x.server.index()] + 1));
    }
  }
}

// Replays a heuristic's decisions: whenever a processed user is left out, no
// covering server may have fitted it at that point. Users are replayed in
// `order`.
void ExpectNeverSkipsAFit(const Instance& in, const CoverageGraph& cov, const Allocation& alloc,
                          const std::vector<UserId>& order) {
  std::vector<ResourceVector> residual;
  for (const EdgeServer& s : in.servers) residual.push_back(s.capacity);
  for (UserId u : order) {
    std::optional<ServerId> s = alloc.ServerOf(u);
    if (s) {
      residual[s->index()] -= in.user(u).demand;
      continue;
    }
    for (ServerId c : cov.ServersCovering(u)) {
      EXPECT_FALSE(in.user(u).demand.FitsWithin(residual[c.index()]))
          << "user " << u << " skipped although server " << c << " fits";
    }
  }
}

TEST(BaselinePropertyTest, FeasibleAndNeverSkipAFit) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Instance in = testing::RandomMicroInstance(seed, {12, 4, 3});
    const CoverageGraph cov = BuildCoverage(in);
    Allocation greedy = SolveGreedy(in, cov);
    ASSERT_TRUE(testing::IndependentlyFeasible(in, greedy));
    std::vector<UserId> ascending;
    for (const User& u : in.users) ascending.push_back(u.id);
    ExpectNeverSkipsAFit(in, cov, greedy, ascending);
    for (RandomPolicy policy : kPolicies) {
      ASSERT_TRUE(
          testing::IndependentlyFeasible(in, SolveRandom(in, cov, RandomSeed{seed}, policy)));
    }
  }
}

TEST(BaselinePropertyTest, FittingPolicyNeverSkipsAFitInAnyOrder) {
  // The processing order is internal, so check the weaker order-free form:
  // a skipped user has no covering server with room for it in the final
  // residuals either (residuals only shrink).
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Instance in = testing::RandomMicroInstance(seed, {12, 4, 3});
    const CoverageGraph cov = BuildCoverage(in);
    Allocation a = SolveRandom(in, cov, RandomSeed{seed}, RandomPolicy::kAmongFitting);
    std::vector<ResourceVector> residual;
    for (const EdgeServer& s : in.servers) residual.push_back(s.capacity);
    for (const Assignment& x : a.assignments()) residual[x.server.index()] -= in.user(x.user).demand;
    for (UserId u : a.Unallocated(in.num_users())) {
      for (ServerId c : cov.ServersCovering(u)) {
        EXPECT_FALSE(in.user(u).demand.FitsWithin(residual[c.index()]));
      }
    }
  }
}

}  // namespace
}  // namespace eua
