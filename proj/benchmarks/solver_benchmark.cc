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


#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "eua/baselines.h"
#include "eua/coverage.h"
#include "eua/dual_simplex.h"
#include "eua/exact_solver.h"
#include "eua/harness.h"
#include "eua/instance_gen.h"
#include "eua/random.h"

namespace eua {
namespace {

// Desk-scale experiment cell for `n` users at `capacity_pct`.
Instance DeskInstance(int n, int capacity_pct, int repetition) {
  ExperimentSpec spec = DefaultSpec(3, ExperimentScale::kDesk);
  spec.fixed.num_users = n;
  absl::StatusOr<GeneratedInstance> gen = Generate(CellConfig(spec, capacity_pct, repetition));
  if (!gen.ok()) return Instance{};
  return gen->instance;
}

void BM_Generate(benchmark::State& state) {
  ExperimentSpec spec = DefaultSpec(1, ExperimentScale::kDesk);
  const int n = static_cast<int>(state.range(0));
  int rep = 0;
  for (auto _ : state) {
    absl::StatusOr<GeneratedInstance> gen = Generate(CellConfig(spec, n, rep++));
    benchmark::DoNotOptimize(gen);
  }
}
BENCHMARK(BM_Generate)->Arg(32)->Arg(128)->Arg(512);

void BM_Greedy(benchmark::State& state) {
  const Instance in = DeskInstance(static_cast<int>(state.range(0)), 300, 0);
  const CoverageGraph cov = BuildCoverage(in);
  for (auto _ : state) benchmark::DoNotOptimize(SolveGreedy(in, cov));
}
BENCHMARK(BM_Greedy)->Arg(32)->Arg(128);

void BM_Random(benchmark::State& state) {
  const Instance in = DeskInstance(static_cast<int>(state.range(0)), 300, 0);
  const CoverageGraph cov = BuildCoverage(in);
  uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(SolveRandom(in, cov, RandomSeed{seed++}));
}
BENCHMARK(BM_Random)->Arg(32)->Arg(128);

// Assignment LP relaxation of a desk instance: the phase-1 root bound.
void BM_DualSimplexAssignmentLp(benchmark::State& state) {
  const Instance in = DeskInstance(static_cast<int>(state.range(0)), 300, 0);
  const CoverageGraph cov = BuildCoverage(in);
  lp::LinearProgram program;
  const int d = in.dimension;
  std::vector<int> capacity_row(static_cast<size_t>(in.num_servers()) * d);
  for (int i = 0; i < in.num_servers(); ++i) {
    for (int k = 0; k < d; ++k) {
      capacity_row[i * d + k] = program.AddRow(lp::RowSense::kLessEqual,
                                               static_cast<double>(in.servers[i].capacity[k]));
    }
  }
  std::vector<int> user_row(in.num_users());
  for (int j = 0; j < in.num_users(); ++j) {
    user_row[j] = program.AddRow(lp::RowSense::kLessEqual, 1.0);
  }
  for (int j = 0; j < in.num_users(); ++j) {
    for (ServerId s : cov.ServersCovering(UserId(j + 1))) {
      std::vector<int> rows{user_row[j]};
      std::vector<double> values{1.0};
      for (int k = 0; k < d; ++k) {
        if (in.users[j].demand[k] == 0) continue;
        rows.push_back(capacity_row[s.index() * d + k]);
        values.push_back(static_cast<double>(in.users[j].demand[k]));
      }
      program.AddColumn(-1.0, 0.0, 1.0, rows, values);
    }
  }
  for (auto _ : state) {
    lp::DualSimplex simplex(program);
    benchmark::DoNotOptimize(simplex.Solve());
  }
}
BENCHMARK(BM_DualSimplexAssignmentLp)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Exact(benchmark::State& state) {
  const Instance in = DeskInstance(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 0);
  SolverParams params;
  params.time_limit_seconds = 120.0;
  for (auto _ : state) benchmark::DoNotOptimize(SolveLexicographic(in, params));
}
BENCHMARK(BM_Exact)
    ->Args({32, 300})
    ->Args({128, 100})
    ->Args({128, 300})
    ->Unit(benchmark::kMillisecond)
    ->Iterations(3);

}  // namespace
}  // namespace eua
BENCHMARK_MAIN();
