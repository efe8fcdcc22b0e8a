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


#include "eua/harness.h"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "eua/instance_io.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace eua {
namespace {

using ::testing::HasSubstr;

ExperimentSpec TinySpec() {
  ExperimentSpec spec = DefaultSpec(1, ExperimentScale::kDesk);
  spec.swept_values = {4, 16};
  spec.repetitions = 3;
  spec.time_limit_seconds = 30.0;
  return spec;
}

TEST(ExperimentSpecTest, DefaultSweeps) {
  EXPECT_THAT(DefaultSpec(1, ExperimentScale::kFull).swept_values,
              ::testing::ElementsAre(4, 8, 16, 32, 64, 128, 256, 512));
  EXPECT_THAT(DefaultSpec(1, ExperimentScale::kDesk).swept_values,
              ::testing::ElementsAre(4, 8, 16, 32, 64, 128));
  EXPECT_EQ(DefaultSpec(2, ExperimentScale::kFull).swept_values.size(), 10u);
  EXPECT_THAT(DefaultSpec(3, ExperimentScale::kDesk).swept_values,
              ::testing::ElementsAre(100, 150, 200, 250, 300));
  const ExperimentSpec full = DefaultSpec(1, ExperimentScale::kFull);
  EXPECT_EQ(full.repetitions, 100);
  // Full set 1: 8 values x 100 repetitions x 3 solvers.
  EXPECT_EQ(full.swept_values.size() * full.repetitions * full.solvers.size(), 2400u);
  EXPECT_EQ(DefaultSpec(2, ExperimentScale::kDesk).fixed.num_users, 128);
}

TEST(ExperimentSpecTest, ValidateRejectsEmptySweepsAndRepetitions) {
  ExperimentSpec spec = TinySpec();
  EXPECT_TRUE(spec.Validate().ok());
  spec.swept_values.clear();
  EXPECT_FALSE(spec.Validate().ok());
  spec = TinySpec();
  spec.repetitions = 0;
  EXPECT_FALSE(spec.Validate().ok());
  spec = TinySpec();
  spec.set_id = 4;
  EXPECT_FALSE(spec.Validate().ok());
  spec = TinySpec();
  spec.solvers.clear();
  EXPECT_FALSE(spec.Validate().ok());
}

TEST(ExperimentSpecTest, JsonRoundTrip) {
  ExperimentSpec spec = TinySpec();
  spec.solvers = {SolverKind::kGreedy, SolverKind::kRandom};
  spec.base_seed = 42;
  absl::StatusOr<ExperimentSpec> back =
      ParseExperimentSpecJson(SerializeExperimentSpecJson(spec));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(SerializeExperimentSpecJson(*back), SerializeExperimentSpecJson(spec));
  EXPECT_EQ(back->base_seed, 42u);
  EXPECT_EQ(back->solvers.size(), 2u);
}

TEST(ExperimentSpecTest, PartialJsonKeepsScaleDefaults) {
  absl::StatusOr<ExperimentSpec> spec = ParseExperimentSpecJson(
      R"({"set_id": 3, "scale": "desk", "repetitions": 2, "fixed": {"num_users": 16}})");
  ASSERT_TRUE(spec.ok()) << spec.status();
  EXPECT_EQ(spec->repetitions, 2);
  EXPECT_EQ(spec->fixed.num_users, 16);
  EXPECT_EQ(spec->fixed.region, kMelbourneCbdCore);
  EXPECT_EQ(spec->swept_values.size(), 5u);
  EXPECT_FALSE(ParseExperimentSpecJson(R"({"solvers": ["magic"]})").ok());
}

TEST(ExperimentSpecTest, CellSeedsAreDistinctAndStable) {
  const ExperimentSpec spec = TinySpec();
  EXPECT_EQ(CellSeed(spec, 4, 0), CellSeed(spec, 4, 0));
  EXPECT_NE(CellSeed(spec, 4, 0), CellSeed(spec, 4, 1));
  EXPECT_NE(CellSeed(spec, 4, 0), CellSeed(spec, 16, 0));
  ExperimentSpec other = spec;
  other.set_id = 2;
  EXPECT_NE(CellSeed(spec, 4, 0), CellSeed(other, 4, 0));
  const GenConfig c = CellConfig(spec, 16, 2);
  EXPECT_EQ(c.num_users, 16);
  EXPECT_EQ(c.seed, CellSeed(spec, 16, 2));
  // The server layout is shared by every cell.
  EXPECT_EQ(c.server_layout_seed, CellConfig(spec, 4, 0).server_layout_seed);
}

TEST(RunExperimentTest, OneCellOneSolverOneRow) {
  ExperimentSpec spec = TinySpec();
  spec.swept_values = {8};
  spec.repetitions = 1;
  spec.solvers = {SolverKind::kGreedy};
  absl::StatusOr<std::vector<ResultRow>> rows = RunExperiment(spec);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].solver, SolverKind::kGreedy);
  EXPECT_EQ((*rows)[0].num_users, 8);
  EXPECT_EQ((*rows)[0].status, "FEASIBLE");
}

TEST(RunExperimentTest, RowsAreOrderedAndDominanceHolds) {
  absl::StatusOr<std::vector<ResultRow>> rows = RunExperiment(TinySpec());
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 2u * 3u * 3u);
  for (size_t i = 0; i < rows->size(); i += 3) {
    const ResultRow& exact = (*rows)[i];
    const ResultRow& greedy = (*rows)[i + 1];
    const ResultRow& random = (*rows)[i + 2];
    EXPECT_EQ(exact.solver, SolverKind::kExact);
    EXPECT_EQ(greedy.solver, SolverKind::kGreedy);
    EXPECT_EQ(random.solver, SolverKind::kRandom);
    EXPECT_EQ(exact.seed, greedy.seed);
    EXPECT_GE(exact.allocated_count, greedy.allocated_count);
    EXPECT_GE(exact.allocated_count, random.allocated_count);
    for (const ResultRow* r : {&exact, &greedy, &random}) {
      EXPECT_GE(r->allocated_pct(), 0.0);
      EXPECT_LE(r->allocated_pct(), 100.0);
      EXPECT_GE(r->hired_pct(), 0.0);
      EXPECT_LE(r->hired_pct(), 100.0);
    }
  }
  EXPECT_EQ((*rows)[0].swept_value, 4);
  EXPECT_EQ(rows->back().swept_value, 16);
}

TEST(RunExperimentTest, ByteIdenticalAcrossRunsAndWorkerCounts) {
  ExperimentSpec spec = TinySpec();
  absl::StatusOr<std::vector<ResultRow>> a = RunExperiment(spec);
  absl::StatusOr<std::vector<ResultRow>> b = RunExperiment(spec);
  spec.workers = 3;
  absl::StatusOr<std::vector<ResultRow>> c = RunExperiment(spec);
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(FormatRowsCsv(*a), FormatRowsCsv(*b));
  EXPECT_EQ(FormatRowsCsv(*a), FormatRowsCsv(*c));
}

ResultRow Row(int swept, SolverKind solver, int allocated, int hired, int64_t us,
              std::string status) {
  ResultRow r;
  r.set_id = 1;
  r.swept_value = swept;
  r.solver = solver;
  r.allocated_count = allocated;
  r.num_users = 10;
  r.hired_count = hired;
  r.num_servers = 4;
  r.wall_time_us = us;
  r.status = std::move(status);
  return r;
}

TEST(AggregateTest, EmptyInputIsAnError) { EXPECT_FALSE(Aggregate({}).ok()); }

TEST(AggregateTest, SingleRow) {
  absl::StatusOr<std::vector<SummaryRow>> s =
      Aggregate({Row(8, SolverKind::kGreedy, 7, 2, 1500000, "FEASIBLE")});
  ASSERT_TRUE(s.ok());
  ASSERT_EQ(s->size(), 2u);  // "all" and "no_timeouts"
  const SummaryRow& r = (*s)[0];
  EXPECT_EQ(r.subset, "all");
  EXPECT_EQ(r.count, 1);
  EXPECT_DOUBLE_EQ(r.allocated_pct_mean, 70.0);
  EXPECT_DOUBLE_EQ(r.allocated_pct_sd, 0.0);
  EXPECT_DOUBLE_EQ(r.hired_pct_mean, 50.0);
  EXPECT_DOUBLE_EQ(r.wall_time_mean, 1.5);
}

TEST(AggregateTest, ThreeRowsByHand) {
  // Allocated 50%, 70%, 90%: mean 70, sample sd 20. Hired 25%, 50%, 100%:
  // mean 58.333..., sd sqrt(((-33.33)^2 + (-8.33)^2 + 41.67^2) / 2).
  std::vector<ResultRow> rows{Row(8, SolverKind::kExact, 5, 1, 0, "OPTIMAL"),
                              Row(8, SolverKind::kExact, 7, 2, 0, "OPTIMAL"),
                              Row(8, SolverKind::kExact, 9, 4, 0, "FEASIBLE_TIME_LIMIT")};
  absl::StatusOr<std::vector<SummaryRow>> s = Aggregate(rows);
  ASSERT_TRUE(s.ok());
  ASSERT_EQ(s->size(), 2u);
  const SummaryRow& all = (*s)[0];
  EXPECT_EQ(all.count, 3);
  EXPECT_NEAR(all.allocated_pct_mean, 70.0, 1e-12);
  EXPECT_NEAR(all.allocated_pct_sd, 20.0, 1e-12);
  EXPECT_NEAR(all.hired_pct_mean, 175.0 / 3.0, 1e-12);
  const double m = 175.0 / 3.0;
  EXPECT_NEAR(all.hired_pct_sd,
              std::sqrt(((25 - m) * (25 - m) + (50 - m) * (50 - m) + (100 - m) * (100 - m)) / 2),
              1e-12);
  EXPECT_NEAR(all.optimal_fraction, 2.0 / 3.0, 1e-12);
  const SummaryRow& kept = (*s)[1];
  EXPECT_EQ(kept.subset, "no_timeouts");
  EXPECT_EQ(kept.count, 2);
  EXPECT_NEAR(kept.allocated_pct_mean, 60.0, 1e-12);
  EXPECT_DOUBLE_EQ(kept.optimal_fraction, 1.0);
}

TEST(AggregateTest, GenerationFailuresAreSkipped) {
  std::vector<ResultRow> rows{Row(8, SolverKind::kGreedy, 5, 1, 0, "FEASIBLE"),
                              Row(8, SolverKind::kGreedy, 0, 0, 0,
                                  std::string(kGenerationFailed))};
  absl::StatusOr<std::vector<SummaryRow>> s = Aggregate(rows);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ((*s)[0].count, 1);
}

TEST(OutputTest, ReaggregatingTheRowsFileReplaysTheSummary) {
  absl::StatusOr<std::vector<ResultRow>> rows = RunExperiment(TinySpec());
  ASSERT_TRUE(rows.ok());
  absl::StatusOr<std::vector<ResultRow>> parsed =
      ParseRowsCsv(FormatRowsCsv(*rows), FormatTimingsCsv(*rows));
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), rows->size());
  absl::StatusOr<std::vector<SummaryRow>> direct = Aggregate(*rows);
  absl::StatusOr<std::vector<SummaryRow>> replay = Aggregate(*parsed);
  ASSERT_TRUE(direct.ok() && replay.ok());
  EXPECT_EQ(FormatSummaryCsv(*direct), FormatSummaryCsv(*replay));
}

TEST(OutputTest, RowsFileHasNoTimingColumn) {
  const std::string csv = FormatRowsCsv({Row(8, SolverKind::kGreedy, 5, 1, 123456, "FEASIBLE")});
  EXPECT_THAT(csv, HasSubstr("set_id,swept_value,repetition,seed,solver"));
  EXPECT_EQ(csv.find("wall"), std::string::npos);
  EXPECT_THAT(FormatTimingsCsv({Row(8, SolverKind::kGreedy, 5, 1, 123456, "FEASIBLE")}),
              HasSubstr("0.123456"));
  EXPECT_FALSE(ParseRowsCsv("bogus\n1,2\n").ok());
}

TEST(OutputTest, RunAndWriteProducesAllFiles) {
  const std::string prefix =
      (std::filesystem::temp_directory_path() / "eua_harness_test").string();
  ExperimentSpec spec = TinySpec();
  spec.repetitions = 1;
  ASSERT_TRUE(RunAndWrite(spec, prefix).ok());
  for (const char* suffix : {".rows.csv", ".timings.csv", ".summary.csv", ".meta.json"}) {
    absl::StatusOr<std::string> text = ReadFile(prefix + suffix);
    ASSERT_TRUE(text.ok()) << suffix;
    EXPECT_FALSE(text->empty());
    std::filesystem::remove(prefix + suffix);
  }
  EXPECT_THAT(FormatMetadataJson(spec), HasSubstr("steady_clock"));
}

}  // namespace
}  // namespace eua
