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

// Experiment harness.
//
// Three experiment sets sweep one generator parameter each: the number of
// users (set 1), server availability (set 2) and total capacity (set 3).
// Every (swept value, repetition) cell generates one instance from its own
// sub-seed and runs each requested solver on it.
//
// Output files:
//   rows      one line per (cell, solver); no timing, byte-identical across
//             runs with the same spec
//   timings   per-row solve wall time, keyed like the rows
//   summary   per (subset, swept value, solver) means and standard deviations
//   metadata  spec echo, versions and the timing method

#ifndef EUA_HARNESS_H_
#define EUA_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "eua/instance_gen.h"
#include "eua/random.h"

namespace eua {

enum class SolverKind { kExact, kGreedy, kRandom };

std::string_view SolverKindName(SolverKind kind);
std::optional<SolverKind> ParseSolverKind(std::string_view name);

enum class ExperimentScale { kDesk, kFull };

struct ExperimentSpec {
  int set_id = 1;
  std::vector<int> swept_values;
  // Fixed parameters. The swept field and the seed are overwritten per cell.
  GenConfig fixed;
  int repetitions = 20;
  uint64_t base_seed = 1;
  std::vector<SolverKind> solvers{SolverKind::kExact, SolverKind::kGreedy,
                                  SolverKind::kRandom};
  double time_limit_seconds = 120.0;
  int64_t node_limit = 0;  // per phase; 0 = unlimited
  int workers = 1;         // > 1 only for runs whose timings are not used

  absl::Status Validate() const;
};

// Sweeps and fixed parameters for one set. Full scale uses 512 users, 100
// repetitions and 125 servers over kMelbourneCbd. Desk scale stops at 128
// users with 20 repetitions on kMelbourneCbdCore with 31 servers and 8 user
// anchors. The fixed capacity is 300% and availability 100%.
ExperimentSpec DefaultSpec(int set_id, ExperimentScale scale);

absl::StatusOr<ExperimentSpec> ParseExperimentSpecJson(std::string_view text);
std::string SerializeExperimentSpecJson(const ExperimentSpec& spec);

// Generator configuration of one cell.
GenConfig CellConfig(const ExperimentSpec& spec, int swept_value, int repetition);
RandomSeed CellSeed(const ExperimentSpec& spec, int swept_value, int repetition);

inline constexpr std::string_view kGenerationFailed = "GENERATION_FAILED";

struct ResultRow {
  int set_id = 0;
  int swept_value = 0;
  int repetition = 0;
  uint64_t seed = 0;
  SolverKind solver = SolverKind::kExact;
  int allocated_count = 0;
  int num_users = 0;
  int hired_count = 0;
  int num_servers = 0;
  int64_t wall_time_us = 0;
  std::string status;  // solver status, verbatim

  double allocated_pct() const;
  double hired_pct() const;
  double wall_time_seconds() const { return static_cast<double>(wall_time_us) * 1e-6; }
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// Rows come out ordered by (swept value, repetition, solver order in spec).
// Fails with Internal if a row breaks phase-1 dominance of the exact solver.
absl::StatusOr<std::vector<ResultRow>> RunExperiment(const ExperimentSpec& spec);

struct SummaryRow {
  std::string subset;  // "all" or "no_timeouts"
  int swept_value = 0;
  SolverKind solver = SolverKind::kExact;
  int count = 0;
  double allocated_pct_mean = 0.0;
  double allocated_pct_sd = 0.0;
  double hired_pct_mean = 0.0;
  double hired_pct_sd = 0.0;
  double wall_time_mean = 0.0;
  double wall_time_sd = 0.0;
  double optimal_fraction = 0.0;
};

// Sample standard deviation (n - 1); zero for a single row. Rows whose
// instance failed to generate are skipped. The "no_timeouts" subset drops
// rows whose status is not OPTIMAL for the exact solver.
absl::StatusOr<std::vector<SummaryRow>> Aggregate(const std::vector<ResultRow>& rows);

std::string FormatRowsCsv(const std::vector<ResultRow>& rows);
std::string FormatTimingsCsv(const std::vector<ResultRow>& rows);
std::string FormatSummaryCsv(const std::vector<SummaryRow>& summary);
std::string FormatMetadataJson(const ExperimentSpec& spec);

// Parses a rows file; timings, when given, are joined by key.
absl::StatusOr<std::vector<ResultRow>> ParseRowsCsv(
    std::string_view rows_csv, std::optional<std::string_view> timings_csv = std::nullopt);

// Runs the spec and writes <prefix>.rows.csv, <prefix>.timings.csv,
// <prefix>.summary.csv and <prefix>.meta.json atomically.
absl::Status RunAndWrite(const ExperimentSpec& spec, const std::string& prefix);

}  // namespace eua

#endif  // EUA_HARNESS_H_
