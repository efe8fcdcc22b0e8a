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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "eua/baselines.h"
#include "eua/coverage.h"
#include "eua/exact_solver.h"
#include "eua/instance_io.h"
#include "eua/metrics.h"
#include "json_util.h"
#include "string_compat.h"

namespace eua {

namespace {

using internal::Json;

constexpr uint64_t kLayoutSalt = 0x4c41594f5554ULL;
constexpr uint64_t kRandomSolverSalt = 0x52414e444f4dULL;
constexpr absl::string_view kHeuristicStatus = "FEASIBLE";

constexpr absl::string_view kRowsHeader =
    "set_id,swept_value,repetition,seed,solver,allocated_count,num_users,"
    "allocated_pct,hired_count,num_servers,hired_pct,status";
constexpr absl::string_view kTimingsHeader =
    "set_id,swept_value,repetition,solver,wall_time_seconds";

absl::string_view Name(SolverKind kind) { return internal::AsAbsl(SolverKindName(kind)); }

std::string_view SweptParameterName(int set_id) {
  switch (set_id) {
    case 1:
      return "num_users";
    case 2:
      return "server_availability_pct";
    default:
      return "capacity_pct";
  }
}

struct CellResult {
  std::vector<ResultRow> rows;
  std::string error;  // dominance violation
};

CellResult RunCell(const ExperimentSpec& spec, int swept_value, int repetition) {
  CellResult out;
  const GenConfig config = CellConfig(spec, swept_value, repetition);
  ResultRow base;
  base.set_id = spec.set_id;
  base.swept_value = swept_value;
  base.repetition = repetition;
  base.seed = config.seed.value;
  base.num_users = config.num_users;

  absl::StatusOr<GeneratedInstance> generated = Generate(config);
  if (!generated.ok()) {
    for (SolverKind kind : spec.solvers) {
      ResultRow row = base;
      row.solver = kind;
      row.status = std::string(kGenerationFailed);
      out.rows.push_back(row);
    }
    return out;
  }
  const Instance& instance = generated->instance;
  const CoverageGraph cov = BuildCoverage(instance);
  base.num_servers = instance.num_servers();

  const bool want_exact = std::find(spec.solvers.begin(), spec.solvers.end(),
                                    SolverKind::kExact) != spec.solvers.end();
  const RandomSeed random_seed = DeriveSeed(config.seed, kRandomSolverSalt);
  std::optional<Allocation> random_alloc;

  auto timed = [](auto&& fn, int64_t* us) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const auto end = std::chrono::steady_clock::now();
    *us = std::chrono::duration_cast<std::chrono::microseconds>(end - start).count();
    return result;
  };

  for (SolverKind kind : spec.solvers) {
    ResultRow row = base;
    row.solver = kind;
    Allocation alloc;
    switch (kind) {
      case SolverKind::kGreedy:
        alloc = timed([&] { return SolveGreedy(instance, cov); }, &row.wall_time_us);
        row.status = std::string(kHeuristicStatus);
        break;
      case SolverKind::kRandom:
        alloc = timed([&] { return SolveRandom(instance, cov, random_seed); },
                      &row.wall_time_us);
        random_alloc = alloc;
        row.status = std::string(kHeuristicStatus);
        break;
      case SolverKind::kExact: {
        SolverParams params;
        params.time_limit_seconds = spec.time_limit_seconds;
        params.node_limit = spec.node_limit;
        // Warm start: the random allocation, alongside greedy.
        params.warm_start = random_alloc ? *random_alloc
                                         : SolveRandom(instance, cov, random_seed);
        SolveResult result = timed([&] { return SolveLexicographic(instance, params); },
                                   &row.wall_time_us);
        alloc = std::move(result.allocation);
        row.status = std::string(SolveStatusName(result.status));
        break;
      }
    }
    absl::StatusOr<AllocationMetrics> metrics = ComputeMetrics(instance, cov, alloc);
    if (!metrics.ok()) {
      out.error = absl::StrCat("cell (", swept_value, ", ", repetition, ") solver ",
                               Name(kind), ": ", metrics.status().message());
      return out;
    }
    row.allocated_count = metrics->allocated_count;
    row.hired_count = metrics->hired_count;
    out.rows.push_back(row);
  }

  if (want_exact) {
    const ResultRow* exact = nullptr;
    for (const ResultRow& r : out.rows) {
      if (r.solver == SolverKind::kExact) exact = &r;
    }
    for (const ResultRow& r : out.rows) {
      if (r.allocated_count > exact->allocated_count) {
        out.error = absl::StrCat("phase-1 dominance violated in cell (", swept_value,
                                 ", ", repetition, "): ", Name(r.solver),
                                 " allocates ", r.allocated_count, " > exact ",
                                 exact->allocated_count);
      }
    }
  }
  return out;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double SampleSd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

template <typename T>
absl::Status ParseField(absl::string_view text, T* out, absl::string_view what,
                        size_t line) {
  bool ok;
  if constexpr (std::is_same_v<T, double>) {
    ok = absl::SimpleAtod(text, out);
  } else {
    ok = absl::SimpleAtoi(text, out);
  }
  if (!ok) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", line, ": cannot parse ", what, " '", text, "'"));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view SolverKindName(SolverKind kind) {
  switch (kind) {
    case SolverKind::kExact:
      return "exact";
    case SolverKind::kGreedy:
      return "greedy";
    case SolverKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<SolverKind> ParseSolverKind(std::string_view name) {
  for (SolverKind k : {SolverKind::kExact, SolverKind::kGreedy, SolverKind::kRandom}) {
    if (SolverKindName(k) == name) return k;
  }
  return std::nullopt;
}

absl::Status ExperimentSpec::Validate() const {
  if (set_id < 1 || set_id > 3) return absl::InvalidArgumentError("set_id must be 1, 2 or 3");
  if (swept_values.empty()) return absl::InvalidArgumentError("swept values are empty");
  if (repetitions < 1) return absl::InvalidArgumentError("repetitions must be >= 1");
  if (solvers.empty()) return absl::InvalidArgumentError("solver list is empty");
  if (!(time_limit_seconds >= 0.0)) {
    return absl::InvalidArgumentError("time limit must be >= 0");
  }
  if (node_limit < 0) return absl::InvalidArgumentError("node limit must be >= 0");
  if (workers < 1) return absl::InvalidArgumentError("workers must be >= 1");
  for (size_t i = 0; i < solvers.size(); ++i) {
    for (size_t j = i + 1; j < solvers.size(); ++j) {
      if (solvers[i] == solvers[j]) {
        return absl::InvalidArgumentError("solver listed twice");
      }
    }
  }
  for (int v : swept_values) {
    GenConfig c = CellConfig(*this, v, 0);
    if (absl::Status st = c.Validate(); !st.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("swept value ", v, ": ", st.message()));
    }
  }
  return fixed.Validate();
}

ExperimentSpec DefaultSpec(int set_id, ExperimentScale scale) {
  const bool full = scale == ExperimentScale::kFull;
  const int n = full ? 512 : 128;
  ExperimentSpec spec;
  spec.set_id = set_id;
  spec.repetitions = full ? 100 : 20;
  spec.fixed.num_users = n;
  spec.fixed.capacity_pct = 300;
  spec.fixed.server_availability_pct = 100;
  if (!full) {
    spec.fixed.region = kMelbourneCbdCore;
    spec.fixed.servers = PointSource{std::nullopt, 31};
    spec.fixed.user_anchors = PointSource{std::nullopt, 8};
  }
  switch (set_id) {
    case 1:
      for (int v = 4; v <= n; v *= 2) spec.swept_values.push_back(v);
      break;
    case 2:
      for (int v = 10; v <= 100; v += 10) spec.swept_values.push_back(v);
      break;
    default:
      for (int v = 100; v <= 300; v += 50) spec.swept_values.push_back(v);
      break;
  }
  return spec;
}

GenConfig CellConfig(const ExperimentSpec& spec, int swept_value, int repetition) {
  GenConfig c = spec.fixed;
  switch (spec.set_id) {
    case 1:
      c.num_users = swept_value;
      break;
    case 2:
      c.server_availability_pct = swept_value;
      break;
    default:
      c.capacity_pct = swept_value;
      break;
  }
  if (!c.server_layout_seed) {
    c.server_layout_seed = DeriveSeed(RandomSeed{spec.base_seed}, kLayoutSalt).value;
  }
  c.seed = CellSeed(spec, swept_value, repetition);
  return c;
}

RandomSeed CellSeed(const ExperimentSpec& spec, int swept_value, int repetition) {
  RandomSeed s = DeriveSeed(RandomSeed{spec.base_seed}, static_cast<uint64_t>(spec.set_id));
  s = DeriveSeed(s, static_cast<uint64_t>(static_cast<int64_t>(swept_value)));
  return DeriveSeed(s, static_cast<uint64_t>(repetition));
}

double ResultRow::allocated_pct() const {
  return num_users == 0 ? 0.0 : 100.0 * allocated_count / num_users;
}

double ResultRow::hired_pct() const {
  return num_servers == 0 ? 0.0 : 100.0 * hired_count / num_servers;
}

absl::StatusOr<ExperimentSpec> ParseExperimentSpecJson(std::string_view text) {
  absl::StatusOr<Json> parsed = internal::ParseJson(text);
  if (!parsed.ok()) return parsed.status();
  const Json& j = *parsed;
  if (!j.is_object()) return absl::InvalidArgumentError("spec must be an object");
  try {
    const int set_id = j.value("set_id", 1);
    const std::string scale_name = j.value("scale", std::string("desk"));
    if (scale_name != "desk" && scale_name != "full") {
      return absl::InvalidArgumentError("scale must be 'desk' or 'full'");
    }
    ExperimentSpec spec = DefaultSpec(
        set_id, scale_name == "full" ? ExperimentScale::kFull : ExperimentScale::kDesk);
    if (j.contains("fixed")) {
      // Defaults of the chosen scale apply to fields the document omits.
      Json merged = Json::parse(SerializeGenConfigJson(spec.fixed));
      for (const auto& [key, value] : j.at("fixed").items()) merged[key] = value;
      absl::StatusOr<GenConfig> fixed = ParseGenConfigJson(merged.dump());
      if (!fixed.ok()) return fixed.status();
      spec.fixed = *fixed;
    }
    if (j.contains("swept_values")) {
      spec.swept_values = j.at("swept_values").get<std::vector<int>>();
    }
    spec.repetitions = j.value("repetitions", spec.repetitions);
    spec.base_seed = j.value("base_seed", spec.base_seed);
    if (j.contains("solvers")) {
      spec.solvers.clear();
      for (const Json& s : j.at("solvers")) {
        std::optional<SolverKind> kind = ParseSolverKind(s.get<std::string>());
        if (!kind) {
          return absl::InvalidArgumentError(
              absl::StrCat("unknown solver '", s.get<std::string>(), "'"));
        }
        spec.solvers.push_back(*kind);
      }
    }
    spec.time_limit_seconds = j.value("time_limit_seconds", spec.time_limit_seconds);
    spec.node_limit = j.value("node_limit", spec.node_limit);
    spec.workers = j.value("workers", spec.workers);
    if (absl::Status st = spec.Validate(); !st.ok()) return st;
    return spec;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad experiment spec: ", e.what()));
  }
}

std::string SerializeExperimentSpecJson(const ExperimentSpec& spec) {
  Json j;
  j["set_id"] = spec.set_id;
  j["swept_parameter"] = std::string(SweptParameterName(spec.set_id));
  j["swept_values"] = spec.swept_values;
  j["fixed"] = Json::parse(SerializeGenConfigJson(spec.fixed));
  j["repetitions"] = spec.repetitions;
  j["base_seed"] = spec.base_seed;
  Json solvers = Json::array();
  for (SolverKind k : spec.solvers) solvers.push_back(std::string(SolverKindName(k)));
  j["solvers"] = solvers;
  j["time_limit_seconds"] = spec.time_limit_seconds;
  j["node_limit"] = spec.node_limit;
  j["workers"] = spec.workers;
  return j.dump(2) + "\n";
}

absl::StatusOr<std::vector<ResultRow>> RunExperiment(const ExperimentSpec& spec) {
  if (absl::Status st = spec.Validate(); !st.ok()) return st;
  struct Cell {
    int swept_value;
    int repetition;
  };
  std::vector<Cell> cells;
  for (int v : spec.swept_values) {
    for (int r = 0; r < spec.repetitions; ++r) cells.push_back({v, r});
  }
  std::vector<CellResult> results(cells.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t c = next++; c < cells.size(); c = next++) {
      results[c] = RunCell(spec, cells[c].swept_value, cells[c].repetition);
    }
  };
  const int workers = std::min<int>(spec.workers, static_cast<int>(cells.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  std::vector<ResultRow> rows;
  for (CellResult& r : results) {
    if (!r.error.empty()) return absl::InternalError(r.error);
    for (ResultRow& row : r.rows) rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<std::vector<SummaryRow>> Aggregate(const std::vector<ResultRow>& rows) {
  if (rows.empty()) return absl::InvalidArgumentError("no rows to aggregate");
  // Key order: swept value, then solver in first-seen order.
  std::vector<SolverKind> solver_order;
  for (const ResultRow& r : rows) {
    if (std::find(solver_order.begin(), solver_order.end(), r.solver) == solver_order.end()) {
      solver_order.push_back(r.solver);
    }
  }
  auto rank = [&](SolverKind k) {
    return std::find(solver_order.begin(), solver_order.end(), k) - solver_order.begin();
  };
  std::vector<SummaryRow> out;
  for (const char* subset : {"all", "no_timeouts"}) {
    const bool drop_timeouts = std::string_view(subset) == "no_timeouts";
    std::map<std::pair<int, long>, std::vector<const ResultRow*>> groups;
    for (const ResultRow& r : rows) {
      if (r.status == kGenerationFailed) continue;
      if (drop_timeouts && r.solver == SolverKind::kExact &&
          r.status != SolveStatusName(SolveStatus::kOptimal)) {
        continue;
      }
      groups[{r.swept_value, rank(r.solver)}].push_back(&r);
    }
    for (const auto& [key, group] : groups) {
      std::vector<double> alloc, hired, wall;
      int optimal = 0;
      for (const ResultRow* r : group) {
        alloc.push_back(r->allocated_pct());
        hired.push_back(r->hired_pct());
        wall.push_back(r->wall_time_seconds());
        if (r->status == SolveStatusName(SolveStatus::kOptimal)) ++optimal;
      }
      SummaryRow s;
      s.subset = subset;
      s.swept_value = key.first;
      s.solver = group.front()->solver;
      s.count = static_cast<int>(group.size());
      s.allocated_pct_mean = Mean(alloc);
      s.allocated_pct_sd = SampleSd(alloc);
      s.hired_pct_mean = Mean(hired);
      s.hired_pct_sd = SampleSd(hired);
      s.wall_time_mean = Mean(wall);
      s.wall_time_sd = SampleSd(wall);
      s.optimal_fraction = static_cast<double>(optimal) / s.count;
      out.push_back(s);
    }
  }
  return out;
}

std::string FormatRowsCsv(const std::vector<ResultRow>& rows) {
  std::string out = absl::StrCat(kRowsHeader, "\n");
  for (const ResultRow& r : rows) {
    absl::StrAppendFormat(&out, "%d,%d,%d,%u,%s,%d,%d,%.4f,%d,%d,%.4f,%s\n", r.set_id,
                          r.swept_value, r.repetition, r.seed, Name(r.solver),
                          r.allocated_count, r.num_users, r.allocated_pct(), r.hired_count,
                          r.num_servers, r.hired_pct(), r.status);
  }
  return out;
}

std::string FormatTimingsCsv(const std::vector<ResultRow>& rows) {
  std::string out = absl::StrCat(kTimingsHeader, "\n");
  for (const ResultRow& r : rows) {
    absl::StrAppendFormat(&out, "%d,%d,%d,%s,%.6f\n", r.set_id, r.swept_value,
                          r.repetition, Name(r.solver), r.wall_time_seconds());
  }
  return out;
}

std::string FormatSummaryCsv(const std::vector<SummaryRow>& summary) {
  std::string out =
      "subset,swept_value,solver,count,allocated_pct_mean,allocated_pct_sd,"
      "hired_pct_mean,hired_pct_sd,wall_time_mean,wall_time_sd,optimal_fraction\n";
  for (const SummaryRow& s : summary) {
    absl::StrAppendFormat(&out, "%s,%d,%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                          s.subset, s.swept_value, Name(s.solver), s.count,
                          s.allocated_pct_mean, s.allocated_pct_sd, s.hired_pct_mean,
                          s.hired_pct_sd, s.wall_time_mean, s.wall_time_sd,
                          s.optimal_fraction);
  }
  return out;
}

std::string FormatMetadataJson(const ExperimentSpec& spec) {
  Json j;
  j["spec"] = Json::parse(SerializeExperimentSpecJson(spec));
  j["generator_version"] = std::string(kGeneratorVersion);
  j["cell_seed"] = "DeriveSeed(DeriveSeed(DeriveSeed(base_seed, set_id), swept_value), repetition)";
  j["server_layout_seed"] = CellConfig(spec, spec.swept_values.front(), 0)
                                .server_layout_seed.value_or(0);
  j["timing_method"] =
      "steady_clock wall time around the solver call only; generation and "
      "serialization excluded";
  j["timing_reliable"] = spec.workers == 1;
  j["exact_warm_start"] = "better of greedy and the random baseline allocation";
  return j.dump(2) + "\n";
}

absl::StatusOr<std::vector<ResultRow>> ParseRowsCsv(
    std::string_view rows_csv, std::optional<std::string_view> timings_csv) {
  using Key = std::tuple<int, int, int, std::string>;
  std::map<Key, int64_t> timing;
  if (timings_csv) {
    std::vector<absl::string_view> lines = absl::StrSplit(internal::AsAbsl(*timings_csv), '\n', absl::SkipEmpty());
    if (lines.empty() || lines[0] != kTimingsHeader) {
      return absl::InvalidArgumentError("timings file has an unexpected header");
    }
    for (size_t i = 1; i < lines.size(); ++i) {
      std::vector<absl::string_view> f = absl::StrSplit(lines[i], ',');
      if (f.size() != 5) {
        return absl::InvalidArgumentError(absl::StrCat("timings line ", i + 1, ": bad field count"));
      }
      int set_id, swept, rep;
      double seconds;
      if (absl::Status st = ParseField(f[0], &set_id, "set_id", i + 1); !st.ok()) return st;
      if (absl::Status st = ParseField(f[1], &swept, "swept_value", i + 1); !st.ok()) return st;
      if (absl::Status st = ParseField(f[2], &rep, "repetition", i + 1); !st.ok()) return st;
      if (absl::Status st = ParseField(f[4], &seconds, "wall time", i + 1); !st.ok()) return st;
      timing[{set_id, swept, rep, std::string(f[3])}] = std::llround(seconds * 1e6);
    }
  }
  std::vector<absl::string_view> lines = absl::StrSplit(internal::AsAbsl(rows_csv), '\n', absl::SkipEmpty());
  if (lines.empty() || lines[0] != kRowsHeader) {
    return absl::InvalidArgumentError("rows file has an unexpected header");
  }
  std::vector<ResultRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<absl::string_view> f = absl::StrSplit(lines[i], ',');
    if (f.size() != 12) {
      return absl::InvalidArgumentError(absl::StrCat("line ", i + 1, ": bad field count"));
    }
    ResultRow r;
    const size_t ln = i + 1;
    if (absl::Status st = ParseField(f[0], &r.set_id, "set_id", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[1], &r.swept_value, "swept_value", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[2], &r.repetition, "repetition", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[3], &r.seed, "seed", ln); !st.ok()) return st;
    std::optional<SolverKind> kind = ParseSolverKind(internal::AsStd(f[4]));
    if (!kind) return absl::InvalidArgumentError(absl::StrCat("line ", ln, ": unknown solver"));
    r.solver = *kind;
    if (absl::Status st = ParseField(f[5], &r.allocated_count, "allocated_count", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[6], &r.num_users, "num_users", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[8], &r.hired_count, "hired_count", ln); !st.ok()) return st;
    if (absl::Status st = ParseField(f[9], &r.num_servers, "num_servers", ln); !st.ok()) return st;
    r.status = std::string(f[11]);
    if (timings_csv) {
      auto it = timing.find({r.set_id, r.swept_value, r.repetition, std::string(f[4])});
      if (it == timing.end()) {
        return absl::InvalidArgumentError(absl::StrCat("line ", ln, ": no timing entry"));
      }
      r.wall_time_us = it->second;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::Status RunAndWrite(const ExperimentSpec& spec, const std::string& prefix) {
  absl::StatusOr<std::vector<ResultRow>> rows = RunExperiment(spec);
  if (!rows.ok()) return rows.status();
  absl::StatusOr<std::vector<SummaryRow>> summary = Aggregate(*rows);
  if (!summary.ok()) return summary.status();
  const std::pair<std::string, std::string> files[] = {
      {prefix + ".rows.csv", FormatRowsCsv(*rows)},
      {prefix + ".timings.csv", FormatTimingsCsv(*rows)},
      {prefix + ".summary.csv", FormatSummaryCsv(*summary)},
      {prefix + ".meta.json", FormatMetadataJson(spec)},
  };
  for (const auto& [path, contents] : files) {
    if (absl::Status st = WriteFileAtomic(path, contents); !st.ok()) return st;
  }
  return absl::OkStatus();
}

}  // namespace eua
