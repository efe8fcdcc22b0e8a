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


#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "eua/baselines.h"
#include "eua/coverage.h"
#include "eua/exact_solver.h"
#include "eua/harness.h"
#include "eua/instance_gen.h"
#include "eua/instance_io.h"
#include "eua/metrics.h"
#include "eua/oracle.h"
#include "eua/random.h"
#include "json.hpp"

namespace eua::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string instance;
  std::string out;
  std::string config;
  std::string spec;
  std::string solver = "exact";
  std::string random_policy = "blind";
  std::string scale = "desk";
  std::optional<uint64_t> seed;
  std::optional<double> time_limit;
  std::optional<int64_t> node_limit;
  std::optional<int> repetitions;
  std::optional<int> workers;
  int set_id = 1;
  int oracle_max_users = 12;
  int oracle_max_servers = 4;
};

absl::Status Emit(const Options& opts, const std::string& text, std::ostream& out) {
  if (opts.out.empty() || opts.out == "-") {
    out << text;
    return absl::OkStatus();
  }
  return WriteFileAtomic(opts.out, text);
}

absl::StatusOr<RandomPolicy> PolicyFrom(const Options& opts) {
  std::optional<RandomPolicy> policy = ParseRandomPolicy(opts.random_policy);
  if (!policy) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown random policy '", opts.random_policy, "'"));
  }
  return *policy;
}

SolverParams ParamsFrom(const Options& opts) {
  SolverParams params;
  if (opts.time_limit) params.time_limit_seconds = *opts.time_limit;
  if (opts.node_limit) params.node_limit = *opts.node_limit;
  return params;
}

std::string MetricsLine(const std::string& solver, const AllocationMetrics& m,
                        const Instance& instance, const std::string& status) {
  return absl::StrFormat("solver=%s allocated=%d/%d (%.2f%%) hired=%d/%d (%.2f%%) status=%s\n",
                         solver, m.allocated_count, instance.num_users(), m.allocated_pct,
                         m.hired_count, instance.num_servers(), m.hired_pct, status);
}

absl::Status Solve(const Options& opts, std::ostream& out, std::ostream& err) {
  std::optional<SolverKind> kind = ParseSolverKind(opts.solver);
  if (!kind) return absl::InvalidArgumentError(absl::StrCat("unknown solver '", opts.solver, "'"));
  absl::StatusOr<RandomPolicy> policy = PolicyFrom(opts);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<Instance> instance = LoadInstance(opts.instance);
  if (!instance.ok()) return instance.status();
  const CoverageGraph cov = BuildCoverage(*instance);

  std::string text;
  std::string status = "FEASIBLE";
  Allocation alloc;
  switch (*kind) {
    case SolverKind::kExact: {
      SolveResult result = SolveLexicographic(*instance, ParamsFrom(opts));
      if (result.status == SolveStatus::kInfeasibleInput) {
        return absl::InvalidArgumentError(result.message);
      }
      status = std::string(SolveStatusName(result.status));
      alloc = result.allocation;
      text = SerializeSolveResultJson(*instance, result);
      break;
    }
    case SolverKind::kGreedy:
      alloc = SolveGreedy(*instance, cov);
      text = SerializeAllocationJson(*instance, alloc);
      break;
    case SolverKind::kRandom:
      alloc = SolveRandom(*instance, cov, RandomSeed{opts.seed.value_or(1)}, *policy);
      text = SerializeAllocationJson(*instance, alloc);
      break;
  }
  absl::StatusOr<AllocationMetrics> metrics = ComputeMetrics(*instance, cov, alloc);
  if (!metrics.ok()) return absl::InternalError(metrics.status().message());
  if (absl::Status s = Emit(opts, text, out); !s.ok()) return s;
  (opts.out.empty() || opts.out == "-" ? err : out)
      << MetricsLine(opts.solver, *metrics, *instance, status);
  return absl::OkStatus();
}

absl::Status GenerateCommand(const Options& opts, std::ostream& out) {
  absl::StatusOr<std::string> text = ReadFile(opts.config);
  if (!text.ok()) return text.status();
  absl::StatusOr<GenConfig> config = ParseGenConfigJson(*text);
  if (!config.ok()) return config.status();
  if (opts.seed) config->seed = RandomSeed{*opts.seed};
  absl::StatusOr<GeneratedInstance> gen = Generate(*config);
  if (!gen.ok()) return gen.status();
  if (absl::Status s = WriteFileAtomic(opts.out, SerializeInstanceJson(gen->instance)); !s.ok()) {
    return s;
  }
  const std::string manifest = opts.out + ".manifest.json";
  if (absl::Status s = WriteFileAtomic(manifest, gen->manifest_json); !s.ok()) return s;
  out << absl::StrFormat("wrote %s (%d servers, %d users) and %s\n", opts.out,
                         gen->instance.num_servers(), gen->instance.num_users(), manifest);
  return absl::OkStatus();
}

absl::Status Bench(const Options& opts, std::ostream& out) {
  ExperimentSpec spec;
  if (!opts.spec.empty()) {
    absl::StatusOr<std::string> text = ReadFile(opts.spec);
    if (!text.ok()) return text.status();
    absl::StatusOr<ExperimentSpec> parsed = ParseExperimentSpecJson(*text);
    if (!parsed.ok()) return parsed.status();
    spec = *parsed;
  } else {
    if (opts.scale != "desk" && opts.scale != "full") {
      return absl::InvalidArgumentError(absl::StrCat("unknown scale '", opts.scale, "'"));
    }
    spec = DefaultSpec(opts.set_id,
                       opts.scale == "full" ? ExperimentScale::kFull : ExperimentScale::kDesk);
  }
  if (opts.seed) spec.base_seed = *opts.seed;
  if (opts.time_limit) spec.time_limit_seconds = *opts.time_limit;
  if (opts.node_limit) spec.node_limit = *opts.node_limit;
  if (opts.repetitions) spec.repetitions = *opts.repetitions;
  if (opts.workers) spec.workers = *opts.workers;
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  if (absl::Status s = RunAndWrite(spec, opts.out); !s.ok()) return s;
  out << absl::StrFormat("wrote %s.{rows,timings,summary}.csv and %s.meta.json\n", opts.out,
                         opts.out);
  return absl::OkStatus();
}

absl::Status Compare(const Options& opts, std::ostream& out) {
  absl::StatusOr<RandomPolicy> policy = PolicyFrom(opts);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<Instance> instance = LoadInstance(opts.instance);
  if (!instance.ok()) return instance.status();
  const CoverageGraph cov = BuildCoverage(*instance);

  struct Line {
    std::string solver;
    Allocation alloc;
    std::string status;
    double seconds = 0.0;
  };
  std::vector<Line> lines;
  auto timed = [](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto value = fn();
    return std::make_pair(
        std::move(value),
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  };
  auto [exact, exact_s] = timed([&] { return SolveLexicographic(*instance, ParamsFrom(opts)); });
  if (exact.status == SolveStatus::kInfeasibleInput) {
    return absl::InvalidArgumentError(exact.message);
  }
  lines.push_back({"exact", exact.allocation, std::string(SolveStatusName(exact.status)), exact_s});
  auto [greedy, greedy_s] = timed([&] { return SolveGreedy(*instance, cov); });
  lines.push_back({"greedy", greedy, "FEASIBLE", greedy_s});
  auto [random, random_s] = timed(
      [&] { return SolveRandom(*instance, cov, RandomSeed{opts.seed.value_or(1)}, *policy); });
  lines.push_back({"random", random, "FEASIBLE", random_s});

  std::string table = absl::StrFormat("%-8s %10s %10s %8s %10s %-20s %10s\n", "solver",
                                      "allocated", "alloc_pct", "hired", "hired_pct", "status",
                                      "seconds");
  for (const Line& line : lines) {
    absl::StatusOr<AllocationMetrics> m = ComputeMetrics(*instance, cov, line.alloc);
    if (!m.ok()) return absl::InternalError(m.status().message());
    absl::StrAppendFormat(&table, "%-8s %10d %10.2f %8d %10.2f %-20s %10.4f\n", line.solver,
                          m->allocated_count, m->allocated_pct, m->hired_count, m->hired_pct,
                          line.status, line.seconds);
  }
  return Emit(opts, table, out);
}

absl::Status OracleCommand(const Options& opts, std::ostream& out) {
  absl::StatusOr<Instance> instance = LoadInstance(opts.instance);
  if (!instance.ok()) return instance.status();
  OracleLimits limits;
  limits.max_users = opts.oracle_max_users;
  limits.max_servers = opts.oracle_max_servers;
  absl::StatusOr<OracleResult> result = BruteForce(*instance, limits);
  if (!result.ok()) return result.status();
  Json j;
  j["phase1_optimum"] = result->phase1_optimum;
  j["phase2_optimum"] = result->phase2_optimum;
  j["witness"] = Json::parse(SerializeAllocationJson(*instance, result->witness));
  return Emit(opts, j.dump(2) + "\n", out);
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kResourceExhausted:
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kPermissionDenied:
      return kExitInputError;
    default:
      return kExitInternalError;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge user allocation: exact solver, baselines and experiments", "eua"};
  app.require_subcommand(1);
  Options opts;

  auto add_seed = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--seed", opts.seed, what);
  };
  auto add_limits = [&](CLI::App* cmd) {
    cmd->add_option("--time-limit", opts.time_limit, "Seconds per exact solve (0 = none)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--node-limit", opts.node_limit, "Nodes per phase (0 = none)")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_policy = [&](CLI::App* cmd) {
    cmd->add_option("--random-policy", opts.random_policy, "blind or fitting")
        ->check(CLI::IsMember({"blind", "fitting"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "Run one solver on an instance file");
  solve->add_option("--instance", opts.instance, "Instance JSON")->required();
  solve->add_option("--solver", opts.solver, "exact, greedy or random")
      ->check(CLI::IsMember({"exact", "greedy", "random"}));
  solve->add_option("--out", opts.out, "Result file (default: stdout)");
  add_seed(solve, "Seed of the random baseline");
  add_limits(solve);
  add_policy(solve);

  CLI::App* generate = app.add_subcommand("generate", "Generate an instance from a config");
  generate->add_option("--config", opts.config, "Generator config JSON")->required();
  generate->add_option("--out", opts.out, "Instance file; the manifest goes next to it")
      ->required();
  add_seed(generate, "Overrides the config seed");

  CLI::App* bench = app.add_subcommand("bench", "Run an experiment set");
  bench->add_option("--spec", opts.spec, "Experiment spec JSON");
  bench->add_option("--set", opts.set_id, "Built-in set 1, 2 or 3 when no spec is given")
      ->check(CLI::Range(1, 3));
  bench->add_option("--scale", opts.scale, "desk or full, for the built-in sets")
      ->check(CLI::IsMember({"desk", "full"}));
  bench->add_option("--out", opts.out, "Output prefix")->required();
  bench->add_option("--repetitions", opts.repetitions, "Repetitions per swept value")
      ->check(CLI::PositiveNumber);
  bench->add_option("--workers", opts.workers, "Parallel cells; timings need 1")
      ->check(CLI::PositiveNumber);
  add_seed(bench, "Overrides the base seed");
  add_limits(bench);

  CLI::App* compare = app.add_subcommand("compare", "Run every solver on one instance");
  compare->add_option("--instance", opts.instance, "Instance JSON")->required();
  compare->add_option("--out", opts.out, "Table file (default: stdout)");
  add_seed(compare, "Seed of the random baseline");
  add_limits(compare);
  add_policy(compare);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  oracle->add_option("--instance", opts.instance, "Instance JSON")->required();
  oracle->add_option("--out", opts.out, "Result file (default: stdout)");
  oracle->add_option("--max-users", opts.oracle_max_users, "Refuse larger instances");
  oracle->add_option("--max-servers", opts.oracle_max_servers, "Refuse larger instances");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  absl::Status status;
  try {
    if (solve->parsed()) {
      status = Solve(opts, out, err);
    } else if (generate->parsed()) {
      status = GenerateCommand(opts, out);
    } else if (bench->parsed()) {
      status = Bench(opts, out);
    } else if (compare->parsed()) {
      status = Compare(opts, out);
    } else {
      status = OracleCommand(opts, out);
    }
  } catch (const std::exception& e) {
    status = absl::InternalError(e.what());
  }
  if (!status.ok()) {
    err << "eua: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace eua::cli
