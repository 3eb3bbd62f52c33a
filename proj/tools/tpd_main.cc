// Copyright 2026 The tpd Authors.
//
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

// Command-line front end: solve, verify, pd, gen and bench.
//
// Exit codes: 0 yes / valid / agreement, 3 no / invalid schedule,
// 1 error, 2 every applicable algorithm exceeded its guard, 4 bench
// disagreement.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpd/bench.h"
#include "tpd/error.h"
#include "tpd/feasibility.h"
#include "tpd/generators.h"
#include "tpd/io.h"
#include "tpd/model.h"
#include "tpd/solve.h"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitError = 1;
constexpr int kExitGuard = 2;
constexpr int kExitNo = 3;
constexpr int kExitDisagreement = 4;

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

tpd::Instance LoadInstance(const std::string& path, const std::string& mode) {
  tpd::Instance instance = tpd::ParseInstanceJson(tpd::ReadTextFile(path));
  if (mode.empty()) return instance;
  const auto parsed = tpd::ParseMode(mode);
  if (!parsed) throw tpd::Error(tpd::ErrorCode::kBadParams, "unknown mode '" + mode + "'");
  return instance.WithMode(*parsed);
}

struct SolveArgs {
  std::string instance;
  std::string algorithm = "auto";
  double delta = 1e-3;
  uint64_t seed = 0;
  std::string output;
  std::string mode;
  int threads = 1;
  int max_colors = 12;
};

int RunSolve(const SolveArgs& args) {
  const tpd::Instance instance = LoadInstance(args.instance, args.mode);
  const auto algorithm = tpd::ParseAlgorithm(args.algorithm);
  if (!algorithm) {
    throw tpd::Error(tpd::ErrorCode::kBadParams, "unknown algorithm '" + args.algorithm + "'");
  }
  tpd::SolveOptions options;
  options.algorithm = *algorithm;
  options.randomized.delta = args.delta;
  options.randomized.seed = args.seed;
  options.randomized.threads = args.threads;
  options.randomized.max_colors = args.max_colors;

  const auto start = std::chrono::steady_clock::now();
  const tpd::SolveOutcome out = tpd::Solve(instance, options);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();

  std::cout << "decision: " << (out.yes ? "yes" : "no") << "\n"
            << "pd: " << out.pd << "\n"
            << "algorithm: " << out.algorithm << "\n";
  if (out.optimum) std::cout << "optimum: " << *out.optimum << "\n";
  if (out.planned_trials > 0) {
    std::cout << "trials: " << out.trials << " of " << out.planned_trials << "\n"
              << "delta: " << out.delta << "\n"
              << "seed: " << out.seed << "\n";
  }
  if (out.yes) {
    std::cout << "saved:";
    for (const std::string& name : instance.Names(out.saved)) std::cout << ' ' << name;
    std::cout << "\n";
  }
  std::cerr << "wall time: " << ms << " ms\n";
  if (!args.output.empty()) {
    tpd::WriteTextFile(args.output,
                       out.yes ? tpd::ScheduleToJson(instance, *out.schedule) : "no\n");
  }
  return out.yes ? kExitYes : kExitNo;
}

int RunVerify(const std::string& instance_path, const std::string& schedule_path) {
  const tpd::Instance instance = tpd::ParseInstanceJson(tpd::ReadTextFile(instance_path));
  const tpd::Schedule schedule =
      tpd::ParseScheduleJson(instance, tpd::ReadTextFile(schedule_path));
  const tpd::VerificationReport report = tpd::VerifySchedule(instance, schedule);
  std::cout << report.Describe(instance);
  const int64_t pd = tpd::PhylogeneticDiversity(instance, schedule.saved());
  std::cout << "pd: " << pd << " (target " << instance.target_diversity() << ")\n";
  return report.ok && pd >= instance.target_diversity() ? kExitYes : kExitNo;
}

int RunPd(const std::string& instance_path, const std::string& taxa) {
  const tpd::Instance instance = tpd::ParseInstanceJson(tpd::ReadTextFile(instance_path));
  const std::vector<std::string> names = SplitCommas(taxa);
  std::cout << tpd::PhylogeneticDiversity(instance, instance.TaxaByName(names)) << "\n";
  return kExitYes;
}

struct GenArgs {
  tpd::GeneratorParams params;
  std::string shape = "random-binary";
  std::string mode = "collaborative";
  std::optional<int64_t> target;
  uint64_t seed = 0;
  std::string subset_sum;
  int k = 1;
  int64_t goal = 0;
  std::optional<int64_t> q;
  std::string output;
};

int RunGen(GenArgs args) {
  tpd::Instance instance;
  if (!args.subset_sum.empty()) {
    std::vector<int64_t> values;
    for (const std::string& v : SplitCommas(args.subset_sum)) values.push_back(std::stoll(v));
    instance = tpd::ReduceSubsetSum(values, args.k, args.goal, args.q);
  } else {
    const auto shape = tpd::ParseTreeShape(args.shape);
    const auto mode = tpd::ParseMode(args.mode);
    if (!shape || !mode) throw tpd::Error(tpd::ErrorCode::kBadParams, "unknown shape or mode");
    args.params.shape = *shape;
    args.params.mode = *mode;
    args.params.target = args.target;
    instance = tpd::GenerateRandomInstance(args.params, args.seed);
  }
  const std::string text = tpd::InstanceToJson(instance);
  if (args.output.empty()) {
    std::cout << text;
  } else {
    tpd::WriteTextFile(args.output, text);
  }
  return kExitYes;
}

int RunBench(const std::string& spec_path, const std::string& csv_path, int jobs,
             const std::string& dump_path) {
  tpd::SweepSpec spec = tpd::ParseSweepSpec(tpd::ReadTextFile(spec_path));
  if (jobs > 0) spec.jobs = jobs;
  const tpd::SweepResult result = tpd::RunSweep(spec);
  const std::string csv = tpd::SweepCsv(result);
  if (csv_path.empty()) {
    std::cout << csv;
  } else {
    tpd::WriteTextFile(csv_path, csv);
  }
  std::cerr << "instances: " << result.instances << "\n"
            << "disagreements: " << result.disagreements << "\n";
  for (const auto& [name, tally] : result.randomized) {
    std::cerr << name << ": false-no " << tally.false_no << " of " << tally.oracle_yes_runs
              << " oracle-yes runs (allowed " << tally.allowed_false_no << ")\n";
  }
  std::cerr << "wall time: " << result.seconds << " s\n";
  if (result.minimal_disagreement) {
    tpd::WriteTextFile(dump_path, tpd::InstanceToJson(*result.minimal_disagreement));
    std::cerr << "smallest disagreeing instance written to " << dump_path << "\n";
  }
  return result.ok() ? kExitYes : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-constrained phylogenetic diversity solvers"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Decide an instance and emit a schedule");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--algorithm", solve.algorithm,
                        "auto|brute|fpt-d|fpt-dbar|hours-teams|hours-budget|"
                        "hours-subsets|xp-counts|star");
  solve_cmd->add_option("--delta", solve.delta, "Error bound of the randomized solvers");
  solve_cmd->add_option("--seed", solve.seed, "Seed for the randomized solvers")
      ->envname("TPD_SEED");
  solve_cmd->add_option("--output", solve.output, "Schedule JSON output path");
  solve_cmd->add_option("--mode", solve.mode, "Override the instance mode");
  solve_cmd->add_option("--threads", solve.threads, "Trial worker threads");
  solve_cmd->add_option("--max-colors", solve.max_colors,
                        "Largest D (or 2*Dbar) the randomized solvers accept");

  std::string verify_instance, verify_schedule;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a schedule against an instance");
  verify_cmd->add_option("--instance", verify_instance, "Instance JSON")->required();
  verify_cmd->add_option("--schedule", verify_schedule, "Schedule JSON")->required();

  std::string pd_instance, pd_taxa;
  CLI::App* pd_cmd = app.add_subcommand("pd", "Phylogenetic diversity of a set of taxa");
  pd_cmd->add_option("--instance", pd_instance, "Instance JSON")->required();
  pd_cmd->add_option("--taxa", pd_taxa, "Comma-separated taxon names")->required();

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--taxa", gen.params.num_taxa, "Number of taxa");
  gen_cmd->add_option("--teams", gen.params.num_teams, "Number of teams");
  gen_cmd->add_option("--max-ex", gen.params.max_ex, "Largest extinction time");
  gen_cmd->add_option("--max-ell", gen.params.max_ell, "Largest rescue length");
  gen_cmd->add_option("--max-omega", gen.params.max_omega, "Largest edge weight");
  gen_cmd->add_option("--shape", gen.shape,
                      "star|caterpillar|random-binary|random-multifurcating");
  gen_cmd->add_option("--mode", gen.mode, "collaborative|strict");
  gen_cmd->add_option("--savable", gen.params.savable_probability,
                      "Chance that a taxon can be saved on its own");
  gen_cmd->add_option("--target", gen.target, "Target diversity (default ceil(PD/2))");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->envname("TPD_SEED");
  gen_cmd->add_option("--subset-sum", gen.subset_sum,
                      "Comma-separated values; emits the subset-sum reduction instead");
  gen_cmd->add_option("--k", gen.k, "Subset size for --subset-sum");
  gen_cmd->add_option("--goal", gen.goal, "Subset sum goal for --subset-sum");
  gen_cmd->add_option("--q", gen.q, "Offset for --subset-sum (default max(sum, goal) + 1)");
  gen_cmd->add_option("--output", gen.output, "Output path (default stdout)");

  std::string bench_spec, bench_csv, bench_dump = "disagreement.json";
  int bench_jobs = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a cross-validation sweep");
  bench_cmd->add_option("--spec", bench_spec, "Sweep spec JSON")->required();
  bench_cmd->add_option("--output", bench_csv, "CSV output path (default stdout)");
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads (overrides the spec)");
  bench_cmd->add_option("--dump", bench_dump, "Where to write the smallest disagreeing instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve_cmd) return RunSolve(solve);
    if (*verify_cmd) return RunVerify(verify_instance, verify_schedule);
    if (*pd_cmd) return RunPd(pd_instance, pd_taxa);
    if (*gen_cmd) return RunGen(gen);
    if (*bench_cmd) return RunBench(bench_spec, bench_csv, bench_jobs, bench_dump);
  } catch (const tpd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tpd::IsGuardError(e.code()) ? kExitGuard : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
