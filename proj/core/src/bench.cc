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

#include "tpd/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "tpd/error.h"
#include "tpd/oracle.h"
#include "tpd/rng.h"

namespace tpd {
namespace {

using nlohmann::json;

constexpr double kFalseNoQuantile = 0.999;

[[noreturn]] void SchemaFail(const std::string& what) {
  throw Error(ErrorCode::kSchemaError, "sweep spec: " + what);
}

template <typename T>
void ReadNumber(const json& doc, const char* name, T* out) {
  if (!doc.contains(name)) return;
  const json& v = doc.at(name);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) SchemaFail(std::string(name) + " must be a number");
  } else {
    if (!v.is_number_integer()) SchemaFail(std::string(name) + " must be an integer");
  }
  *out = v.get<T>();
}

struct InstanceRun {
  std::vector<BenchRow> rows;
  bool disagrees = false;
};

InstanceRun RunInstance(const SweepSpec& spec, int index) {
  using Clock = std::chrono::steady_clock;
  const uint64_t seed = TrialSeed(spec.seed, static_cast<uint64_t>(index));
  const Instance instance = SweepInstance(spec, index);
  const DerivedIndex derived = BuildDerivedIndex(instance);

  BenchRow base;
  base.index = index;
  base.seed = seed;
  base.shape = instance.tree().IsStar() ? "star"
               : instance.tree().IsBinary() ? "binary"
                                            : "multifurcating";
  base.num_taxa = instance.num_taxa();
  base.num_teams = instance.num_teams();
  base.max_ex = derived.max_ex;
  base.target = derived.target;
  base.dbar = derived.dbar;

  InstanceRun run;
  const bool strict = instance.mode() == Mode::kStrict;
  auto start = Clock::now();
  const SolveOutcome oracle =
      strict ? BruteForceSTimePd(instance) : BruteForceTimePd(instance);
  BenchRow oracle_row = base;
  oracle_row.algorithm = "brute";
  oracle_row.decision = oracle.yes ? "yes" : "no";
  oracle_row.value = oracle.optimum.value_or(oracle.pd);
  oracle_row.oracle_yes = oracle.yes;
  oracle_row.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  run.rows.push_back(oracle_row);

  std::vector<Algorithm> algorithms = spec.algorithms;
  if (algorithms.empty()) {
    for (Algorithm a : AllAlgorithms()) {
      if (a != Algorithm::kBrute) algorithms.push_back(a);
    }
  }
  for (Algorithm algorithm : algorithms) {
    if (!SupportsMode(algorithm, instance.mode()) || algorithm == Algorithm::kBrute) continue;
    BenchRow row = base;
    row.algorithm = std::string(AlgorithmName(algorithm));
    row.oracle_yes = oracle.yes;
    bool applicable = true;
    switch (algorithm) {
      case Algorithm::kFptD:
        applicable = derived.target <= spec.fpt_d_max;
        break;
      case Algorithm::kFptDbar:
        applicable = instance.tree().IsBinary() && derived.dbar <= spec.fpt_dbar_max;
        break;
      case Algorithm::kStar:
        applicable = instance.tree().IsStar();
        break;
      default:
        break;
    }
    if (!applicable) {
      row.decision = "skipped";
      row.verdict = Verdict::kSkipped;
      run.rows.push_back(row);
      continue;
    }
    SolveOptions options;
    options.algorithm = algorithm;
    options.randomized.delta = spec.delta;
    options.randomized.seed = seed;
    options.randomized.max_colors = std::max(spec.fpt_d_max, 2 * spec.fpt_dbar_max);
    start = Clock::now();
    try {
      const SolveOutcome out = Solve(instance, options);
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      row.decision = out.yes ? "yes" : "no";
      row.value = out.optimum.value_or(out.pd);
      row.trials = out.trials;
      if (out.yes != oracle.yes) {
        row.verdict = IsRandomized(algorithm) && oracle.yes ? Verdict::kFalseNo
                                                            : Verdict::kDisagree;
      } else if (out.optimum && oracle.optimum && *out.optimum != *oracle.optimum) {
        row.verdict = Verdict::kDisagree;
        row.note = "optimum differs";
      }
    } catch (const Error& e) {
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      if (IsGuardError(e.code())) {
        row.decision = "skipped";
        row.verdict = Verdict::kSkipped;
      } else {
        row.decision = "error";
        row.verdict = Verdict::kDisagree;
      }
      row.note = e.what();
    }
    run.disagrees |= row.verdict == Verdict::kDisagree;
    run.rows.push_back(row);
  }
  return run;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kAgree: return "agree";
    case Verdict::kDisagree: return "disagree";
    case Verdict::kFalseNo: return "false-no";
    case Verdict::kSkipped: return "skipped";
  }
  return "";
}

}  // namespace

SweepSpec ParseSweepSpec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorCode::kParseError, e.byte, "malformed sweep spec");
  }
  if (!doc.is_object()) SchemaFail("expected an object");
  SweepSpec spec;
  ReadNumber(doc, "seed", &spec.seed);
  ReadNumber(doc, "count", &spec.count);
  ReadNumber(doc, "min_taxa", &spec.min_taxa);
  ReadNumber(doc, "max_taxa", &spec.max_taxa);
  ReadNumber(doc, "min_teams", &spec.min_teams);
  ReadNumber(doc, "max_teams", &spec.max_teams);
  ReadNumber(doc, "max_ex", &spec.max_ex);
  ReadNumber(doc, "max_ell", &spec.max_ell);
  ReadNumber(doc, "max_omega", &spec.max_omega);
  ReadNumber(doc, "savable_probability", &spec.savable_probability);
  ReadNumber(doc, "delta", &spec.delta);
  ReadNumber(doc, "fpt_d_max", &spec.fpt_d_max);
  ReadNumber(doc, "fpt_dbar_max", &spec.fpt_dbar_max);
  ReadNumber(doc, "jobs", &spec.jobs);
  if (doc.contains("shapes")) {
    spec.shapes.clear();
    for (const json& s : doc.at("shapes")) {
      auto shape = s.is_string() ? ParseTreeShape(s.get<std::string>()) : std::nullopt;
      if (!shape) SchemaFail("unknown shape " + s.dump());
      spec.shapes.push_back(*shape);
    }
  }
  if (doc.contains("algorithms")) {
    for (const json& a : doc.at("algorithms")) {
      auto algorithm = a.is_string() ? ParseAlgorithm(a.get<std::string>()) : std::nullopt;
      if (!algorithm || *algorithm == Algorithm::kAuto) {
        SchemaFail("unknown algorithm " + a.dump());
      }
      spec.algorithms.push_back(*algorithm);
    }
  }
  if (doc.contains("mode")) {
    auto mode = doc.at("mode").is_string() ? ParseMode(doc.at("mode").get<std::string>())
                                           : std::nullopt;
    if (!mode) SchemaFail("unknown mode");
    spec.mode = *mode;
  }
  if (doc.contains("target")) {
    const json& t = doc.at("target");
    if (t == "uniform") {
      spec.uniform_target = true;
    } else if (t == "half") {
      spec.uniform_target = false;
    } else {
      SchemaFail("target must be \"uniform\" or \"half\"");
    }
  }
  if (spec.count < 0 || spec.min_taxa < 2 || spec.max_taxa < spec.min_taxa ||
      spec.min_teams < 0 || spec.max_teams < spec.min_teams || spec.shapes.empty() ||
      spec.jobs < 1 || !(spec.delta > 0 && spec.delta < 1)) {
    SchemaFail("parameters out of range");
  }
  return spec;
}

Instance SweepInstance(const SweepSpec& spec, int index) {
  const uint64_t seed = TrialSeed(spec.seed, static_cast<uint64_t>(index));
  std::mt19937_64 rng(seed);
  GeneratorParams params;
  params.num_taxa = spec.min_taxa +
                    static_cast<int>(UniformBelow(rng, spec.max_taxa - spec.min_taxa + 1));
  params.num_teams = spec.min_teams +
                     static_cast<int>(UniformBelow(rng, spec.max_teams - spec.min_teams + 1));
  params.max_ex = spec.max_ex;
  params.max_ell = spec.max_ell;
  params.max_omega = spec.max_omega;
  params.shape = spec.shapes[UniformBelow(rng, spec.shapes.size())];
  params.mode = spec.mode;
  params.savable_probability = spec.savable_probability;
  const uint64_t target_draw = rng();
  Instance instance = GenerateRandomInstance(params, seed);
  if (!spec.uniform_target) return instance;
  const int64_t total = instance.tree().total_weight();
  return instance.WithTarget(
      1 + static_cast<int64_t>(target_draw % static_cast<uint64_t>(total)));
}

SweepResult RunSweep(const SweepSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<InstanceRun> runs(spec.count);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < spec.count; i = next++) runs[i] = RunInstance(spec, i);
  };
  if (spec.jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < spec.jobs; ++j) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  SweepResult result;
  result.instances = spec.count;
  std::optional<std::tuple<int, int, int64_t, int>> smallest;
  for (int i = 0; i < spec.count; ++i) {
    for (const BenchRow& row : runs[i].rows) {
      result.rows.push_back(row);
      if (row.verdict == Verdict::kSkipped || row.algorithm == "brute") continue;
      ++result.runs[row.algorithm];
      if (row.verdict == Verdict::kDisagree) ++result.disagreements;
      const auto algorithm = ParseAlgorithm(row.algorithm);
      if (!algorithm || !IsRandomized(*algorithm)) continue;
      RandomizedTally& tally = result.randomized[row.algorithm];
      if (row.oracle_yes) ++tally.oracle_yes_runs;
      if (row.verdict == Verdict::kFalseNo) ++tally.false_no;
      if (!row.oracle_yes && row.decision == "yes") ++tally.yes_on_no;
    }
    if (runs[i].disagrees) {
      const BenchRow& r = runs[i].rows.front();
      const auto key = std::make_tuple(r.num_taxa, r.num_teams, r.target + r.dbar, i);
      if (!smallest || key < *smallest) smallest = key;
    }
  }
  for (auto& [name, tally] : result.randomized) {
    tally.allowed_false_no =
        BinomialQuantile(tally.oracle_yes_runs, spec.delta, kFalseNoQuantile);
    if (tally.false_no > tally.allowed_false_no) {
      result.disagreements += static_cast<int>(tally.false_no - tally.allowed_false_no);
    }
  }
  if (smallest) result.minimal_disagreement = SweepInstance(spec, std::get<3>(*smallest));
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string SweepCsv(const SweepResult& result) {
  std::ostringstream out;
  out << "index,seed,shape,taxa,teams,max_ex,D,dbar,algorithm,decision,value,"
         "oracle,verdict,runtime_ms,trials,note\n";
  for (const BenchRow& r : result.rows) {
    out << r.index << ',' << r.seed << ',' << r.shape << ',' << r.num_taxa << ','
        << r.num_teams << ',' << r.max_ex << ',' << r.target << ',' << r.dbar << ','
        << r.algorithm << ',' << r.decision << ',' << r.value << ','
        << (r.oracle_yes ? "yes" : "no") << ',' << VerdictName(r.verdict) << ','
        << r.runtime_ms << ',' << r.trials << ',' << CsvField(r.note) << '\n';
  }
  return out.str();
}

uint64_t BinomialQuantile(uint64_t n, double p, double q) {
  if (n == 0 || p <= 0) return 0;
  if (p >= 1) return n;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double cdf = 0;
  for (uint64_t k = 0; k <= n; ++k) {
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n - k + 1.0) + k * log_p + (n - k) * log_q;
    cdf += std::exp(log_pmf);
    if (cdf >= q) return k;
  }
  return n;
}

}  // namespace tpd
