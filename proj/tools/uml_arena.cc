// Copyright 2026 The UML Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run one match, sweep a directory of configs, list
// the built-in identifiers, or run the self-test.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "uml_arena/acceptance.h"
#include "uml_arena/arena.h"
#include "uml_arena/config.h"
#include "uml_arena/csv.h"
#include "uml_arena/errors.h"

namespace fs = std::filesystem;
using namespace uml_arena;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;
constexpr int kSelftestFailed = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> runs;
  std::optional<std::int64_t> steps;
};

void AddOverrideFlags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--runs", o.runs, "number of runs")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", o.steps, "steps per run")->check(CLI::PositiveNumber);
}

void Apply(const Overrides& o, RunConfig& c) {
  if (o.seed) c.match.master_seed = *o.seed;
  if (o.runs) c.match.runs = *o.runs;
  if (o.steps) c.match.steps = *o.steps;
}

const char* SeatName(Seat s) { return s == Seat::kRow ? "row" : "col"; }

// Writes the raw series, the per-seat aggregates and the effective config.
void WriteOutputs(const RunConfig& c, const std::vector<TimeSeries>& runs,
                  const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  EmitSeriesCsv(runs, (dir / "series.csv").string());
  const auto grid = MetricGrid(c.match.steps);
  for (Seat seat : {Seat::kRow, Seat::kCol}) {
    const std::string s = SeatName(seat);
    EmitAggregateCsv(AggregateRuns(runs, Metric::kCooperationRate, seat, grid),
                     (dir / ("cooperation_" + s + ".csv")).string());
    EmitAggregateCsv(AggregateRuns(runs, Metric::kAverageReward, seat, grid),
                     (dir / ("reward_" + s + ".csv")).string());
  }
  RunConfig effective = c;
  effective.out_dir = dir.string();
  WriteTextFile((dir / "run.cfg").string(), SerializeConfig(effective));
}

std::string Summary(const RunConfig& c, const std::vector<TimeSeries>& runs) {
  const std::int64_t t = c.match.steps;
  const std::vector<std::int64_t> at_end = {t};
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s: %s vs %s, %lld steps, %d run(s), seed %llu\n",
                c.match.game.name().c_str(), c.row_id.c_str(), c.col_id.c_str(),
                static_cast<long long>(t), c.match.runs,
                static_cast<unsigned long long>(c.match.master_seed));
  out += buf;
  for (Seat seat : {Seat::kRow, Seat::kCol}) {
    const auto coop = AggregateRuns(runs, Metric::kCooperationRate, seat, at_end)[0];
    const auto reward = AggregateRuns(runs, Metric::kAverageReward, seat, at_end)[0];
    std::snprintf(buf, sizeof(buf),
                  "  %s: cooperation %.3f +- %.3f, average reward %.3f +- %.3f\n",
                  SeatName(seat), coop.mean, coop.std, reward.mean, reward.std);
    out += buf;
  }
  return out;
}

int Run(const std::string& path, const Overrides& o) {
  RunConfig c = LoadConfig(path);
  Apply(o, c);
  const fs::path dir = o.out ? *o.out : !c.out_dir.empty() ? c.out_dir : "out";
  const auto runs = RunMatch(c.match);
  WriteOutputs(c, runs, dir);
  std::cout << Summary(c, runs) << "  wrote " << dir.string() << "\n";
  return kOk;
}

int Sweep(const std::string& dir, const Overrides& o) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw ConfigError(0, "'" + dir + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError(0, "no .cfg files in '" + dir + "'");

  // Validate everything before running anything.
  std::vector<RunConfig> configs;
  for (const auto& f : files) {
    configs.push_back(LoadConfig(f.string()));
    Apply(o, configs.back());
  }

  const fs::path root = o.out ? *o.out : "out";
  std::vector<std::string> summaries(configs.size());
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const auto runs = RunMatch(configs[i].match, 1);
        WriteOutputs(configs[i], runs, root / files[i].stem());
        summaries[i] = Summary(configs[i], runs);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int threads = std::min<int>(WorkerThreads(), static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int status = kOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << files[i].string() << ": " << errors[i] << "\n";
      status = kRuntimeError;
    } else {
      std::cout << "[" << files[i].filename().string() << "] " << summaries[i];
    }
  }
  if (status == kOk) std::cout << "wrote " << root.string() << "\n";
  return status;
}

int Selftest(const std::vector<int>& only) {
  const auto results = RunAcceptance(
      [](const CriterionResult& r) { std::cout << FormatCriterion(r) << std::endl; }, only);
  if (results.empty()) throw ConfigError(0, "no criterion matches the selection");
  const bool ok = AllGatingPassed(results);
  std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok ? kOk : kSelftestFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tournaments of learning agents in repeated 2x2 games"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path, config_dir;
  std::vector<int> only;

  auto* run = app.add_subcommand("run", "play one match described by a config file");
  run->add_option("config", config_path, "key=value config file")->required();
  AddOverrideFlags(run, overrides);

  auto* sweep = app.add_subcommand("sweep", "run every *.cfg in a directory");
  sweep->add_option("dir", config_dir, "directory of config files")->required();
  AddOverrideFlags(sweep, overrides);

  auto* games = app.add_subcommand("list-games", "print the built-in games");
  auto* opponents = app.add_subcommand("list-opponents", "print the scripted opponents");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--only", only, "criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return Run(config_path, overrides);
    if (*sweep) return Sweep(config_dir, overrides);
    if (*games) {
      for (const auto& name : BuiltinGameNames()) std::cout << name << "\n";
      return kOk;
    }
    if (*opponents) {
      for (const auto& id : OpponentIds()) std::cout << id << "\n";
      return kOk;
    }
    if (*selftest) return Selftest(only);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}
