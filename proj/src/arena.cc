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

#include "uml_arena/arena.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "uml_arena/errors.h"

namespace uml_arena {

bool IsFoe(const PlayerSpec& p) { return std::holds_alternative<FoeConfig>(p); }

bool IsRandomized(const PlayerSpec& p) {
  if (IsFoe(p)) return true;
  if (const auto* s = std::get_if<ScriptedSpec>(&p)) {
    return IsRandomized(s->spec);
  }
  return false;
}

std::int64_t DefaultSteps(const PlayerSpec& row, const PlayerSpec& col) {
  return IsFoe(row) || IsFoe(col) ? 20000 : 100;
}

int DefaultRuns(const PlayerSpec& row, const PlayerSpec& col) {
  return IsRandomized(row) || IsRandomized(col) ? 10 : 1;
}

MatchConfig MakeMatchConfig(MatrixGame game, PlayerSpec row, PlayerSpec col,
                            std::uint64_t master_seed) {
  const std::int64_t steps = DefaultSteps(row, col);
  const int runs = DefaultRuns(row, col);
  return {std::move(game), std::move(row), std::move(col), steps, runs,
          master_seed};
}

namespace {

class AixiPlayer : public Player {
 public:
  AixiPlayer(const AixiConfig& config, Seat seat)
      : agent_(config), seat_(seat) {}

  Action Act(std::span<const JointAction>) override { return agent_.Act(); }
  void Observe(const JointAction& joint, int own_reward) override {
    agent_.Observe(View(joint, seat_), LossOf(own_reward));
  }

 private:
  AixiAgent agent_;
  Seat seat_;
};

class FoePlayer : public Player {
 public:
  FoePlayer(const FoeConfig& config, Seat seat, std::uint64_t seed)
      : agent_(config), seat_(seat), rng_(seed) {}

  Action Act(std::span<const JointAction> history) override {
    std::optional<Perspective> last;
    if (!history.empty()) last = View(history.back(), seat_);
    return agent_.Act(last, rng_);
  }
  void Observe(const JointAction&, int own_reward) override {
    agent_.Observe(own_reward, rng_);
  }
  void Finish() override { agent_.Finish(rng_); }

 private:
  FoeAgent agent_;
  Seat seat_;
  Rng rng_;
};

class ScriptedPlayer : public Player {
 public:
  ScriptedPlayer(OpponentSpec spec, Seat seat, std::uint64_t seed)
      : spec_(std::move(spec)), seat_(seat), rng_(seed) {
    ValidateOpponent(spec_);
  }

  Action Act(std::span<const JointAction>) override {
    return OpponentAct(spec_, state_, rng_);
  }
  void Observe(const JointAction& joint, int) override {
    state_ = OpponentObserve(spec_, state_, View(joint, seat_));
  }

 private:
  OpponentSpec spec_;
  OpponentState state_;
  Seat seat_;
  Rng rng_;
};

}  // namespace

std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec,
                                   const MatrixGame& /*game*/, Seat seat,
                                   std::uint64_t seed) {
  if (const auto* a = std::get_if<AixiConfig>(&spec)) {
    return std::make_unique<AixiPlayer>(*a, seat);
  }
  if (const auto* f = std::get_if<FoeConfig>(&spec)) {
    return std::make_unique<FoePlayer>(*f, seat, seed);
  }
  return std::make_unique<ScriptedPlayer>(std::get<ScriptedSpec>(spec).spec,
                                          seat, seed);
}

TimeSeries PlaySeries(const MatrixGame& game, Player& row, Player& col,
                      std::int64_t steps) {
  if (steps < 1) throw ContractViolation("a match needs at least one step");
  TimeSeries series;
  series.joints.reserve(steps);
  series.rewards.reserve(steps);
  for (std::int64_t t = 1; t <= steps; ++t) {
    try {
      const std::span<const JointAction> history(series.joints);
      JointAction joint;
      joint.row = row.Act(history);
      joint.col = col.Act(history);
      const Rewards r = Payoff(game, joint);
      series.joints.push_back(joint);
      series.rewards.push_back(r);
      row.Observe(joint, r.row);
      col.Observe(joint, r.col);
    } catch (const std::exception& e) {
      throw ArenaError("step " + std::to_string(t) + ": " + e.what());
    }
  }
  row.Finish();
  col.Finish();
  return series;
}

std::uint64_t RunSeed(std::uint64_t master_seed, int run) {
  return DeriveSeed(master_seed, static_cast<std::uint64_t>(run));
}

int WorkerThreads() {
  int n = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("UML_ARENA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

std::vector<TimeSeries> RunMatch(const MatchConfig& cfg) {
  return RunMatch(cfg, WorkerThreads());
}

std::vector<TimeSeries> RunMatch(const MatchConfig& cfg, int max_threads) {
  if (cfg.runs < 1) throw ContractViolation("runs must be >= 1");
  std::vector<TimeSeries> out(cfg.runs);
  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (int r = next++; r < cfg.runs; r = next++) {
      try {
        const std::uint64_t seed = RunSeed(cfg.master_seed, r);
        auto row = MakePlayer(cfg.row, cfg.game, Seat::kRow, DeriveSeed(seed, 0));
        auto col = MakePlayer(cfg.col, cfg.game, Seat::kCol, DeriveSeed(seed, 1));
        out[r] = PlaySeries(cfg.game, *row, *col, cfg.steps);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) {
          error = std::make_exception_ptr(
              ArenaError("run " + std::to_string(r) + ", " + e.what()));
        }
      }
    }
  };
  const int threads = std::min(max_threads, cfg.runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

void CheckStep(const TimeSeries& series, std::int64_t t) {
  if (t < 1 || t > series.size()) {
    throw DomainError("step " + std::to_string(t) + " outside 1.." +
                      std::to_string(series.size()));
  }
}

Action ActionOf(const JointAction& j, Seat seat) {
  return seat == Seat::kRow ? j.row : j.col;
}

int RewardOf(const Rewards& r, Seat seat) {
  return seat == Seat::kRow ? r.row : r.col;
}

}  // namespace

double CooperationRate(const TimeSeries& series, Seat seat, std::int64_t t) {
  return CooperationRateWindow(series, seat, 1, t);
}

double CooperationRateWindow(const TimeSeries& series, Seat seat,
                             std::int64_t first, std::int64_t last) {
  CheckStep(series, first);
  CheckStep(series, last);
  if (first > last) throw DomainError("empty step window");
  std::int64_t coop = 0;
  for (std::int64_t s = first; s <= last; ++s) {
    coop += ActionOf(series.joints[s - 1], seat) == Action::kCooperate;
  }
  return static_cast<double>(coop) / static_cast<double>(last - first + 1);
}

double AverageReward(const TimeSeries& series, Seat seat, std::int64_t t) {
  CheckStep(series, t);
  std::int64_t sum = 0;
  for (std::int64_t s = 0; s < t; ++s) sum += RewardOf(series.rewards[s], seat);
  return static_cast<double>(sum) / static_cast<double>(t);
}

std::vector<AggregatePoint> AggregateRuns(std::span<const TimeSeries> runs,
                                          Metric metric, Seat seat,
                                          std::span<const std::int64_t> grid) {
  if (runs.empty()) throw ContractViolation("cannot aggregate zero runs");
  std::vector<std::vector<double>> values(grid.size());
  for (const auto& series : runs) {
    // Running sums let every grid point be read in one pass.
    std::int64_t sum = 0;
    std::int64_t s = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CheckStep(series, grid[g]);
      if (g > 0 && grid[g] < grid[g - 1]) {
        throw ContractViolation("metric grid must be nondecreasing");
      }
      for (; s < grid[g]; ++s) {
        sum += metric == Metric::kCooperationRate
                   ? Index(ActionOf(series.joints[s], seat))
                   : RewardOf(series.rewards[s], seat);
      }
      values[g].push_back(static_cast<double>(sum) /
                          static_cast<double>(grid[g]));
    }
  }
  std::vector<AggregatePoint> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& v = values[g];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    out.push_back({grid[g], mean, std::sqrt(var)});
  }
  return out;
}

std::vector<std::int64_t> MetricGrid(std::int64_t steps) {
  std::vector<std::int64_t> grid;
  if (steps <= 1000) {
    for (std::int64_t t = 1; t <= steps; ++t) grid.push_back(t);
    return grid;
  }
  constexpr int kPoints = 500;
  const double log_t = std::log(static_cast<double>(steps));
  std::int64_t prev = 0;
  for (int k = 0; k < kPoints; ++k) {
    const double target = std::exp(log_t * k / (kPoints - 1));
    std::int64_t v = std::llround(target);
    v = std::max(v, prev + 1);
    v = std::min(v, steps - (kPoints - 1 - k));
    grid.push_back(v);
    prev = v;
  }
  return grid;
}

}  // namespace uml_arena
