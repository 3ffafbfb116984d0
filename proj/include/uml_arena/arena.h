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

#ifndef UML_ARENA_ARENA_H_
#define UML_ARENA_ARENA_H_

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "uml_arena/aixi.h"
#include "uml_arena/foe.h"
#include "uml_arena/game.h"
#include "uml_arena/opponents.h"

namespace uml_arena {

struct ScriptedSpec {
  OpponentSpec spec;
  friend bool operator==(const ScriptedSpec&, const ScriptedSpec&) = default;
};

using PlayerSpec = std::variant<AixiConfig, FoeConfig, ScriptedSpec>;

bool IsFoe(const PlayerSpec& p);
bool IsRandomized(const PlayerSpec& p);

struct MatchConfig {
  MatrixGame game;
  PlayerSpec row;
  PlayerSpec col;
  std::int64_t steps = 100;
  int runs = 1;
  std::uint64_t master_seed = 0;

  friend bool operator==(const MatchConfig&, const MatchConfig&) = default;
};

// 20000 elementary steps when a FoE player takes part, else 100.
std::int64_t DefaultSteps(const PlayerSpec& row, const PlayerSpec& col);
// 10 runs when any player randomizes, else 1.
int DefaultRuns(const PlayerSpec& row, const PlayerSpec& col);

// MatchConfig with the default step and run counts filled in.
MatchConfig MakeMatchConfig(MatrixGame game, PlayerSpec row, PlayerSpec col,
                            std::uint64_t master_seed = 0);

// One run of a repeated game; entry t-1 describes step t.
struct TimeSeries {
  std::vector<JointAction> joints;
  std::vector<Rewards> rewards;

  std::int64_t size() const { return static_cast<std::int64_t>(joints.size()); }
  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

// A participant in a match. Act sees the joint moves of completed steps
// only; the joint move of the current step is revealed afterwards through
// Observe together with the player's own reward.
class Player {
 public:
  virtual ~Player() = default;
  virtual Action Act(std::span<const JointAction> history) = 0;
  virtual void Observe(const JointAction& joint, int own_reward) = 0;
  // Called once after the last step.
  virtual void Finish() {}
};

std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec,
                                   const MatrixGame& game, Seat seat,
                                   std::uint64_t seed);

// Plays `steps` simultaneous rounds between two players.
TimeSeries PlaySeries(const MatrixGame& game, Player& row, Player& col,
                      std::int64_t steps);

// Seed of run r.
std::uint64_t RunSeed(std::uint64_t master_seed, int run);

// All runs of a match, index r holding run r. Runs execute concurrently on up
// to UML_ARENA_THREADS threads; results do not depend on the thread count.
std::vector<TimeSeries> RunMatch(const MatchConfig& cfg);
std::vector<TimeSeries> RunMatch(const MatchConfig& cfg, int max_threads);

// Fraction of steps 1..t in which `seat` played 1.
double CooperationRate(const TimeSeries& series, Seat seat, std::int64_t t);
// Fraction of steps first..last (inclusive, 1-based) in which `seat` played 1.
double CooperationRateWindow(const TimeSeries& series, Seat seat,
                             std::int64_t first, std::int64_t last);
// (1/t) sum_{s<=t} reward of `seat`.
double AverageReward(const TimeSeries& series, Seat seat, std::int64_t t);

enum class Metric { kCooperationRate, kAverageReward };

struct AggregatePoint {
  std::int64_t t = 0;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over runs
};

// Pointwise mean and standard deviation of a metric over runs on `grid`.
// Throws ContractViolation for an empty list of runs.
std::vector<AggregatePoint> AggregateRuns(std::span<const TimeSeries> runs,
                                          Metric metric, Seat seat,
                                          std::span<const std::int64_t> grid);

// Every step for steps <= 1000, else 500 log-spaced distinct steps from 1 to
// `steps`.
std::vector<std::int64_t> MetricGrid(std::int64_t steps);

// Hardware concurrency capped by UML_ARENA_THREADS (at least 1).
int WorkerThreads();

}  // namespace uml_arena

#endif  // UML_ARENA_ARENA_H_
