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

#ifndef UML_ARENA_GAME_H_
#define UML_ARENA_GAME_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uml_arena {

// A move in a 2x2 game. In the defect/cooperate games 0 is "defect" and 1 is
// "cooperate"; elsewhere the two values are just the two rows/columns.
enum class Action : std::uint8_t { kDefect = 0, kCooperate = 1 };

inline constexpr int Index(Action a) { return static_cast<int>(a); }
inline constexpr Action Flip(Action a) {
  return a == Action::kDefect ? Action::kCooperate : Action::kDefect;
}
// Throws DomainError unless v is 0 or 1.
Action ActionFromInt(int v);

enum class Seat : std::uint8_t { kRow = 0, kCol = 1 };

struct JointAction {
  Action row = Action::kDefect;
  Action col = Action::kDefect;

  friend bool operator==(const JointAction&, const JointAction&) = default;
};

// A joint action seen from one player's seat.
struct Perspective {
  Action own = Action::kDefect;
  Action opp = Action::kDefect;

  friend bool operator==(const Perspective&, const Perspective&) = default;
};

inline constexpr Perspective View(const JointAction& j, Seat seat) {
  return seat == Seat::kRow ? Perspective{j.row, j.col}
                            : Perspective{j.col, j.row};
}

using RewardGrid = std::array<std::array<int, 2>, 2>;

inline constexpr int kMinReward = 0;
inline constexpr int kMaxReward = 4;

// Two reward matrices indexed [row action][col action]. Immutable after
// construction; every entry lies in {0..4}.
class MatrixGame {
 public:
  // Throws DomainError if an entry is outside {0..4}.
  MatrixGame(std::string name, const RewardGrid& r1, const RewardGrid& r2);

  const std::string& name() const { return name_; }
  const RewardGrid& r1() const { return r1_; }
  const RewardGrid& r2() const { return r2_; }

  // Reward of the player sitting in `seat` when it plays `own` and the other
  // player plays `opp`.
  int Reward(Seat seat, Action own, Action opp) const;

  friend bool operator==(const MatrixGame&, const MatrixGame&) = default;

 private:
  std::string name_;
  RewardGrid r1_;
  RewardGrid r2_;
};

struct Rewards {
  int row = 0;
  int col = 0;

  friend bool operator==(const Rewards&, const Rewards&) = default;
};

// The five games of the experiments, in a fixed order.
const std::vector<std::string>& BuiltinGameNames();

// Throws LookupError naming the valid identifiers for an unknown name.
MatrixGame BuiltinGame(std::string_view name);

Rewards Payoff(const MatrixGame& game, const JointAction& joint);

// loss = 4 - reward. Throws DomainError for rewards outside {0..4}.
int LossOf(int reward);

}  // namespace uml_arena

#endif  // UML_ARENA_GAME_H_
