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

#ifndef UML_ARENA_OPPONENTS_H_
#define UML_ARENA_OPPONENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uml_arena/game.h"
#include "uml_arena/rng.h"

namespace uml_arena {

// Plays 0 and 1 with probability 1/2 each.
struct UniformRandom {
  friend bool operator==(const UniformRandom&, const UniformRandom&) = default;
};

// k = 1: cooperates first, then copies the adversary's previous move.
// k >= 2: defects first, cooperates iff the adversary's last k moves were all
// cooperate.
struct TitForTat {
  int k = 1;
  friend bool operator==(const TitForTat&, const TitForTat&) = default;
};

// Plays `start`, then flips every step.
struct Alternating {
  Action start = Action::kDefect;
  friend bool operator==(const Alternating&, const Alternating&) = default;
};

// Plays Flip(yield_action) until the adversary has played `trigger` for k
// consecutive steps, then plays yield_action for as long as the run lasts.
struct Stubborn {
  int k = 3;
  Action yield_action = Action::kCooperate;
  Action trigger = Action::kDefect;
  friend bool operator==(const Stubborn&, const Stubborn&) = default;
};

using OpponentSpec = std::variant<UniformRandom, TitForTat, Alternating,
                                  Stubborn>;

struct OpponentState {
  // Length of the adversary's current run of the action the strategy watches
  // (cooperate for tit-for-tat, `trigger` for stubborn).
  std::int64_t run = 0;
  std::optional<Action> last_own;
  std::optional<Action> last_adversary;
  std::int64_t step = 0;  // completed steps

  friend bool operator==(const OpponentState&, const OpponentState&) = default;
};

// Throws DomainError when a parameter is out of range (k < 1, TitForTat k > 3).
void ValidateOpponent(const OpponentSpec& spec);

// Chooses the move for the current step. Only UniformRandom touches `rng`.
Action OpponentAct(const OpponentSpec& spec, const OpponentState& state,
                   Rng& rng);

// Folds the realized joint move of the current step (seen from the scripted
// player's seat) into the state.
OpponentState OpponentObserve(const OpponentSpec& spec, OpponentState state,
                              const Perspective& joint);

bool IsRandomized(const OpponentSpec& spec);

// Identifiers accepted on the command line and in config files.
const std::vector<std::string>& OpponentIds();

// Resolves an identifier for a scripted player sitting in `seat` of `game`.
// The stubborn identifiers depend on the game: the stubborn player yields
// away from its favourite cell once the adversary insists for k steps.
// Throws LookupError for unknown identifiers.
OpponentSpec ParseOpponent(std::string_view id, const MatrixGame& game,
                           Seat seat);

// Stubborn(k) as resolved for a seat of a game.
Stubborn StubbornFor(int k, const MatrixGame& game, Seat seat);

}  // namespace uml_arena

#endif  // UML_ARENA_OPPONENTS_H_
