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

#include "uml_arena/opponents.h"

#include <type_traits>

#include "uml_arena/errors.h"

namespace uml_arena {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void ValidateOpponent(const OpponentSpec& spec) {
  std::visit(Overloaded{
                 [](const UniformRandom&) {},
                 [](const TitForTat& s) {
                   if (s.k < 1 || s.k > 3) {
                     throw DomainError("tit-for-tat k must be in 1..3");
                   }
                 },
                 [](const Alternating&) {},
                 [](const Stubborn& s) {
                   if (s.k < 1) throw DomainError("stubborn k must be >= 1");
                 },
             },
             spec);
}

Action OpponentAct(const OpponentSpec& spec, const OpponentState& state,
                   Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const UniformRandom&) {
            return Bernoulli(rng, 0.5) ? Action::kCooperate : Action::kDefect;
          },
          [&](const TitForTat& s) {
            if (state.step == 0) {
              return s.k == 1 ? Action::kCooperate : Action::kDefect;
            }
            return state.run >= s.k ? Action::kCooperate : Action::kDefect;
          },
          [&](const Alternating& s) {
            if (!state.last_own) return s.start;
            return Flip(*state.last_own);
          },
          [&](const Stubborn& s) {
            return state.run >= s.k ? s.yield_action : Flip(s.yield_action);
          },
      },
      spec);
}

OpponentState OpponentObserve(const OpponentSpec& spec, OpponentState state,
                              const Perspective& joint) {
  Action watched = Action::kCooperate;
  if (const auto* s = std::get_if<Stubborn>(&spec)) watched = s->trigger;
  state.run = joint.opp == watched ? state.run + 1 : 0;
  state.last_own = joint.own;
  state.last_adversary = joint.opp;
  ++state.step;
  return state;
}

bool IsRandomized(const OpponentSpec& spec) {
  return std::holds_alternative<UniformRandom>(spec);
}

const std::vector<std::string>& OpponentIds() {
  static const std::vector<std::string> kIds = {
      "random", "tft1", "tft2", "tft3", "alt0", "alt1", "stubborn3",
      "stubborn2"};
  return kIds;
}

Stubborn StubbornFor(int k, const MatrixGame& game, Seat seat) {
  // Favourite cell: highest own reward, first in row-major order on ties.
  Perspective favourite;
  int best = -1;
  for (int own = 0; own < 2; ++own) {
    for (int opp = 0; opp < 2; ++opp) {
      const int r = game.Reward(seat, ActionFromInt(own), ActionFromInt(opp));
      if (r > best) {
        best = r;
        favourite = {ActionFromInt(own), ActionFromInt(opp)};
      }
    }
  }
  // Coordination cell (battle of sexes): give in to the action the adversary
  // insists on. Otherwise (chicken): keep the favourite action until the
  // adversary insists on it too, then back down.
  if (favourite.own == favourite.opp) {
    return {k, Flip(favourite.own), Flip(favourite.own)};
  }
  return {k, Flip(favourite.own), favourite.own};
}

OpponentSpec ParseOpponent(std::string_view id, const MatrixGame& game,
                           Seat seat) {
  if (id == "random") return UniformRandom{};
  if (id == "tft1") return TitForTat{1};
  if (id == "tft2") return TitForTat{2};
  if (id == "tft3") return TitForTat{3};
  if (id == "alt0") return Alternating{Action::kDefect};
  if (id == "alt1") return Alternating{Action::kCooperate};
  if (id == "stubborn3") return StubbornFor(3, game, seat);
  if (id == "stubborn2") return StubbornFor(2, game, seat);
  std::string valid;
  for (const auto& n : OpponentIds()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw LookupError("unknown opponent '" + std::string(id) +
                    "'; valid opponents: " + valid);
}

}  // namespace uml_arena
