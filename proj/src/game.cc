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

#include "uml_arena/game.h"

#include <utility>

#include "uml_arena/errors.h"

namespace uml_arena {

Action ActionFromInt(int v) {
  if (v != 0 && v != 1) {
    throw DomainError("action must be 0 or 1, got " + std::to_string(v));
  }
  return static_cast<Action>(v);
}

namespace {

void CheckGrid(const std::string& game, const char* which,
               const RewardGrid& grid) {
  for (const auto& row : grid) {
    for (int v : row) {
      if (v < kMinReward || v > kMaxReward) {
        throw DomainError("game '" + game + "': " + which + " entry " +
                          std::to_string(v) + " outside {0..4}");
      }
    }
  }
}

}  // namespace

MatrixGame::MatrixGame(std::string name, const RewardGrid& r1,
                       const RewardGrid& r2)
    : name_(std::move(name)), r1_(r1), r2_(r2) {
  CheckGrid(name_, "r1", r1_);
  CheckGrid(name_, "r2", r2_);
}

int MatrixGame::Reward(Seat seat, Action own, Action opp) const {
  if (seat == Seat::kRow) return r1_[Index(own)][Index(opp)];
  return r2_[Index(opp)][Index(own)];
}

const std::vector<std::string>& BuiltinGameNames() {
  static const std::vector<std::string> kNames = {
      "prisoners_dilemma", "stag_hunt", "chicken", "battle_of_sexes",
      "matching_pennies"};
  return kNames;
}

MatrixGame BuiltinGame(std::string_view name) {
  // Mutual cooperation in the Prisoner's Dilemma pays 3 to both players so
  // that r2 is the transpose of r1.
  if (name == "prisoners_dilemma") {
    return MatrixGame("prisoners_dilemma", {{{1, 4}, {0, 3}}},
                      {{{1, 0}, {4, 3}}});
  }
  if (name == "stag_hunt") {
    return MatrixGame("stag_hunt", {{{2, 3}, {0, 4}}}, {{{2, 0}, {3, 4}}});
  }
  if (name == "chicken") {
    return MatrixGame("chicken", {{{0, 4}, {1, 2}}}, {{{0, 1}, {4, 2}}});
  }
  if (name == "battle_of_sexes") {
    return MatrixGame("battle_of_sexes", {{{2, 0}, {0, 4}}},
                      {{{4, 0}, {0, 2}}});
  }
  if (name == "matching_pennies") {
    return MatrixGame("matching_pennies", {{{4, 0}, {0, 4}}},
                      {{{0, 4}, {4, 0}}});
  }
  std::string valid;
  for (const auto& n : BuiltinGameNames()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw LookupError("unknown game '" + std::string(name) +
                    "'; valid games: " + valid);
}

Rewards Payoff(const MatrixGame& game, const JointAction& joint) {
  return {game.r1()[Index(joint.row)][Index(joint.col)],
          game.r2()[Index(joint.row)][Index(joint.col)]};
}

int LossOf(int reward) {
  if (reward < kMinReward || reward > kMaxReward) {
    throw DomainError("reward " + std::to_string(reward) +
                      " outside {0..4}");
  }
  return kMaxReward - reward;
}

}  // namespace uml_arena
