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

#ifndef UML_ARENA_AIXI_H_
#define UML_ARENA_AIXI_H_

#include <array>
#include <cstdint>
#include <optional>

#include "uml_arena/bayes_model.h"
#include "uml_arena/game.h"

namespace uml_arena {

// How the planning depth evolves over time.
//   kFixed: the horizon end is fixed at step `depth`; the depth at step t is
//     depth - t + 1, never below 1.
//   kMoving: always `depth`.
//   kAlmostConsistent: depth, depth-1, ..., min_depth, then again from depth.
struct HorizonVariant {
  enum class Kind { kFixed, kMoving, kAlmostConsistent };

  Kind kind = Kind::kAlmostConsistent;
  int depth = 8;
  int min_depth = 2;

  static HorizonVariant Fixed(int d) { return {Kind::kFixed, d, 1}; }
  static HorizonVariant Moving(int d) { return {Kind::kMoving, d, d}; }
  static HorizonVariant AlmostConsistent(int d_max = 8, int d_min = 2) {
    return {Kind::kAlmostConsistent, d_max, d_min};
  }

  friend bool operator==(const HorizonVariant&,
                         const HorizonVariant&) = default;
};

// Throws DomainError for depth < 1 or, for the almost consistent variant,
// unless depth >= min_depth >= 2.
void ValidateHorizon(const HorizonVariant& h);

// Planning depth used at step t >= 1.
int HorizonDepth(const HorizonVariant& h, std::int64_t t);

// Number of nodes expanded by one ExpectiminValues call at depth d:
// sum_{k<d} 4^k.
std::uint64_t ExpectiminTreeSize(int d);

// Values (v0, v1) of playing 0 or 1 against a known current opponent move
// s0, looking d steps ahead. `counts` must already contain every transition
// up to and including the one into s0; each branch (a, s) sees its own copy
// extended by the transition a: s0 -> s. The belief is held fixed inside the
// tree. If `nodes` is given it is incremented once per expanded node.
std::array<double, 2> ExpectiminValues(Action s0, const TransitionCounts& counts,
                                       const LossMatrixBelief& belief, int d,
                                       std::uint64_t* nodes = nullptr);

struct AixiConfig {
  HorizonVariant horizon = HorizonVariant::AlmostConsistent();
  LossSupport support;

  friend bool operator==(const AixiConfig&, const AixiConfig&) = default;
};

// The far-sighted Bayes-optimal player over the class of two-state Markov
// opponents. Fully deterministic: the next action is a function of the
// state alone.
class AixiAgent {
 public:
  explicit AixiAgent(AixiConfig config = {});

  // Agent resumed from an explicit state; `step` is the step about to be
  // played and `last` the joint move of step - 1 (required when step > 1).
  static AixiAgent Restore(const HorizonVariant& horizon,
                           const TransitionCounts& counts,
                           const LossMatrixBelief& belief, std::int64_t step,
                           const std::optional<Perspective>& last);

  const TransitionCounts& counts() const { return counts_; }
  const LossMatrixBelief& belief() const { return belief_; }
  const HorizonVariant& horizon() const { return horizon_; }
  std::int64_t step() const { return t_; }  // step about to be played, >= 1
  const std::optional<Perspective>& last_joint() const { return last_; }

  // Root values V(a): the per-action expectimin values mixed over the
  // opponent's unknown simultaneous move with the predictive weights.
  std::array<double, 2> ActionValues(std::uint64_t* nodes = nullptr) const;

  // argmin_a V(a), ties to action 0.
  Action Act(std::uint64_t* nodes = nullptr) const;

  // Reveals the joint move of the current step and our own loss.
  void Observe(const Perspective& joint, int own_loss);

 private:
  HorizonVariant horizon_;
  TransitionCounts counts_;
  LossMatrixBelief belief_;
  std::int64_t t_ = 1;
  std::optional<Perspective> last_;
};

inline Action AixiAct(const AixiAgent& agent) { return agent.Act(); }
inline AixiAgent AixiObserve(AixiAgent agent, const Perspective& joint,
                             int own_loss) {
  agent.Observe(joint, own_loss);
  return agent;
}

}  // namespace uml_arena

#endif  // UML_ARENA_AIXI_H_
