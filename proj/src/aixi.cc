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

#include "uml_arena/aixi.h"

#include <algorithm>

#include "uml_arena/errors.h"

namespace uml_arena {

void ValidateHorizon(const HorizonVariant& h) {
  if (h.depth < 1) throw DomainError("horizon depth must be >= 1");
  if (h.kind == HorizonVariant::Kind::kAlmostConsistent &&
      !(h.depth >= h.min_depth && h.min_depth >= 2)) {
    throw DomainError(
        "almost consistent horizon needs depth >= min_depth >= 2");
  }
}

int HorizonDepth(const HorizonVariant& h, std::int64_t t) {
  if (t < 1) throw DomainError("step index must be >= 1");
  switch (h.kind) {
    case HorizonVariant::Kind::kFixed:
      return static_cast<int>(std::max<std::int64_t>(h.depth - t + 1, 1));
    case HorizonVariant::Kind::kMoving:
      return h.depth;
    case HorizonVariant::Kind::kAlmostConsistent: {
      const std::int64_t period = h.depth - h.min_depth + 1;
      return h.depth - static_cast<int>((t - 1) % period);
    }
  }
  return h.depth;
}

std::uint64_t ExpectiminTreeSize(int d) {
  std::uint64_t total = 0;
  std::uint64_t level = 1;
  for (int k = 0; k < d; ++k, level *= 4) total += level;
  return total;
}

namespace {

using LossTable = std::array<std::array<double, 2>, 2>;  // [y][x]

class Expander {
 public:
  Expander(const LossTable& loss, std::uint64_t* nodes)
      : loss_(loss), nodes_(nodes) {}

  // `counts` is restored before returning.
  std::array<double, 2> Expand(Action s0, TransitionCounts& counts, int d) {
    if (nodes_ != nullptr) ++*nodes_;
    std::array<double, 2> v = {loss_[0][Index(s0)], loss_[1][Index(s0)]};
    if (d <= 1) return v;
    for (Action a : {Action::kDefect, Action::kCooperate}) {
      for (Action s : {Action::kDefect, Action::kCooperate}) {
        const double p = XiProbability(counts, a, s0, s);
        const std::uint32_t before = counts.at(a, s0, s);
        counts.set(a, s0, s, before + 1);
        const auto child = Expand(s, counts, d - 1);
        counts.set(a, s0, s, before);
        v[Index(a)] += p * std::min(child[0], child[1]);
      }
    }
    return v;
  }

 private:
  const LossTable& loss_;
  std::uint64_t* nodes_;
};

LossTable ExpectedLosses(const LossMatrixBelief& belief) {
  LossTable t{};
  for (Action y : {Action::kDefect, Action::kCooperate}) {
    for (Action x : {Action::kDefect, Action::kCooperate}) {
      t[Index(y)][Index(x)] = belief.Expected(y, x);
    }
  }
  return t;
}

}  // namespace

std::array<double, 2> ExpectiminValues(Action s0, const TransitionCounts& counts,
                                       const LossMatrixBelief& belief, int d,
                                       std::uint64_t* nodes) {
  if (d < 1) throw DomainError("expectimin depth must be >= 1");
  const LossTable loss = ExpectedLosses(belief);
  TransitionCounts scratch = counts;
  return Expander(loss, nodes).Expand(s0, scratch, d);
}

AixiAgent::AixiAgent(AixiConfig config)
    : horizon_(config.horizon), belief_(std::move(config.support)) {
  ValidateHorizon(horizon_);
}

AixiAgent AixiAgent::Restore(const HorizonVariant& horizon,
                             const TransitionCounts& counts,
                             const LossMatrixBelief& belief, std::int64_t step,
                             const std::optional<Perspective>& last) {
  if (step < 1) throw DomainError("step index must be >= 1");
  if ((step > 1) != last.has_value()) {
    throw ContractViolation("a previous joint move exists iff step > 1");
  }
  AixiAgent agent(AixiConfig{horizon, belief.support()});
  agent.counts_ = counts;
  agent.belief_ = belief;
  agent.t_ = step;
  agent.last_ = last;
  return agent;
}

std::array<double, 2> AixiAgent::ActionValues(std::uint64_t* nodes) const {
  const int d = HorizonDepth(horizon_, t_);
  const LossTable loss = ExpectedLosses(belief_);
  Expander expander(loss, nodes);
  std::array<double, 2> values = {0.0, 0.0};
  for (Action s0 : {Action::kDefect, Action::kCooperate}) {
    TransitionCounts branch = counts_;
    double p = 0.5;
    if (last_) {
      p = XiProbability(counts_, last_->own, last_->opp, s0);
      branch.Increment(last_->own, last_->opp, s0);
    }
    const auto v = expander.Expand(s0, branch, d);
    values[0] += p * v[0];
    values[1] += p * v[1];
  }
  return values;
}

Action AixiAgent::Act(std::uint64_t* nodes) const {
  const auto v = ActionValues(nodes);
  return v[1] < v[0] ? Action::kCooperate : Action::kDefect;
}

void AixiAgent::Observe(const Perspective& joint, int own_loss) {
  belief_.Observe(joint.own, joint.opp, own_loss);
  if (last_) counts_.Increment(last_->own, last_->opp, joint.opp);
  last_ = joint;
  ++t_;
}

}  // namespace uml_arena
