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

#include "uml_arena/foe.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uml_arena/errors.h"

namespace uml_arena {

Action MarkovExpert::Act(const std::optional<Perspective>& last_joint,
                         Rng& rng) const {
  if (!last_joint) {
    return Bernoulli(rng, 0.5) ? Action::kCooperate : Action::kDefect;
  }
  const int bit = 2 * Index(last_joint->own) + Index(last_joint->opp);
  return ((id >> bit) & 1) ? Action::kCooperate : Action::kDefect;
}

Action ExpertAct(const MarkovExpert& expert,
                 const std::optional<Perspective>& last_joint, Rng& rng) {
  return expert.Act(last_joint, rng);
}

BlockSchedule ParseBlockSchedule(std::string_view id) {
  if (id == "theorem") return BlockSchedule::kTheorem;
  if (id == "theorem16") return BlockSchedule::kTheorem16;
  if (id == "sim024") return BlockSchedule::kSim024;
  throw LookupError("unknown block schedule '" + std::string(id) +
                    "'; valid: theorem, theorem16, sim024");
}

std::string_view BlockScheduleId(BlockSchedule s) {
  switch (s) {
    case BlockSchedule::kTheorem:
      return "theorem";
    case BlockSchedule::kTheorem16:
      return "theorem16";
    case BlockSchedule::kSim024:
      return "sim024";
  }
  return "sim024";
}

double FoeSchedules::Gamma(std::int64_t tau) const {
  return std::pow(static_cast<double>(tau), -0.25);
}

double FoeSchedules::Eta(std::int64_t tau) const {
  return std::pow(static_cast<double>(tau), -0.75);
}

std::int64_t FoeSchedules::Block(std::int64_t tau) const {
  long double exponent = 0.24L;
  switch (block) {
    case BlockSchedule::kTheorem:
      exponent = 1.0L / 8.0L;
      break;
    case BlockSchedule::kTheorem16:
      exponent = 1.0L / 16.0L;
      break;
    case BlockSchedule::kSim024:
      break;
  }
  // The nudge keeps exact integer roots (e.g. 256^(1/8)) from flooring down.
  const long double b =
      std::floor(std::pow(static_cast<long double>(tau), exponent) + 1e-12L);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(b));
}

EnteringTimeValue EnteringTime(double w) {
  if (!(w > 0.0) || w > 1.0) {
    throw DomainError("prior weight must lie in (0, 1], got " +
                      std::to_string(w));
  }
  const long double x = std::pow(static_cast<long double>(w), -16.0L);
  constexpr long double kMax = 0x1.0p128L;
  if (!(x < kMax)) return ~EnteringTimeValue{0};
  long double r = std::nearbyint(x);
  if (std::fabs(x - r) > 1e-15L * x) r = std::ceil(x);
  return static_cast<EnteringTimeValue>(r);
}

std::string ToString(EnteringTimeValue v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

int FplSelectWith(std::span<const double> cum_losses,
                  std::span<const double> weights,
                  std::span<const int> active, double eta,
                  std::span<const double> perturbations, PriorSign sign) {
  if (active.empty()) throw ContractViolation("FPL: empty active set");
  if (!(eta > 0.0)) throw ContractViolation("FPL: learning rate must be > 0");
  int best = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i : active) {
    const double log_w = std::log(weights[i]);
    const double prior_term = sign == PriorSign::kPenalty ? -log_w : log_w;
    const double score = eta * cum_losses[i] + prior_term - perturbations[i];
    if (best < 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

int FplSelect(std::span<const double> cum_losses,
              std::span<const double> weights, std::span<const int> active,
              double eta, Rng& rng, PriorSign sign) {
  if (active.empty()) throw ContractViolation("FPL: empty active set");
  std::vector<double> q(cum_losses.size(), 0.0);
  for (int i : active) q[i] = StandardExponential(rng);
  return FplSelectWith(cum_losses, weights, active, eta, q, sign);
}

double EstimateIncrement(const EstimateInput& in) {
  if (in.block_loss < 0.0) {
    throw ContractViolation("block loss must be nonnegative");
  }
  if (in.variant == FoeVariant::kBasic) {
    if (!in.explored) return 0.0;
    if (in.uniform) return in.block_loss * in.n / in.gamma;
    return in.block_loss / (in.gamma * in.probability);
  }
  if (!(in.probability > 0.0)) {
    throw ArenaError("selection probability estimate is zero");
  }
  return in.block_loss / in.probability;
}

FoeLearner::FoeLearner(int num_experts, const FoeConfig& config)
    : config_(config), schedules_{config.block_schedule} {
  if (num_experts < 1) throw DomainError("need at least one expert");
  if (config_.mc_samples < 1) throw DomainError("mc_samples must be >= 1");
  if (Uniform()) {
    weights_.assign(num_experts, 1.0 / num_experts);
  } else {
    if (static_cast<int>(config_.prior.size()) != num_experts) {
      throw DomainError("prior needs " + std::to_string(num_experts) +
                        " weights");
    }
    double sum = 0.0;
    for (double w : config_.prior) {
      if (!(w > 0.0)) throw DomainError("prior weights must be positive");
      sum += w;
    }
    if (sum > 1.0 + 1e-12) throw DomainError("prior weights sum above 1");
    weights_ = config_.prior;
  }
  const bool use_entering = config_.entering_times.value_or(!Uniform());
  entering_.assign(num_experts, 1);
  if (use_entering) {
    for (int i = 0; i < num_experts; ++i) entering_[i] = EnteringTime(weights_[i]);
  }
  cum_loss_.assign(num_experts, 0.0);
}

std::vector<int> FoeLearner::ActiveSet(std::int64_t tau) const {
  std::vector<int> active;
  for (int i = 0; i < num_experts(); ++i) {
    if (static_cast<EnteringTimeValue>(tau) >= entering_[i]) active.push_back(i);
  }
  return active;
}

double FoeLearner::RenormalizedWeight(int expert,
                                      std::span<const int> active) const {
  double total = 0.0;
  for (int i : active) total += weights_[i];
  return weights_[expert] / total;
}

int FoeLearner::SampleFromPrior(std::span<const int> active, Rng& rng) const {
  if (Uniform()) {
    const auto k = static_cast<std::size_t>(Uniform01(rng) * active.size());
    return active[std::min(k, active.size() - 1)];
  }
  double total = 0.0;
  for (int i : active) total += weights_[i];
  double u = Uniform01(rng) * total;
  for (int i : active) {
    u -= weights_[i];
    if (u < 0.0) return i;
  }
  return active.back();
}

MasterDecision FoeLearner::Decide(Rng& rng) const {
  const auto active = ActiveSet(tau_);
  if (active.empty()) {
    throw ContractViolation("no expert has entered at master step " +
                            std::to_string(tau_));
  }
  MasterDecision d;
  d.gamma = schedules_.Gamma(tau_);
  d.eta = schedules_.Eta(tau_);
  d.block = schedules_.Block(tau_);
  d.explored = Bernoulli(rng, d.gamma);
  d.expert = d.explored ? SampleFromPrior(active, rng)
                        : FplSelect(cum_loss_, weights_, active, d.eta, rng,
                                    config_.prior_sign);
  return d;
}

double FoeLearner::SelectionProbability(int expert, int samples,
                                        Rng& rng) const {
  if (samples < 1) throw DomainError("samples must be >= 1");
  const auto active = ActiveSet(tau_);
  if (!std::binary_search(active.begin(), active.end(), expert)) {
    throw ContractViolation("expert " + std::to_string(expert) +
                            " is not active");
  }
  const double gamma = schedules_.Gamma(tau_);
  const double eta = schedules_.Eta(tau_);
  // The unperturbed part of the FPL score is fixed within a master step.
  std::vector<double> base;
  base.reserve(active.size());
  for (int i : active) {
    const double log_w = std::log(weights_[i]);
    base.push_back(eta * cum_loss_[i] +
                   (config_.prior_sign == PriorSign::kPenalty ? -log_w : log_w));
  }
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    int pick;
    if (Bernoulli(rng, gamma)) {
      pick = SampleFromPrior(active, rng);
    } else {
      std::size_t best = 0;
      double best_score = base[0] - StandardExponential(rng);
      for (std::size_t k = 1; k < active.size(); ++k) {
        const double score = base[k] - StandardExponential(rng);
        if (score < best_score) {
          best = k;
          best_score = score;
        }
      }
      pick = active[best];
    }
    hits += pick == expert;
  }
  const double floor = 1.0 / (2.0 * samples);
  return std::max(static_cast<double>(hits) / samples, floor);
}

void FoeLearner::Learn(const MasterDecision& decision, double block_loss,
                       std::int64_t steps, Rng& rng) {
  if (steps < 1 || steps > decision.block) {
    throw ContractViolation("block of " + std::to_string(steps) +
                            " steps does not fit block length " +
                            std::to_string(decision.block));
  }
  if (!(block_loss >= 0.0) || block_loss > static_cast<double>(steps)) {
    throw ContractViolation("block loss " + std::to_string(block_loss) +
                            " outside [0, " + std::to_string(steps) + "]");
  }
  const auto active = ActiveSet(tau_);
  EstimateInput in;
  in.variant = config_.variant;
  in.explored = decision.explored;
  in.block_loss = block_loss;
  in.gamma = decision.gamma;
  in.uniform = Uniform();
  in.n = static_cast<int>(active.size());
  if (config_.variant == FoeVariant::kFaster) {
    in.probability =
        SelectionProbability(decision.expert, config_.mc_samples, rng);
  } else {
    in.probability = RenormalizedWeight(decision.expert, active);
  }
  cum_loss_[decision.expert] += EstimateIncrement(in);
  explored_steps_ += decision.explored;
  t0_ += steps;
  ++tau_;
}

MasterDecision FoeLearner::MasterStep(Rng& rng, const PlayBlock& play_block) {
  const MasterDecision d = Decide(rng);
  const double loss = play_block(d.expert, d.block);
  Learn(d, loss, d.block, rng);
  return d;
}

double SelectionProbMc(const FoeLearner& learner, int expert, int samples,
                       Rng& rng) {
  return learner.SelectionProbability(expert, samples, rng);
}

FoeAgent::FoeAgent(const FoeConfig& config)
    : learner_(kNumMarkovExperts, config) {}

std::optional<int> FoeAgent::controlling_expert() const {
  if (!block_) return std::nullopt;
  return block_->expert;
}

Action FoeAgent::Act(const std::optional<Perspective>& last_joint, Rng& rng) {
  if (!block_) {
    block_ = learner_.Decide(rng);
    played_in_block_ = 0;
    block_loss_ = 0.0;
  }
  return MarkovExpert{block_->expert}.Act(last_joint, rng);
}

void FoeAgent::Observe(int own_reward, Rng& rng) {
  if (!block_) throw ContractViolation("FoE observed a step it did not play");
  block_loss_ += LossOf(own_reward) / 4.0;
  ++played_in_block_;
  ++elementary_;
  if (played_in_block_ == block_->block) Finish(rng);
}

void FoeAgent::Finish(Rng& rng) {
  if (!block_ || played_in_block_ == 0) return;
  learner_.Learn(*block_, block_loss_, played_in_block_, rng);
  attributed_ += played_in_block_;
  block_.reset();
  played_in_block_ = 0;
  block_loss_ = 0.0;
}

}  // namespace uml_arena
