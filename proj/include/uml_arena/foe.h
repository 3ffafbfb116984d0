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

#ifndef UML_ARENA_FOE_H_
#define UML_ARENA_FOE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uml_arena/game.h"
#include "uml_arena/rng.h"

namespace uml_arena {

inline constexpr int kNumMarkovExperts = 16;

// Deterministic four-state Markov expert. Bit (2 * own + opp) of `id` is the
// action played after the joint move (own, opp) of the previous round; the
// first round is uniformly random.
struct MarkovExpert {
  int id = 0;

  Action Act(const std::optional<Perspective>& last_joint, Rng& rng) const;
};

Action ExpertAct(const MarkovExpert& expert,
                 const std::optional<Perspective>& last_joint, Rng& rng);

// Block length schedules B_tau, each clamped to >= 1.
enum class BlockSchedule {
  kTheorem,    // floor(tau^(1/8)), uniform prior
  kTheorem16,  // floor(tau^(1/16)), arbitrary prior
  kSim024,     // floor(tau^0.24), used for the experiments
};

BlockSchedule ParseBlockSchedule(std::string_view id);
std::string_view BlockScheduleId(BlockSchedule s);

// Exploration rate gamma = tau^(-1/4), learning rate eta = tau^(-3/4) and the
// block length, all on the master time scale.
struct FoeSchedules {
  BlockSchedule block = BlockSchedule::kSim024;

  double Gamma(std::int64_t tau) const;
  double Eta(std::int64_t tau) const;
  std::int64_t Block(std::int64_t tau) const;
};

// Entering time ceil(w^-16). Values beyond 2^128 - 1 saturate.
using EnteringTimeValue = unsigned __int128;
EnteringTimeValue EnteringTime(double w);
std::string ToString(EnteringTimeValue v);

enum class PriorSign {
  kPenalty,  // score uses -ln w: higher prior weight is preferred
  kPaper,    // score uses +ln w: lower prior weight is preferred
};

// Argmin over `active` of eta * cum_losses[i] + prior_term(w_i) - q[i], with
// the perturbations q supplied by the caller (q is indexed like cum_losses).
// Ties go to the lowest index. Throws ContractViolation for an empty active
// set or eta <= 0.
int FplSelectWith(std::span<const double> cum_losses,
                  std::span<const double> weights,
                  std::span<const int> active, double eta,
                  std::span<const double> perturbations,
                  PriorSign sign = PriorSign::kPenalty);

// Same, drawing q_i ~ Exp(1) independently for each active expert.
int FplSelect(std::span<const double> cum_losses,
              std::span<const double> weights, std::span<const int> active,
              double eta, Rng& rng, PriorSign sign = PriorSign::kPenalty);

enum class FoeVariant { kBasic, kFaster };

struct FoeConfig {
  FoeVariant variant = FoeVariant::kFaster;
  int mc_samples = 1000;
  BlockSchedule block_schedule = BlockSchedule::kSim024;
  // Empty means uniform over the experts.
  std::vector<double> prior;
  PriorSign prior_sign = PriorSign::kPenalty;
  // Restrict each master step to experts whose entering time has passed.
  // Defaults to on for an explicit prior, off for the uniform one.
  std::optional<bool> entering_times;

  friend bool operator==(const FoeConfig&, const FoeConfig&) = default;
};

// The decision taken at the start of one master step.
struct MasterDecision {
  int expert = 0;
  bool explored = false;
  double gamma = 1.0;
  double eta = 1.0;
  std::int64_t block = 1;
};

// Per-expert importance-weighted increment of the estimated losses for one
// master step.
//   Basic: only when explored; block_loss * n / gamma under a uniform prior,
//     block_loss / (gamma * w~) with renormalized active weights otherwise.
//   Faster: always; block_loss / p_hat.
struct EstimateInput {
  FoeVariant variant = FoeVariant::kBasic;
  bool explored = false;
  double block_loss = 0.0;
  double gamma = 1.0;
  // Basic: renormalized prior weight of the selected expert (1/n when
  // uniform). Faster: estimated selection probability p_hat.
  double probability = 1.0;
  bool uniform = true;
  int n = 1;
};
double EstimateIncrement(const EstimateInput& in);

// Follow or Explore over a finite class of experts. This class is the master
// algorithm only: it picks an expert per master step and learns from the
// block loss it is handed back (in [0, block length]).
class FoeLearner {
 public:
  FoeLearner(int num_experts, const FoeConfig& config);

  std::int64_t tau() const { return tau_; }
  std::int64_t elementary_offset() const { return t0_; }  // t0(tau)
  const std::vector<double>& estimated_losses() const { return cum_loss_; }
  const std::vector<double>& weights() const { return weights_; }
  const FoeSchedules& schedules() const { return schedules_; }
  const FoeConfig& config() const { return config_; }
  int num_experts() const { return static_cast<int>(weights_.size()); }
  std::int64_t explored_steps() const { return explored_steps_; }

  // Experts allowed to play at master step tau (ascending).
  std::vector<int> ActiveSet(std::int64_t tau) const;

  // With probability gamma_tau samples from the renormalized active prior,
  // otherwise runs FPL.
  MasterDecision Decide(Rng& rng) const;

  // Monte-Carlo estimate of the probability that `expert` is picked by
  // Decide at the current master step, floored at 1 / (2 * samples).
  double SelectionProbability(int expert, int samples, Rng& rng) const;

  // Learns from the loss of a block of `steps` elementary steps (steps may be
  // shorter than the decision's block when the match ends) and advances the
  // master clock. Throws ContractViolation unless 0 <= loss <= steps.
  void Learn(const MasterDecision& decision, double block_loss,
             std::int64_t steps, Rng& rng);

  // One full master step; `play_block(expert, B)` must return the loss of
  // that expert over the B elementary steps.
  using PlayBlock = std::function<double(int expert, std::int64_t block)>;
  MasterDecision MasterStep(Rng& rng, const PlayBlock& play_block);

 private:
  bool Uniform() const { return config_.prior.empty(); }
  double RenormalizedWeight(int expert, std::span<const int> active) const;
  int SampleFromPrior(std::span<const int> active, Rng& rng) const;

  FoeConfig config_;
  FoeSchedules schedules_;
  std::vector<double> weights_;
  std::vector<EnteringTimeValue> entering_;
  std::vector<double> cum_loss_;
  std::int64_t tau_ = 1;
  std::int64_t t0_ = 0;
  std::int64_t explored_steps_ = 0;
};

// Free-function forms of the learner's probability estimate.
double SelectionProbMc(const FoeLearner& learner, int expert, int samples,
                       Rng& rng);

// The FoE player over the 16 Markov experts. Elementary losses are
// (4 - reward) / 4.
class FoeAgent {
 public:
  explicit FoeAgent(const FoeConfig& config = {});

  const FoeLearner& learner() const { return learner_; }
  std::optional<int> controlling_expert() const;
  std::int64_t elementary_steps() const { return elementary_; }
  std::int64_t attributed_steps() const { return attributed_; }

  // Starts a master step when no block is in progress, then lets the
  // controlling expert act on the live history.
  Action Act(const std::optional<Perspective>& last_joint, Rng& rng);

  // Own reward of the step just played.
  void Observe(int own_reward, Rng& rng);

  // Learns from a block cut short by the end of the match.
  void Finish(Rng& rng);

 private:
  FoeLearner learner_;
  std::optional<MasterDecision> block_;
  std::int64_t played_in_block_ = 0;
  double block_loss_ = 0.0;
  std::int64_t elementary_ = 0;
  std::int64_t attributed_ = 0;
};

}  // namespace uml_arena

#endif  // UML_ARENA_FOE_H_
