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

#include "uml_arena/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <optional>

#include "oracles.h"
#include "uml_arena/arena.h"
#include "uml_arena/bayes_model.h"
#include "uml_arena/errors.h"
#include "uml_arena/foe.h"

namespace uml_arena {
namespace {

constexpr std::uint64_t kSeed = 0;

std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

PlayerSpec Opponent(std::string_view id, const MatrixGame& g) {
  return ScriptedSpec{ParseOpponent(id, g, Seat::kCol)};
}

TimeSeries AixiSeries(const std::string& game, const HorizonVariant& h,
                      std::string_view opponent, std::int64_t steps = 100) {
  const MatrixGame g = BuiltinGame(game);
  return RunMatch(MatchConfig{g, AixiConfig{h, {}}, Opponent(opponent, g),
                              steps, 1, kSeed})[0];
}

std::vector<TimeSeries> FoeRuns(const std::string& game, FoeVariant v,
                                std::string_view opponent) {
  const MatrixGame g = BuiltinGame(game);
  FoeConfig foe;
  foe.variant = v;
  return RunMatch(MatchConfig{g, foe, Opponent(opponent, g), 20000, 10, kSeed});
}

double MeanOverRuns(const std::vector<TimeSeries>& runs,
                    const std::function<double(const TimeSeries&)>& f) {
  double sum = 0.0;
  for (const auto& s : runs) sum += f(s);
  return sum / static_cast<double>(runs.size());
}

double FinalCooperation(const std::vector<TimeSeries>& runs) {
  return MeanOverRuns(runs, [](const TimeSeries& s) {
    return CooperationRateWindow(s, Seat::kRow, s.size() - 1999, s.size());
  });
}

double FinalReward(const std::vector<TimeSeries>& runs) {
  return MeanOverRuns(
      runs, [](const TimeSeries& s) { return AverageReward(s, Seat::kRow, s.size()); });
}

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Context {
  std::optional<double> faster_final_coop;  // criterion 8, reused by 13
};

TransitionCounts RandomCounts(Rng& rng, std::uint32_t max) {
  TransitionCounts c;
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      for (int n = 0; n < 2; ++n) {
        c.set(ActionFromInt(y), ActionFromInt(x), ActionFromInt(n),
              static_cast<std::uint32_t>(rng() % (max + 1)));
      }
    }
  }
  return c;
}

Outcome ExpectiminOracle() {
  Rng rng(DeriveSeed(kSeed, 1));
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const TransitionCounts counts = RandomCounts(rng, 30);
    LossMatrixBelief belief;
    const auto& values = belief.support().values();
    for (int y = 0; y < 2; ++y) {
      for (int x = 0; x < 2; ++x) {
        if (Bernoulli(rng, 0.6)) {
          belief.Observe(ActionFromInt(y), ActionFromInt(x),
                         values[rng() % values.size()]);
        }
      }
    }
    const int s0 = static_cast<int>(rng() % 2);
    const int d = 1 + static_cast<int>(rng() % 4);
    const auto got = ExpectiminValues(ActionFromInt(s0), counts, belief, d);
    const auto want = oracle::Expectimin(s0, counts, oracle::PlugIn(belief), d);
    worst = std::max({worst, std::abs(got[0] - want[0]), std::abs(got[1] - want[1])});
  }
  return {worst <= 1e-12, Fmt("max |diff| over 200 instances %.3g <= 1e-12", worst)};
}

Outcome LaplaceProperties() {
  Rng rng(DeriveSeed(kSeed, 2));
  bool normalized = true;
  for (int i = 0; i < 2000; ++i) {
    const TransitionCounts c = RandomCounts(rng, 1000000);
    for (Action y : {Action::kDefect, Action::kCooperate}) {
      for (Action x : {Action::kDefect, Action::kCooperate}) {
        normalized &= XiProbability(c, y, x, Action::kDefect) +
                          XiProbability(c, y, x, Action::kCooperate) ==
                      1.0;
      }
    }
  }
  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    TransitionCounts c;
    for (int n = 0; n < 10000; ++n) {
      c = UpdateCounts(c, Action::kCooperate, Action::kDefect,
                       Bernoulli(rng, p) ? Action::kCooperate : Action::kDefect);
    }
    worst = std::max(worst, std::abs(XiPredict(c, Action::kCooperate, Action::kDefect) - p));
  }
  return {normalized && worst <= 0.05,
          Fmt("normalization %s; max |xi - p| after 1e4 draws %.4f <= 0.05",
              normalized ? "exact" : "BROKEN", worst)};
}

Outcome AixiVersusTitForTat() {
  const TimeSeries s = AixiSeries("prisoners_dilemma", HorizonVariant::AlmostConsistent(8, 2), "tft1");
  const double coop = CooperationRate(s, Seat::kRow, 100);
  const double reward = AverageReward(s, Seat::kRow, 100);
  return {coop >= 0.8 && reward >= 2.5,
          Fmt("cooperation %.2f >= 0.8, average reward %.3f >= 2.5", coop, reward)};
}

Outcome AixiVersusThreeTitForTat() {
  double worst = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const TimeSeries s = AixiSeries("prisoners_dilemma", HorizonVariant::AlmostConsistent(d, 2), "tft3");
    worst = std::max(worst, CooperationRate(s, Seat::kRow, 100));
  }
  return {worst <= 0.2, Fmt("max cooperation over d = 2..8: %.2f <= 0.2", worst)};
}

Outcome StagHuntDepth() {
  const TimeSeries d8 = AixiSeries("stag_hunt", HorizonVariant::AlmostConsistent(8, 2), "tft2");
  const auto start = std::chrono::steady_clock::now();
  const TimeSeries d9 = AixiSeries("stag_hunt", HorizonVariant::AlmostConsistent(9, 2), "tft2");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double c8 = CooperationRate(d8, Seat::kRow, 100);
  const double c9 = CooperationRate(d9, Seat::kRow, 100);
  return {c8 <= 0.2 && c9 >= 0.8 && secs < 600.0,
          Fmt("d=8 cooperation %.2f <= 0.2; d=9 cooperation %.2f >= 0.8; d=9 run %.2f s < 600 s", c8, c9, secs)};
}

Outcome ConsistentBeatsMoving() {
  std::string detail;
  bool ok = true;
  const std::pair<const char*, const char*> cases[] = {
      {"prisoners_dilemma", "tft1"}, {"stag_hunt", "tft2"}};
  for (const auto& [game, opp] : cases) {
    const double consistent = AverageReward(
        AixiSeries(game, HorizonVariant::AlmostConsistent(8, 2), opp), Seat::kRow, 100);
    const double moving =
        AverageReward(AixiSeries(game, HorizonVariant::Moving(8), opp), Seat::kRow, 100);
    ok &= consistent >= moving;
    if (!detail.empty()) detail += "; ";
    detail += Fmt("%s vs %s: consistent %.3f >= moving %.3f", game, opp, consistent, moving);
  }
  return {ok, detail};
}

Outcome SymmetryLock() {
  const MatrixGame g = BuiltinGame("prisoners_dilemma");
  const AixiConfig aixi;
  const TimeSeries s = RunMatch(MatchConfig{g, aixi, aixi, 100, 1, kSeed})[0];
  std::int64_t first_split = 0;
  for (std::int64_t t = 0; t < s.size() && first_split == 0; ++t) {
    if (s.joints[t].row != s.joints[t].col) first_split = t + 1;
  }
  if (first_split != 0) {
    return {false, Fmt("actions differ first at step %lld", static_cast<long long>(first_split))};
  }
  return {true, Fmt("identical actions at all 100 steps (cooperation %.2f)",
                    CooperationRate(s, Seat::kRow, 100))};
}

Outcome FoeVersusThreeTitForTat(Context& ctx) {
  const double coop = FinalCooperation(FoeRuns("prisoners_dilemma", FoeVariant::kFaster, "tft3"));
  ctx.faster_final_coop = coop;
  return {coop >= 0.6, Fmt("mean cooperation over the final 2000 steps %.3f >= 0.6", coop)};
}

Outcome FoeVersusRandom() {
  const double reward = FinalReward(FoeRuns("prisoners_dilemma", FoeVariant::kFaster, "random"));
  return {std::abs(reward - 2.5) <= 0.3,
          Fmt("mean average reward %.3f within 0.3 of 2.5", reward)};
}

// Mean per-expert increment of one learner step, replicated from a fixed
// learner state; losses[i] is what expert i would incur.
std::vector<double> MeanIncrements(const FoeLearner& base,
                                   const std::vector<double>& losses, int reps,
                                   Rng& rng) {
  std::vector<double> sum(losses.size(), 0.0);
  for (int r = 0; r < reps; ++r) {
    FoeLearner l = base;
    const MasterDecision d = l.Decide(rng);
    l.Learn(d, losses[d.expert], 1, rng);
    sum[d.expert] += l.estimated_losses()[d.expert] - base.estimated_losses()[d.expert];
  }
  for (double& s : sum) s /= reps;
  return sum;
}

double WorstRelative(const std::vector<double>& got, const std::vector<double>& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, std::abs(got[i] - want[i]) / want[i]);
  }
  return worst;
}

Outcome EstimatorUnbiasedness() {
  Rng rng(DeriveSeed(kSeed, 10));
  // Basic: two experts at master step 2 (gamma = 2^-1/4 ~ 0.84).
  FoeConfig basic;
  basic.variant = FoeVariant::kBasic;
  FoeLearner b(2, basic);
  b.Learn(b.Decide(rng), 0.0, 1, rng);
  const std::vector<double> loss_b = {0.3, 0.8};
  const double err_b = WorstRelative(MeanIncrements(b, loss_b, 100000, rng), loss_b);

  // Faster: four experts at master step 16 (gamma = 0.5).
  FoeConfig faster;
  faster.variant = FoeVariant::kFaster;
  faster.mc_samples = 1000;
  FoeLearner f(4, faster);
  while (f.tau() < 16) {
    const MasterDecision d = f.Decide(rng);
    f.Learn(d, 0.0, d.block, rng);
  }
  const std::vector<double> loss_f = {0.1, 0.5, 0.9, 0.3};
  const double err_f = WorstRelative(MeanIncrements(f, loss_f, 100000, rng), loss_f);
  return {err_b <= 0.01 && err_f <= 0.02,
          Fmt("basic max relative error %.4f <= 0.01 (1e5 reps); faster %.4f <= 0.02 "
              "(1e5 reps, 1000 MC samples)",
              err_b, err_f)};
}

Outcome FplRegret() {
  const int n = kNumMarkovExperts;
  const int steps = 10000;
  std::vector<double> loss(n);
  for (int i = 0; i < n; ++i) loss[i] = 0.2 + 0.05 * ((7 * i) % n);
  const double best = *std::min_element(loss.begin(), loss.end());
  const FoeSchedules schedules;
  std::vector<double> cum(n, 0.0), weights(n, 1.0 / n);
  std::vector<int> experts(n);
  std::iota(experts.begin(), experts.end(), 0);
  Rng rng(DeriveSeed(kSeed, 11));
  double incurred = 0.0;
  for (int tau = 1; tau <= steps; ++tau) {
    incurred += loss[FplSelect(cum, weights, experts, schedules.Eta(tau), rng)];
    for (int i = 0; i < n; ++i) cum[i] += loss[i];
  }
  const double regret = incurred / steps - best;
  return {regret <= 0.1, Fmt("average regret %.4f <= 0.1 (eta = tau^-3/4)", regret)};
}

Outcome ExploitAlternator() {
  const double aixi = AverageReward(
      AixiSeries("matching_pennies", HorizonVariant::AlmostConsistent(8, 2), "alt0"),
      Seat::kRow, 100);
  const double foe = FinalReward(FoeRuns("matching_pennies", FoeVariant::kFaster, "alt0"));
  return {aixi >= 3.5 && foe >= 3.0,
          Fmt("AIXI average reward %.3f >= 3.5; FoE mean average reward %.3f >= 3.0", aixi, foe)};
}

Outcome VariantOrdering(Context& ctx) {
  if (!ctx.faster_final_coop) {
    ctx.faster_final_coop =
        FinalCooperation(FoeRuns("prisoners_dilemma", FoeVariant::kFaster, "tft3"));
  }
  const double faster = *ctx.faster_final_coop;
  const double basic = FinalCooperation(FoeRuns("prisoners_dilemma", FoeVariant::kBasic, "tft3"));
  const bool ordered = faster >= 0.6 && basic < 0.6;
  return {ordered, Fmt("final cooperation: faster %.3f, basic %.3f; ordering %s", faster, basic,
                       ordered ? "observed" : "not observed")};
}

struct Criterion {
  int id;
  const char* title;
  bool gating;
  std::function<Outcome(Context&)> run;
  double time_limit;  // seconds, 0 for none
};

std::vector<Criterion> Criteria() {
  auto plain = [](Outcome (*f)()) { return [f](Context&) { return f(); }; };
  return {
      {1, "expectimin matches brute force", true, plain(ExpectiminOracle), 5},
      {2, "Laplace predictor", true, plain(LaplaceProperties), 5},
      {3, "AIXI learns to cooperate with tit for tat", true, plain(AixiVersusTitForTat), 120},
      {4, "AIXI defects against 3-tit for tat", true, plain(AixiVersusThreeTitForTat), 0},
      {5, "stag hunt depth sensitivity", true, plain(StagHuntDepth), 0},
      {6, "consistent horizon >= moving horizon", true, plain(ConsistentBeatsMoving), 0},
      {7, "AIXI self-play symmetry lock", true, plain(SymmetryLock), 0},
      {8, "FoE learns 3-tit for tat", true, FoeVersusThreeTitForTat, 600},
      {9, "FoE regret against a random opponent", true, plain(FoeVersusRandom), 0},
      {10, "importance-weighted estimates are unbiased", true, plain(EstimatorUnbiasedness), 60},
      {11, "FPL full-information regret", true, plain(FplRegret), 10},
      {12, "exploiting an alternating adversary", true, plain(ExploitAlternator), 0},
      {13, "faster vs basic FoE (informational)", false, VariantOrdering, 0},
  };
}

}  // namespace

std::vector<CriterionResult> RunAcceptance(const CriterionSink& sink,
                                           std::span<const int> only) {
  std::vector<CriterionResult> results;
  Context ctx;
  for (const Criterion& c : Criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.gating = c.gating;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.run(ctx);
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && r.seconds >= c.time_limit) {
      r.passed = false;
      r.detail += Fmt("; exceeded the %.0f s budget", c.time_limit);
    }
    if (sink) sink(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string FormatCriterion(const CriterionResult& r) {
  const char* tag = !r.gating ? "INFO" : r.passed ? "PASS" : "FAIL";
  return Fmt("%s %2d  %s: %s (%.1f s)", tag, r.id, r.title.c_str(), r.detail.c_str(),
             r.seconds);
}

bool AllGatingPassed(std::span<const CriterionResult> results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return !r.gating || r.passed; });
}

}  // namespace uml_arena
