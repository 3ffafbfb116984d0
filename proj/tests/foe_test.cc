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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "uml_arena/errors.h"

namespace uml_arena {
namespace {

constexpr Action kD = Action::kDefect;
constexpr Action kC = Action::kCooperate;

TEST_CASE("markov experts") {
  Rng rng(1);
  for (Action own : {kD, kC}) {
    for (Action opp : {kD, kC}) {
      const Perspective last{own, opp};
      CHECK(MarkovExpert{15}.Act(last, rng) == kC);
      CHECK(MarkovExpert{0}.Act(last, rng) == kD);
      // Bits 1 and 3 set: copy the opponent's last move.
      CHECK(ExpertAct(MarkovExpert{10}, last, rng) == opp);
      // Bit 0 only: cooperate after mutual defection.
      CHECK(MarkovExpert{1}.Act(last, rng) ==
            ((own == kD && opp == kD) ? kC : kD));
    }
  }
  int coop = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) coop += MarkovExpert{15}.Act(std::nullopt, rng) == kC;
  CHECK(std::abs(coop / double(n) - 0.5) <= 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("follow the perturbed leader") {
  const std::vector<double> w(4, 0.25);
  const std::vector<int> all = {0, 1, 2, 3};
  const std::vector<double> zero(4, 0.0);

  SUBCASE("no perturbation is plain argmin with ties low") {
    CHECK(FplSelectWith(std::vector<double>{3, 1, 2, 1}, w, all, 1.0, zero) == 1);
    CHECK(FplSelectWith(std::vector<double>{0, 0, 0, 0}, w, all, 1.0, zero) == 0);
    const std::vector<int> some = {2, 3};
    CHECK(FplSelectWith(std::vector<double>{0, 0, 5, 4}, w, some, 1.0, zero) == 3);
  }
  SUBCASE("perturbations enter with a minus sign") {
    const std::vector<double> q = {0, 0, 3, 0};
    CHECK(FplSelectWith(std::vector<double>{1, 1, 3.5, 1}, w, all, 1.0, q) == 2);
  }
  SUBCASE("prior sign") {
    const std::vector<double> skew = {0.1, 0.2, 0.6, 0.1};
    const std::vector<double> flat(4, 0.0);
    CHECK(FplSelectWith(flat, skew, all, 1.0, zero, PriorSign::kPenalty) == 2);
    CHECK(FplSelectWith(flat, skew, all, 1.0, zero, PriorSign::kPaper) == 0);
  }
  SUBCASE("huge learning rate follows the leader") {
    Rng rng(2);
    const std::vector<double> cum = {0, 1, 1, 1};
    for (int i = 0; i < 1000; ++i) CHECK(FplSelect(cum, w, all, 1e6, rng) == 0);
  }
  SUBCASE("equal scores give a uniform pick") {
    Rng rng(3);
    const int n = 16;
    const std::vector<double> cum(n, 7.0);
    const std::vector<double> wn(n, 1.0 / n);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::vector<int> hist(n, 0);
    const int draws = 32000;
    for (int i = 0; i < draws; ++i) ++hist[FplSelect(cum, wn, ids, 0.5, rng)];
    double chi2 = 0.0;
    const double expect = double(draws) / n;
    for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
    CHECK(chi2 < 37.7);  // 15 dof, p = 0.001
  }
  SUBCASE("contract") {
    Rng rng(4);
    CHECK_THROWS_AS(FplSelect(zero, w, std::vector<int>{}, 1.0, rng), ContractViolation);
    CHECK_THROWS_AS(FplSelectWith(zero, w, all, 0.0, zero), ContractViolation);
  }
}

// Integer reference for floor(tau^(p/q)): the largest r with r^q <= tau^p.
std::int64_t IntegerRootFloor(std::int64_t tau, int p, int q) {
  using U = unsigned __int128;
  U target = 1;
  for (int i = 0; i < p; ++i) target *= static_cast<U>(tau);
  auto pow_le = [&](std::int64_t r) {
    U v = 1;
    for (int i = 0; i < q; ++i) {
      v *= static_cast<U>(r);
      if (v > target) return false;
    }
    return true;
  };
  std::int64_t r = 1;
  while (pow_le(r + 1)) ++r;
  return r;
}

TEST_CASE("schedules") {
  const FoeSchedules sim{BlockSchedule::kSim024};
  CHECK(sim.Gamma(1) == 1.0);
  CHECK(sim.Eta(1) == 1.0);
  CHECK(sim.Block(1) == 1);
  CHECK(sim.Gamma(16) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sim.Eta(16) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(sim.Block(16) == 1);
  CHECK(sim.Block(10000) == 9);

  const FoeSchedules thm{BlockSchedule::kTheorem};
  const FoeSchedules thm16{BlockSchedule::kTheorem16};
  CHECK(thm.Block(255) == 1);
  CHECK(thm.Block(256) == 2);
  CHECK(thm16.Block(65535) == 1);
  CHECK(thm16.Block(65536) == 2);

  for (std::int64_t tau = 1; tau <= 300000; tau += (tau < 5000 ? 1 : 997)) {
    CAPTURE(tau);
    CHECK(sim.Block(tau) == IntegerRootFloor(tau, 6, 25));
    CHECK(thm.Block(tau) == IntegerRootFloor(tau, 1, 8));
    CHECK(thm16.Block(tau) == IntegerRootFloor(tau, 1, 16));
  }
  CHECK(ParseBlockSchedule("theorem16") == BlockSchedule::kTheorem16);
  CHECK(BlockScheduleId(BlockSchedule::kSim024) == "sim024");
  CHECK_THROWS_AS(ParseBlockSchedule("sqrt"), LookupError);
}

TEST_CASE("estimate increments") {
  EstimateInput in;
  in.variant = FoeVariant::kBasic;
  in.explored = true;
  in.block_loss = 2.0;
  in.gamma = 0.5;
  in.n = 16;
  CHECK(EstimateIncrement(in) == 64.0);
  in.explored = false;
  CHECK(EstimateIncrement(in) == 0.0);
  in.explored = true;
  in.uniform = false;
  in.block_loss = 1.0;
  in.probability = 0.25;
  CHECK(EstimateIncrement(in) == 8.0);
  in.variant = FoeVariant::kFaster;
  in.explored = false;
  CHECK(EstimateIncrement(in) == 4.0);
  in.block_loss = -1.0;
  CHECK_THROWS_AS(EstimateIncrement(in), ContractViolation);
}

TEST_CASE("basic estimate is unbiased") {
  // Two experts, gamma = 0.9, FPL would always pick expert 0.
  Rng rng(5);
  const double gamma = 0.9;
  const double loss[2] = {0.3, 0.8};
  double sum[2] = {0.0, 0.0};
  const int reps = 100000;
  for (int r = 0; r < reps; ++r) {
    EstimateInput in;
    in.explored = Bernoulli(rng, gamma);
    const int pick = in.explored ? (Bernoulli(rng, 0.5) ? 1 : 0) : 0;
    in.block_loss = loss[pick];
    in.gamma = gamma;
    in.n = 2;
    sum[pick] += EstimateIncrement(in);
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(sum[i] / reps - loss[i]) <= 0.01 * loss[i] + 0.005);
  }
}

TEST_CASE("faster estimate is unbiased") {
  // Four experts at master step 16 (gamma = 0.5) with equal estimates, so
  // each is picked with probability 1/4.
  FoeConfig cfg;
  cfg.variant = FoeVariant::kFaster;
  cfg.mc_samples = 1000;
  FoeLearner base(4, cfg);
  Rng rng(6);
  for (int i = 0; i < 15; ++i) {
    MasterDecision d = base.Decide(rng);
    base.Learn(d, 0.0, d.block, rng);
  }
  REQUIRE(base.tau() == 16);
  const double loss[4] = {0.1, 0.5, 0.9, 0.3};
  double sum[4] = {0, 0, 0, 0};
  const int reps = 40000;
  for (int r = 0; r < reps; ++r) {
    FoeLearner l = base;
    const MasterDecision d = l.Decide(rng);
    l.Learn(d, loss[d.expert], 1, rng);
    sum[d.expert] += l.estimated_losses()[d.expert];
  }
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(sum[i] / reps - loss[i]) <= 0.02 * loss[i]);
  }
}

TEST_CASE("selection probability estimates") {
  FoeConfig cfg;
  cfg.variant = FoeVariant::kBasic;
  Rng rng(7);

  SUBCASE("single expert") {
    FoeLearner one(1, cfg);
    CHECK(SelectionProbMc(one, 0, 100, rng) == 1.0);
  }
  SUBCASE("uniform at the first step") {
    FoeLearner four(4, cfg);
    const double p = four.SelectionProbability(2, 10000, rng);
    CHECK(std::abs(p - 0.25) <= 0.015);
    CHECK_THROWS_AS(four.SelectionProbability(4, 10, rng), ContractViolation);
    CHECK_THROWS_AS(four.SelectionProbability(0, 0, rng), DomainError);
  }
  SUBCASE("closed form for two experts") {
    FoeLearner two(2, cfg);
    // Charge expert 1 an estimated loss of 2 at tau = 1.
    two.Learn(MasterDecision{1, true, 1.0, 1.0, 1}, 1.0, 1, rng);
    REQUIRE(two.estimated_losses()[1] == 2.0);
    const double gamma = std::pow(2.0, -0.25);
    const double eta = std::pow(2.0, -0.75);
    // q1 - q0 is standard Laplace, so FPL picks expert 0 with probability
    // 1 - exp(-eta * 2) / 2.
    const double want = gamma / 2 + (1 - gamma) * (1 - 0.5 * std::exp(-eta * 2.0));
    CHECK(std::abs(two.SelectionProbability(0, 200000, rng) - want) <= 0.005);
  }
  SUBCASE("floor at half a sample") {
    FoeLearner two(2, cfg);
    bool seen_floor = false, seen_hit = false;
    for (int i = 0; i < 200; ++i) {
      const double p = two.SelectionProbability(1, 1, rng);
      CHECK((p == 0.5 || p == 1.0));
      seen_floor |= p == 0.5;
      seen_hit |= p == 1.0;
    }
    CHECK(seen_floor);
    CHECK(seen_hit);
  }
}

TEST_CASE("entering times") {
  CHECK(ToString(EnteringTime(1.0)) == "1");
  CHECK(ToString(EnteringTime(0.5)) == "65536");
  CHECK(ToString(EnteringTime(1.0 / 16)) == "18446744073709551616");
  CHECK(EnteringTime(0.97) == 2);
  CHECK(EnteringTime(1e-300) == ~EnteringTimeValue{0});
  CHECK_THROWS_AS(EnteringTime(0.0), DomainError);
  CHECK_THROWS_AS(EnteringTime(1.5), DomainError);

  FoeConfig cfg;
  cfg.prior = {0.97, 0.03};
  FoeLearner l(2, cfg);
  CHECK(l.ActiveSet(1).empty());
  CHECK(l.ActiveSet(2) == std::vector<int>{0});
  Rng rng(8);
  CHECK_THROWS_AS(l.Decide(rng), ContractViolation);
  cfg.entering_times = false;
  CHECK(FoeLearner(2, cfg).ActiveSet(1) == std::vector<int>{0, 1});
  CHECK(FoeLearner(3, FoeConfig{}).ActiveSet(1) == std::vector<int>{0, 1, 2});

  FoeConfig bad;
  bad.prior = {0.7, 0.7};
  CHECK_THROWS_AS(FoeLearner(2, bad), DomainError);
  bad.prior = {0.5};
  CHECK_THROWS_AS(FoeLearner(2, bad), DomainError);
}

TEST_CASE("master clock and block accounting") {
  FoeConfig cfg;
  cfg.variant = FoeVariant::kBasic;
  FoeLearner l(16, cfg);
  Rng rng(9);
  std::int64_t elementary = 0;
  for (int tau = 1; tau <= 3000; ++tau) {
    const MasterDecision d = l.MasterStep(rng, [&](int, std::int64_t b) {
      elementary += b;
      return 0.5 * b;
    });
    CHECK(d.block == l.schedules().Block(tau));
  }
  CHECK(l.tau() == 3001);
  CHECK(l.elementary_offset() == elementary);

  const MasterDecision d{0, false, 1.0, 1.0, 3};
  CHECK_THROWS_AS(l.Learn(d, 1.0, 4, rng), ContractViolation);
  CHECK_THROWS_AS(l.Learn(d, 2.5, 2, rng), ContractViolation);
  CHECK_THROWS_AS(l.Learn(d, -0.1, 2, rng), ContractViolation);
  CHECK_THROWS_AS(l.Learn(d, 0.0, 0, rng), ContractViolation);
}

TEST_CASE("exploration frequency") {
  FoeConfig cfg;
  cfg.variant = FoeVariant::kBasic;
  FoeLearner l(16, cfg);
  Rng rng(10);
  double mean = 0.0, var = 0.0;
  for (int tau = 1; tau <= 20000; ++tau) {
    const double g = l.schedules().Gamma(tau);
    mean += g;
    var += g * (1 - g);
    const MasterDecision d = l.Decide(rng);
    l.Learn(d, 0.0, d.block, rng);
  }
  CHECK(std::abs(l.explored_steps() - mean) <= 3.0 * std::sqrt(var));
}

TEST_CASE("fpl with full information has small regret") {
  const int n = 16, rounds = 5000;
  const double eta = 0.05;
  Rng rng(11);
  std::vector<double> cum(n, 0.0), w(n, 1.0 / n);
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  double learner = 0.0;
  for (int t = 0; t < rounds; ++t) {
    const int pick = FplSelect(cum, w, ids, eta, rng);
    for (int i = 0; i < n; ++i) {
      const double loss = Bernoulli(rng, 0.3 + 0.04 * i) ? 1.0 : 0.0;
      if (i == pick) learner += loss;
      cum[i] += loss;
    }
  }
  const double best = *std::min_element(cum.begin(), cum.end());
  CHECK((learner - best) / rounds <= 0.1);
}

TEST_CASE("agent attributes every step to a block") {
  for (int total : {1, 2, 17, 500, 1234}) {
    CAPTURE(total);
    FoeConfig cfg;
    cfg.variant = FoeVariant::kBasic;
    FoeAgent agent(cfg);
    Rng rng(12);
    std::optional<Perspective> last;
    for (int t = 0; t < total; ++t) {
      const Action a = agent.Act(last, rng);
      CHECK(agent.controlling_expert().has_value());
      agent.Observe(a == kC ? 3 : 1, rng);
      last = Perspective{a, kC};
    }
    CHECK(agent.elementary_steps() == total);
    agent.Finish(rng);
    CHECK(agent.attributed_steps() == total);
    CHECK(agent.learner().elementary_offset() == total);
    CHECK_FALSE(agent.controlling_expert().has_value());
    agent.Finish(rng);  // nothing pending
    CHECK(agent.attributed_steps() == total);
  }
  FoeAgent fresh;
  Rng rng(13);
  CHECK_THROWS_AS(fresh.Observe(2, rng), ContractViolation);
}

TEST_CASE("agent is a function of its seed") {
  auto trace = [](std::uint64_t seed) {
    FoeAgent agent;
    Rng rng(seed);
    std::vector<Action> out;
    std::optional<Perspective> last;
    for (int t = 0; t < 300; ++t) {
      const Action a = agent.Act(last, rng);
      out.push_back(a);
      agent.Observe(a == kD ? 1 : 3, rng);
      last = Perspective{a, Flip(a)};
    }
    return out;
  };
  CHECK(trace(99) == trace(99));
}

}  // namespace
}  // namespace uml_arena
