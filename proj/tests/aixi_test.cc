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

#include <cmath>

#include "doctest.h"
#include "oracles.h"
#include "uml_arena/errors.h"
#include "uml_arena/rng.h"

namespace uml_arena {
namespace {

constexpr Action kD = Action::kDefect;
constexpr Action kC = Action::kCooperate;

LossMatrixBelief KnownPdLosses() {
  // loss = 4 - reward: rows (3, 0), (4, 1).
  LossMatrixBelief b;
  const MatrixGame pd = BuiltinGame("prisoners_dilemma");
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      b.Observe(ActionFromInt(y), ActionFromInt(x), LossOf(pd.r1()[y][x]));
    }
  }
  return b;
}

// Opponent that has always answered our cooperation with cooperation and
// our defection with defection.
TransitionCounts TitForTatCounts() {
  TransitionCounts c;
  for (Action x : {kD, kC}) {
    c.set(kC, x, kC, 20);
    c.set(kD, x, kD, 20);
  }
  return c;
}

TEST_CASE("depth one is the immediate loss") {
  const auto known = ExpectiminValues(kD, TransitionCounts{}, KnownPdLosses(), 1);
  CHECK(known[0] == 3.0);
  CHECK(known[1] == 4.0);
  for (Action s0 : {kD, kC}) {
    const auto unknown = ExpectiminValues(s0, TransitionCounts{}, LossMatrixBelief{}, 1);
    CHECK(unknown[0] == -1.0);
    CHECK(unknown[1] == -1.0);
  }
}

TEST_CASE("depth three fixture on a tit-for-tat history") {
  // Frozen from the brute-force enumerator in oracles.h.
  const auto v = ExpectiminValues(kC, TitForTatCounts(), KnownPdLosses(), 3);
  CHECK(std::abs(v[0] - 4.0000000000000009) <= 1e-12);
  CHECK(std::abs(v[1] - 2.2670679123248294) <= 1e-12);
}

TEST_CASE("depth two by hand") {
  // s0 = 1. Cooperating opponents keep cooperating after (1, 1) with
  // probability 21/22 and defect after (0, 1) with probability 21/22.
  const auto v = ExpectiminValues(kC, TitForTatCounts(), KnownPdLosses(), 2);
  CHECK(v[0] == doctest::Approx(21.0 / 22.0 * 3.0).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(1.0 + 1.0 / 22.0 * 3.0).epsilon(1e-12));
}

LossMatrixBelief RandomBelief(Rng& rng) {
  LossMatrixBelief b;
  const auto& values = b.support().values();
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      if (Bernoulli(rng, 0.6)) {
        b.Observe(ActionFromInt(y), ActionFromInt(x), values[rng() % values.size()]);
      }
    }
  }
  return b;
}

TransitionCounts RandomCounts(Rng& rng) {
  TransitionCounts c;
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      for (int n = 0; n < 2; ++n) {
        c.set(ActionFromInt(y), ActionFromInt(x), ActionFromInt(n),
              static_cast<std::uint32_t>(rng() % 25));
      }
    }
  }
  return c;
}

TEST_CASE("recursion matches the brute-force enumerator") {
  Rng rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    const TransitionCounts counts = RandomCounts(rng);
    const LossMatrixBelief belief = RandomBelief(rng);
    const int s0 = static_cast<int>(rng() % 2);
    const int d = 1 + static_cast<int>(rng() % 4);
    const auto got = ExpectiminValues(ActionFromInt(s0), counts, belief, d);
    const auto want = oracle::Expectimin(s0, counts, oracle::PlugIn(belief), d);
    CHECK(std::abs(got[0] - want[0]) <= 1e-12);
    CHECK(std::abs(got[1] - want[1]) <= 1e-12);
  }
}

TEST_CASE("root values match the brute-force enumerator") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const TransitionCounts counts = RandomCounts(rng);
    const LossMatrixBelief belief = RandomBelief(rng);
    const Perspective last{ActionFromInt(static_cast<int>(rng() % 2)),
                           ActionFromInt(static_cast<int>(rng() % 2))};
    const int d = 2 + static_cast<int>(rng() % 4);
    const auto agent = AixiAgent::Restore(HorizonVariant::Moving(d), counts,
                                          belief, 2, last);
    const auto want = oracle::RootValues(
        counts, oracle::PlugIn(belief),
        std::array<int, 2>{Index(last.own), Index(last.opp)}, d);
    const auto got = agent.ActionValues();
    CHECK(std::abs(got[0] - want[0]) <= 1e-12);
    CHECK(std::abs(got[1] - want[1]) <= 1e-12);
  }
}

TEST_CASE("symmetric start ties and goes to action 0") {
  const AixiAgent agent;
  const auto v = agent.ActionValues();
  CHECK(v[0] == v[1]);
  CHECK(AixiAct(agent) == kD);
}

TEST_CASE("defection dominates without evidence of reciprocity") {
  for (int d = 1; d <= 8; ++d) {
    CAPTURE(d);
    const auto agent = AixiAgent::Restore(HorizonVariant::Moving(d),
                                          TransitionCounts{}, KnownPdLosses(),
                                          2, Perspective{kD, kD});
    CHECK(agent.Act() == kD);
    const auto want = oracle::RootValues(TransitionCounts{},
                                         oracle::PlugIn(KnownPdLosses()),
                                         std::array<int, 2>{0, 0}, d);
    CHECK(want[0] < want[1]);
  }
}

TEST_CASE("cooperation pays against a learned tit for tat") {
  const auto agent = AixiAgent::Restore(HorizonVariant::Moving(8),
                                        TitForTatCounts(), KnownPdLosses(), 2,
                                        Perspective{kC, kC});
  CHECK(agent.Act() == kC);
  const auto want = oracle::RootValues(TitForTatCounts(),
                                       oracle::PlugIn(KnownPdLosses()),
                                       std::array<int, 2>{1, 1}, 8);
  CHECK(want[1] < want[0]);
}

TEST_CASE("horizon schedules") {
  const auto consistent = HorizonVariant::AlmostConsistent();
  CHECK(HorizonDepth(consistent, 1) == 8);
  CHECK(HorizonDepth(consistent, 2) == 7);
  CHECK(HorizonDepth(consistent, 7) == 2);
  CHECK(HorizonDepth(consistent, 8) == 8);
  CHECK(HorizonDepth(consistent, 15) == 8);
  CHECK(HorizonDepth(HorizonVariant::AlmostConsistent(9, 2), 9) == 9);
  CHECK(HorizonDepth(HorizonVariant::Moving(8), 999) == 8);
  CHECK(HorizonDepth(HorizonVariant::Fixed(10), 1) == 10);
  CHECK(HorizonDepth(HorizonVariant::Fixed(10), 10) == 1);
  CHECK(HorizonDepth(HorizonVariant::Fixed(10), 50) == 1);
  CHECK_THROWS_AS(ValidateHorizon(HorizonVariant::AlmostConsistent(8, 1)), DomainError);
  CHECK_THROWS_AS(ValidateHorizon(HorizonVariant::Moving(0)), DomainError);
  CHECK_THROWS_AS(HorizonDepth(consistent, 0), DomainError);
}

TEST_CASE("tree cost") {
  for (int d = 1; d <= 9; ++d) {
    std::uint64_t nodes = 0;
    ExpectiminValues(kC, TransitionCounts{}, LossMatrixBelief{}, d, &nodes);
    CHECK(nodes == ExpectiminTreeSize(d));
    CHECK(ExpectiminTreeSize(d) == ((std::uint64_t{1} << (2 * d)) - 1) / 3);
  }
  const AixiAgent agent;
  std::uint64_t decision = 0;
  agent.Act(&decision);
  CHECK(decision == 2 * ExpectiminTreeSize(8));
}

TEST_CASE("observations") {
  AixiAgent agent;
  agent.Observe({kD, kC}, 1);
  CHECK(agent.counts().Total() == 0);
  CHECK(agent.belief().entry(kD, kC) == 1);
  CHECK(agent.step() == 2);
  agent.Observe({kC, kC}, 0);
  CHECK(agent.counts().Total() == 1);
  CHECK(agent.counts().at(kD, kC, kC) == 1);
  CHECK_THROWS_AS(agent.Observe({kD, kC}, 2), InconsistencyError);
}

TEST_CASE("known entries never decrease and actions are state functions") {
  Rng rng(8);
  const MatrixGame g = BuiltinGame("stag_hunt");
  AixiAgent a(AixiConfig{HorizonVariant::AlmostConsistent(4, 2), {}});
  AixiAgent b = a;
  int known = 0;
  for (int t = 0; t < 40; ++t) {
    const Action y = a.Act();
    CHECK(b.Act() == y);
    const Action x = Bernoulli(rng, 0.5) ? kC : kD;
    const int loss = LossOf(g.Reward(Seat::kRow, y, x));
    a.Observe({y, x}, loss);
    b.Observe({y, x}, loss);
    CHECK(a.belief().KnownCount() >= known);
    known = a.belief().KnownCount();
    CHECK(a.counts().Total() == static_cast<std::uint64_t>(t));
  }
}

}  // namespace
}  // namespace uml_arena
