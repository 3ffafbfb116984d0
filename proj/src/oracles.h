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

// Brute-force reference evaluators for the tests and the self-test. Nothing
// here shares code with the library's recursive planner: the tree is laid out
// level by level as explicit arrays of paths, and the opponent model is
// recounted from the whole hypothetical history at every node.

#ifndef UML_ARENA_SRC_ORACLES_H_
#define UML_ARENA_SRC_ORACLES_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "uml_arena/bayes_model.h"
#include "uml_arena/game.h"

namespace uml_arena::oracle {

using Pair = std::array<double, 2>;
using Losses = std::array<std::array<double, 2>, 2>;  // [own][opp]

struct Step {
  int a;  // own action
  int s;  // opponent action
};

inline Losses PlugIn(const LossMatrixBelief& belief) {
  Losses l{};
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      const auto e = belief.entry(ActionFromInt(y), ActionFromInt(x));
      if (e) {
        l[y][x] = *e;
      } else {
        double sum = 0.0;
        for (int v : belief.support().values()) sum += v;
        l[y][x] = sum / belief.support().values().size();
      }
    }
  }
  return l;
}

// Laplace predictive of opponent move `next` after (own y, opponent x), with
// the base counts plus every transition in `path` (path[0] follows s0).
inline double Predict(const TransitionCounts& base, int s0,
                      const std::vector<Step>& path, int y, int x, int next) {
  std::uint64_t n[2] = {base.at(ActionFromInt(y), ActionFromInt(x),
                                Action::kDefect),
                        base.at(ActionFromInt(y), ActionFromInt(x),
                                Action::kCooperate)};
  int prev = s0;
  for (const Step& st : path) {
    if (st.a == y && prev == x) ++n[st.s];
    prev = st.s;
  }
  return (static_cast<double>(n[next]) + 1.0) /
         (static_cast<double>(n[0] + n[1]) + 2.0);
}

inline std::vector<Step> Decode(std::uint64_t code, int len) {
  std::vector<Step> path(len);
  for (int j = len - 1; j >= 0; --j) {
    path[j] = {static_cast<int>((code >> 1) & 1), static_cast<int>(code & 1)};
    code >>= 2;
  }
  return path;
}

// Full depth-d tree: level k holds all 4^k hypothetical continuations.
inline Pair Expectimin(int s0, const TransitionCounts& counts,
                       const Losses& loss, int d) {
  std::vector<Pair> below;
  for (int k = d - 1; k >= 0; --k) {
    const std::uint64_t width = std::uint64_t{1} << (2 * k);
    std::vector<Pair> level(width);
    for (std::uint64_t code = 0; code < width; ++code) {
      const auto path = Decode(code, k);
      const int cur = k == 0 ? s0 : path.back().s;
      Pair v = {loss[0][cur], loss[1][cur]};
      if (k < d - 1) {
        for (int a = 0; a < 2; ++a) {
          for (int s = 0; s < 2; ++s) {
            const double p = Predict(counts, s0, path, a, cur, s);
            const Pair& child = below[(code << 2) | (a << 1) | s];
            v[a] += p * std::min(child[0], child[1]);
          }
        }
      }
      level[code] = v;
    }
    below = std::move(level);
  }
  return below[0];
}

// Root values mixed over the unknown current opponent move; `last` is the
// previous (own, opp) joint move.
inline Pair RootValues(const TransitionCounts& counts, const Losses& loss,
                       const std::optional<std::array<int, 2>>& last, int d) {
  Pair out = {0.0, 0.0};
  for (int s0 = 0; s0 < 2; ++s0) {
    double p = 0.5;
    TransitionCounts branch = counts;
    if (last) {
      const Action y = ActionFromInt((*last)[0]);
      const Action x = ActionFromInt((*last)[1]);
      const double n0 = counts.at(y, x, Action::kDefect);
      const double n1 = counts.at(y, x, Action::kCooperate);
      p = ((s0 == 1 ? n1 : n0) + 1.0) / (n0 + n1 + 2.0);
      branch.set(y, x, ActionFromInt(s0),
                 counts.at(y, x, ActionFromInt(s0)) + 1);
    }
    const Pair v = Expectimin(s0, branch, loss, d);
    out[0] += p * v[0];
    out[1] += p * v[1];
  }
  return out;
}

}  // namespace uml_arena::oracle

#endif  // UML_ARENA_SRC_ORACLES_H_
