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

#include "uml_arena/bayes_model.h"

#include <algorithm>
#include <numeric>

#include "uml_arena/errors.h"

namespace uml_arena {

std::uint64_t TransitionCounts::Total() const {
  return std::accumulate(n_.begin(), n_.end(), std::uint64_t{0});
}

double XiPredict(const TransitionCounts& counts, Action y_prev,
                 Action x_prev) {
  const double n0 = counts.at(y_prev, x_prev, Action::kDefect);
  const double n1 = counts.at(y_prev, x_prev, Action::kCooperate);
  return (n1 + 1.0) / (n0 + n1 + 2.0);
}

double XiProbability(const TransitionCounts& counts, Action y_prev,
                     Action x_prev, Action x_next) {
  const double p1 = XiPredict(counts, y_prev, x_prev);
  return x_next == Action::kCooperate ? p1 : 1.0 - p1;
}

TransitionCounts UpdateCounts(TransitionCounts counts, Action y_prev,
                              Action x_prev, Action x_next) {
  counts.Increment(y_prev, x_prev, x_next);
  return counts;
}

LossSupport::LossSupport() : LossSupport({0, 1, 2, 3, 4, -16}) {}

LossSupport::LossSupport(std::vector<int> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("loss support must be nonempty");
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) /
          static_cast<double>(values_.size());
}

bool LossSupport::Contains(int v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

int LossMatrixBelief::KnownCount() const {
  int known = 0;
  for (const auto& row : entries_) {
    for (const auto& e : row) known += e.has_value();
  }
  return known;
}

void LossMatrixBelief::Observe(Action y, Action x, int loss) {
  if (!support_.Contains(loss)) {
    throw SupportViolation("loss " + std::to_string(loss) +
                           " is not in the loss support");
  }
  auto& e = entries_[Index(y)][Index(x)];
  if (e && *e != loss) {
    throw InconsistencyError(
        "loss for (" + std::to_string(Index(y)) + "," +
        std::to_string(Index(x)) + ") observed as " + std::to_string(*e) +
        " and " + std::to_string(loss) + "; the game is not deterministic");
  }
  e = loss;
}

double ExpectedEntryLoss(const LossMatrixBelief& belief, Action y, Action x) {
  return belief.Expected(y, x);
}

LossMatrixBelief ObserveEntry(LossMatrixBelief belief, Action y, Action x,
                              int loss) {
  belief.Observe(y, x, loss);
  return belief;
}

}  // namespace uml_arena
