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

#ifndef UML_ARENA_BAYES_MODEL_H_
#define UML_ARENA_BAYES_MODEL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uml_arena/game.h"

namespace uml_arena {

// Transition counts n[y][x_prev][x_next] of the opponent's move sequence,
// keyed by our own previous action y. Together with Laplace's rule they give
// the Bayes mixture over all two-state Markov opponents in closed form.
class TransitionCounts {
 public:
  TransitionCounts() = default;

  std::uint32_t at(Action y, Action x_prev, Action x_next) const {
    return n_[Slot(y, x_prev, x_next)];
  }
  void set(Action y, Action x_prev, Action x_next, std::uint32_t value) {
    n_[Slot(y, x_prev, x_next)] = value;
  }
  void Increment(Action y, Action x_prev, Action x_next) {
    ++n_[Slot(y, x_prev, x_next)];
  }
  std::uint64_t Total() const;

  friend bool operator==(const TransitionCounts&,
                         const TransitionCounts&) = default;

 private:
  static constexpr int Slot(Action y, Action x_prev, Action x_next) {
    return (Index(y) << 2) | (Index(x_prev) << 1) | Index(x_next);
  }
  std::array<std::uint32_t, 8> n_{};
};

// P(x_next = 1 | y_prev, x_prev) under Laplace's rule:
// (n[y][x][1] + 1) / (n[y][x][0] + n[y][x][1] + 2).
double XiPredict(const TransitionCounts& counts, Action y_prev, Action x_prev);

// P(x_next = x | y_prev, x_prev); the two outcomes sum to exactly 1.
double XiProbability(const TransitionCounts& counts, Action y_prev,
                     Action x_prev, Action x_next);

// First round: there is no previous joint action to condition on.
inline double XiPredictFirst(const TransitionCounts&) { return 0.5; }

TransitionCounts UpdateCounts(TransitionCounts counts, Action y_prev,
                              Action x_prev, Action x_next);

// Finite set of candidate loss values for the unknown loss matrix.
class LossSupport {
 public:
  // {0, 1, 2, 3, 4, -16}.
  LossSupport();
  // Throws DomainError for an empty set. Duplicates are removed.
  explicit LossSupport(std::vector<int> values);

  const std::vector<int>& values() const { return values_; }
  bool Contains(int v) const;
  double Mean() const { return mean_; }
  int Min() const { return values_.front(); }

  friend bool operator==(const LossSupport& a, const LossSupport& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<int> values_;  // sorted ascending
  double mean_ = 0.0;
};

// Belief over a deterministic 2x2 loss matrix indexed [own action y][opponent
// action x]. Unknown entries are independent and uniform over the support,
// so each contributes the support mean to an expectation.
class LossMatrixBelief {
 public:
  LossMatrixBelief() = default;
  explicit LossMatrixBelief(LossSupport support)
      : support_(std::move(support)) {}

  const LossSupport& support() const { return support_; }
  std::optional<int> entry(Action y, Action x) const {
    return entries_[Index(y)][Index(x)];
  }
  int KnownCount() const;

  // Known value, or the support mean.
  double Expected(Action y, Action x) const {
    const auto& e = entries_[Index(y)][Index(x)];
    return e ? static_cast<double>(*e) : support_.Mean();
  }

  // Throws SupportViolation if `loss` is not in the support and
  // InconsistencyError if it contradicts an earlier observation.
  void Observe(Action y, Action x, int loss);

 private:
  LossSupport support_;
  std::array<std::array<std::optional<int>, 2>, 2> entries_{};
};

double ExpectedEntryLoss(const LossMatrixBelief& belief, Action y, Action x);
LossMatrixBelief ObserveEntry(LossMatrixBelief belief, Action y, Action x,
                              int loss);

}  // namespace uml_arena

#endif  // UML_ARENA_BAYES_MODEL_H_
