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


#ifndef UML_ARENA_ACCEPTANCE_H_
#define UML_ARENA_ACCEPTANCE_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace uml_arena {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool gating = true;  // informational criteria never fail the suite
  std::string detail;  // measured values against their thresholds
  double seconds = 0.0;
};

// Called as soon as each criterion finishes.
using CriterionSink = std::function<void(const CriterionResult&)>;

// Runs criteria 1..13 in order. `only`, when non-empty, selects a subset by
// id. Exceptions inside a criterion are reported as a failure of that
// criterion.
std::vector<CriterionResult> RunAcceptance(const CriterionSink& sink = {},
                                           std::span<const int> only = {});

// "PASS  3  <title>: <detail> (1.2 s)"; informational criteria print INFO
// instead of PASS/FAIL.
std::string FormatCriterion(const CriterionResult& r);

bool AllGatingPassed(std::span<const CriterionResult> results);

}  // namespace uml_arena

#endif  // UML_ARENA_ACCEPTANCE_H_
