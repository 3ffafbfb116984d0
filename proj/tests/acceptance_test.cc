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

// Prints one line per acceptance criterion; fails when any gating criterion
// does.

#include <cstdio>

#include "uml_arena/acceptance.h"

int main() {
  const auto results = uml_arena::RunAcceptance([](const uml_arena::CriterionResult& r) {
    std::printf("%s\n", uml_arena::FormatCriterion(r).c_str());
    std::fflush(stdout);
  });
  const bool ok = uml_arena::AllGatingPassed(results);
  std::printf("acceptance: %s\n", ok ? "all gating criteria passed" : "FAILED");
  return ok ? 0 : 1;
}
