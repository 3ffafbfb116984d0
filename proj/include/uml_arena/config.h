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

#ifndef UML_ARENA_CONFIG_H_
#define UML_ARENA_CONFIG_H_

#include <string>
#include <string_view>

#include "uml_arena/arena.h"

namespace uml_arena {

// A match as described by a key=value config file.
//
//   game           built-in identifier, or "custom" together with r1/r2
//   r1, r2         custom reward matrices, "a,b;c,d"
//   row, col       aixi | foe | one of the opponent identifiers
//   steps, runs    default 20000/100 and 10/1, see MatchConfig
//   seed           master seed (u64)
//   variant        fixed | moving | consistent (AIXI horizon)
//   depth          AIXI tree depth, default 8
//   depth_b        depth override for an AIXI column player
//   loss_support   comma separated integers, default "0,1,2,3,4,-16"
//   foe_variant    basic | faster
//   mc_samples     Monte-Carlo samples of the faster variant, default 1000
//   block_schedule theorem | theorem16 | sim024
//   prior          uniform | 16 comma separated weights
//   prior_sign     penalty | paper
//   entering       auto | on | off
//   out            output directory
//
// Blank lines and text after '#' are ignored. Values may be double-quoted.
struct RunConfig {
  MatchConfig match;
  std::string row_id;
  std::string col_id;
  std::string out_dir;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError carrying the offending line for unknown keys, malformed
// values and unresolved identifiers.
RunConfig ParseConfig(std::string_view text);

// Reads and parses a file; a missing file is a ConfigError.
RunConfig LoadConfig(const std::string& path);

// Canonical key=value text; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const RunConfig& config);

// "a,b;c,d" -> {{a,b},{c,d}}. Throws DomainError.
RewardGrid ParseRewardGrid(std::string_view text);

}  // namespace uml_arena

#endif  // UML_ARENA_CONFIG_H_
