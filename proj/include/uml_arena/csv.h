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

#ifndef UML_ARENA_CSV_H_
#define UML_ARENA_CSV_H_

#include <span>
#include <string>

#include "uml_arena/arena.h"

namespace uml_arena {

// run,t,action_row,action_col,reward_row,reward_col
std::string FormatSeriesCsv(std::span<const TimeSeries> runs);
// t,metric_mean,metric_std
std::string FormatAggregateCsv(std::span<const AggregatePoint> points);

// Locale-independent shortest round-trip decimal.
std::string FormatDecimal(double v);

// Throws IoError naming the path.
void WriteTextFile(const std::string& path, const std::string& contents);
void EmitSeriesCsv(std::span<const TimeSeries> runs, const std::string& path);
void EmitAggregateCsv(std::span<const AggregatePoint> points,
                      const std::string& path);

}  // namespace uml_arena

#endif  // UML_ARENA_CSV_H_
