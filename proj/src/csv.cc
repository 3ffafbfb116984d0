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

#include "uml_arena/csv.h"

#include <charconv>
#include <fstream>

#include "uml_arena/errors.h"

namespace uml_arena {

std::string FormatDecimal(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

std::string FormatSeriesCsv(std::span<const TimeSeries> runs) {
  std::string out = "run,t,action_row,action_col,reward_row,reward_col\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& s = runs[r];
    for (std::int64_t t = 0; t < s.size(); ++t) {
      out += std::to_string(r) + ',' + std::to_string(t + 1) + ',' +
             std::to_string(Index(s.joints[t].row)) + ',' +
             std::to_string(Index(s.joints[t].col)) + ',' +
             std::to_string(s.rewards[t].row) + ',' +
             std::to_string(s.rewards[t].col) + '\n';
    }
  }
  return out;
}

std::string FormatAggregateCsv(std::span<const AggregatePoint> points) {
  std::string out = "t,metric_mean,metric_std\n";
  for (const auto& p : points) {
    out += std::to_string(p.t) + ',' + FormatDecimal(p.mean) + ',' +
           FormatDecimal(p.std) + '\n';
  }
  return out;
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void EmitSeriesCsv(std::span<const TimeSeries> runs, const std::string& path) {
  WriteTextFile(path, FormatSeriesCsv(runs));
}

void EmitAggregateCsv(std::span<const AggregatePoint> points,
                      const std::string& path) {
  WriteTextFile(path, FormatAggregateCsv(points));
}

}  // namespace uml_arena
