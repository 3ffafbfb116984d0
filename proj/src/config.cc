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

#include "uml_arena/config.h"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "uml_arena/errors.h"

namespace uml_arena {

namespace {

const std::set<std::string, std::less<>> kKeys = {
    "game",        "r1",         "r2",          "row",
    "col",         "steps",      "runs",        "seed",
    "variant",     "depth",      "depth_b",     "loss_support",
    "foe_variant", "mc_samples", "block_schedule", "prior",
    "prior_sign",  "entering",   "out"};

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
std::optional<T> ParseNumber(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

template <class T>
std::string FormatNumber(T value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Document {
 public:
  explicit Document(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto nl = text.find('\n', start);
      std::string_view line = text.substr(start, nl - start);
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = Trim(line);
      if (!line.empty()) Add(line, line_no);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }

  const Entry* Find(std::string_view key) const {
    const auto it = entries_.find(std::string(key));
    return it == entries_.end() ? nullptr : &it->second;
  }

 private:
  void Add(std::string_view line, int line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key=value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (!kKeys.contains(key)) {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
    if (entries_.contains(key)) {
      throw ConfigError(line_no, "duplicate key '" + key + "'");
    }
    entries_[key] = {std::string(value), line_no};
  }

  std::map<std::string, Entry> entries_;
};

template <class T>
T NumberOr(const Document& doc, std::string_view key, T fallback,
           T minimum) {
  const Entry* e = doc.Find(key);
  if (e == nullptr) return fallback;
  const auto v = ParseNumber<T>(e->value);
  if (!v || *v < minimum) {
    throw ConfigError(e->line, "malformed value for '" + std::string(key) +
                                   "': '" + e->value + "'");
  }
  return *v;
}

MatrixGame ResolveGame(const Document& doc) {
  const Entry* game = doc.Find("game");
  const Entry* r1 = doc.Find("r1");
  const Entry* r2 = doc.Find("r2");
  if (game == nullptr) throw ConfigError(0, "missing key 'game'");
  if (game->value == "custom") {
    if (r1 == nullptr || r2 == nullptr) {
      throw ConfigError(game->line, "custom game needs both r1 and r2");
    }
    RewardGrid g1, g2;
    try {
      g1 = ParseRewardGrid(r1->value);
    } catch (const ArenaError& e) {
      throw ConfigError(r1->line, e.what());
    }
    try {
      g2 = ParseRewardGrid(r2->value);
    } catch (const ArenaError& e) {
      throw ConfigError(r2->line, e.what());
    }
    return MatrixGame("custom", g1, g2);
  }
  if (r1 != nullptr || r2 != nullptr) {
    const Entry* e = r1 != nullptr ? r1 : r2;
    throw ConfigError(e->line, "r1/r2 require game=custom");
  }
  try {
    return BuiltinGame(game->value);
  } catch (const LookupError& e) {
    throw ConfigError(game->line, e.what());
  }
}

AixiConfig ResolveAixi(const Document& doc, Seat seat) {
  AixiConfig cfg;
  int depth = NumberOr<int>(doc, "depth", 8, 1);
  if (seat == Seat::kCol) depth = NumberOr<int>(doc, "depth_b", depth, 1);
  std::string variant = "consistent";
  int line = 0;
  if (const Entry* e = doc.Find("variant")) {
    variant = e->value;
    line = e->line;
  }
  if (variant == "fixed") {
    cfg.horizon = HorizonVariant::Fixed(depth);
  } else if (variant == "moving") {
    cfg.horizon = HorizonVariant::Moving(depth);
  } else if (variant == "consistent") {
    if (depth < 2) {
      const Entry* e = doc.Find(seat == Seat::kCol && doc.Find("depth_b")
                                    ? "depth_b"
                                    : "depth");
      throw ConfigError(e != nullptr ? e->line : 0,
                        "consistent horizon needs depth >= 2");
    }
    cfg.horizon = HorizonVariant::AlmostConsistent(depth, 2);
  } else {
    throw ConfigError(line, "unknown horizon variant '" + variant +
                                "'; valid: fixed, moving, consistent");
  }
  if (const Entry* e = doc.Find("loss_support")) {
    std::vector<int> values;
    for (auto part : Split(e->value, ',')) {
      const auto v = ParseNumber<int>(part);
      if (!v) throw ConfigError(e->line, "malformed loss_support");
      values.push_back(*v);
    }
    cfg.support = LossSupport(values);
  }
  return cfg;
}

FoeConfig ResolveFoe(const Document& doc) {
  FoeConfig cfg;
  if (const Entry* e = doc.Find("foe_variant")) {
    if (e->value == "basic") {
      cfg.variant = FoeVariant::kBasic;
    } else if (e->value == "faster") {
      cfg.variant = FoeVariant::kFaster;
    } else {
      throw ConfigError(e->line, "unknown foe_variant '" + e->value +
                                     "'; valid: basic, faster");
    }
  }
  cfg.mc_samples = NumberOr<int>(doc, "mc_samples", 1000, 1);
  if (const Entry* e = doc.Find("block_schedule")) {
    try {
      cfg.block_schedule = ParseBlockSchedule(e->value);
    } catch (const LookupError& err) {
      throw ConfigError(e->line, err.what());
    }
  }
  if (const Entry* e = doc.Find("prior"); e != nullptr && e->value != "uniform") {
    for (auto part : Split(e->value, ',')) {
      const auto w = ParseNumber<double>(part);
      if (!w || !(*w > 0.0)) throw ConfigError(e->line, "malformed prior");
      cfg.prior.push_back(*w);
    }
    if (cfg.prior.size() != kNumMarkovExperts) {
      throw ConfigError(e->line, "prior needs 16 weights");
    }
  }
  if (const Entry* e = doc.Find("prior_sign")) {
    if (e->value == "penalty") {
      cfg.prior_sign = PriorSign::kPenalty;
    } else if (e->value == "paper") {
      cfg.prior_sign = PriorSign::kPaper;
    } else {
      throw ConfigError(e->line, "unknown prior_sign '" + e->value +
                                     "'; valid: penalty, paper");
    }
  }
  if (const Entry* e = doc.Find("entering")) {
    if (e->value == "on") {
      cfg.entering_times = true;
    } else if (e->value == "off") {
      cfg.entering_times = false;
    } else if (e->value != "auto") {
      throw ConfigError(e->line, "unknown entering '" + e->value +
                                     "'; valid: auto, on, off");
    }
  }
  try {
    FoeLearner probe(kNumMarkovExperts, cfg);
  } catch (const ArenaError& err) {
    const Entry* e = doc.Find("prior");
    throw ConfigError(e != nullptr ? e->line : 0, err.what());
  }
  return cfg;
}

PlayerSpec ResolvePlayer(const Document& doc, std::string_view key,
                         const MatrixGame& game, Seat seat) {
  const Entry* e = doc.Find(key);
  if (e == nullptr) throw ConfigError(0, "missing key '" + std::string(key) + "'");
  if (e->value == "aixi") {
    try {
      return ResolveAixi(doc, seat);
    } catch (const ConfigError&) {
      throw;
    } catch (const ArenaError& err) {
      throw ConfigError(e->line, err.what());
    }
  }
  if (e->value == "foe") return ResolveFoe(doc);
  try {
    return ScriptedSpec{ParseOpponent(e->value, game, seat)};
  } catch (const LookupError&) {
    throw ConfigError(e->line, "unknown player '" + e->value +
                                   "'; valid: aixi, foe, random, tft1, tft2, "
                                   "tft3, alt0, alt1, stubborn3, stubborn2");
  }
}

}  // namespace

RewardGrid ParseRewardGrid(std::string_view text) {
  const auto rows = Split(text, ';');
  if (rows.size() != 2) throw DomainError("reward matrix needs 2 rows: '" +
                                          std::string(text) + "'");
  RewardGrid grid{};
  for (int i = 0; i < 2; ++i) {
    const auto cells = Split(rows[i], ',');
    if (cells.size() != 2) throw DomainError("reward row needs 2 entries");
    for (int j = 0; j < 2; ++j) {
      const auto v = ParseNumber<int>(cells[j]);
      if (!v) throw DomainError("malformed reward '" + std::string(cells[j]) + "'");
      if (*v < kMinReward || *v > kMaxReward) {
        throw DomainError("reward " + std::to_string(*v) + " outside {0..4}");
      }
      grid[i][j] = *v;
    }
  }
  return grid;
}

RunConfig ParseConfig(std::string_view text) {
  const Document doc(text);
  MatrixGame game = ResolveGame(doc);
  PlayerSpec row = ResolvePlayer(doc, "row", game, Seat::kRow);
  PlayerSpec col = ResolvePlayer(doc, "col", game, Seat::kCol);
  MatchConfig match = MakeMatchConfig(game, row, col);
  match.steps = NumberOr<std::int64_t>(doc, "steps", match.steps, 1);
  match.runs = NumberOr<int>(doc, "runs", match.runs, 1);
  match.master_seed = NumberOr<std::uint64_t>(doc, "seed", 0, 0);
  RunConfig cfg{std::move(match), doc.Find("row")->value,
                doc.Find("col")->value, ""};
  if (const Entry* e = doc.Find("out")) cfg.out_dir = e->value;
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseConfig(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(0, path + ": " + e.what());
  }
}

std::string SerializeConfig(const RunConfig& config) {
  const MatchConfig& m = config.match;
  std::ostringstream out;
  const auto grid = [](const RewardGrid& g) {
    return std::to_string(g[0][0]) + "," + std::to_string(g[0][1]) + ";" +
           std::to_string(g[1][0]) + "," + std::to_string(g[1][1]);
  };
  if (m.game.name() == "custom") {
    out << "game=custom\n"
        << "r1=\"" << grid(m.game.r1()) << "\"\n"
        << "r2=\"" << grid(m.game.r2()) << "\"\n";
  } else {
    out << "game=" << m.game.name() << "\n";
  }
  out << "row=" << config.row_id << "\n"
      << "col=" << config.col_id << "\n"
      << "steps=" << m.steps << "\n"
      << "runs=" << m.runs << "\n"
      << "seed=" << m.master_seed << "\n";

  const auto* row_aixi = std::get_if<AixiConfig>(&m.row);
  const auto* col_aixi = std::get_if<AixiConfig>(&m.col);
  if (const AixiConfig* a = row_aixi != nullptr ? row_aixi : col_aixi) {
    switch (a->horizon.kind) {
      case HorizonVariant::Kind::kFixed:
        out << "variant=fixed\n";
        break;
      case HorizonVariant::Kind::kMoving:
        out << "variant=moving\n";
        break;
      case HorizonVariant::Kind::kAlmostConsistent:
        out << "variant=consistent\n";
        break;
    }
    out << "depth=" << a->horizon.depth << "\n";
    if (row_aixi != nullptr && col_aixi != nullptr &&
        col_aixi->horizon.depth != row_aixi->horizon.depth) {
      out << "depth_b=" << col_aixi->horizon.depth << "\n";
    }
    out << "loss_support=\"";
    const auto& values = a->support.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << (i ? "," : "") << values[i];
    }
    out << "\"\n";
  }
  const auto* row_foe = std::get_if<FoeConfig>(&m.row);
  const auto* col_foe = std::get_if<FoeConfig>(&m.col);
  if (const FoeConfig* f = row_foe != nullptr ? row_foe : col_foe) {
    out << "foe_variant=" << (f->variant == FoeVariant::kBasic ? "basic" : "faster")
        << "\n"
        << "mc_samples=" << f->mc_samples << "\n"
        << "block_schedule=" << BlockScheduleId(f->block_schedule) << "\n";
    if (f->prior.empty()) {
      out << "prior=uniform\n";
    } else {
      out << "prior=\"";
      for (std::size_t i = 0; i < f->prior.size(); ++i) {
        out << (i ? "," : "") << FormatNumber(f->prior[i]);
      }
      out << "\"\n";
    }
    out << "prior_sign="
        << (f->prior_sign == PriorSign::kPenalty ? "penalty" : "paper") << "\n";
    if (f->entering_times) {
      out << "entering=" << (*f->entering_times ? "on" : "off") << "\n";
    }
  }
  if (!config.out_dir.empty()) out << "out=" << config.out_dir << "\n";
  return out.str();
}

}  // namespace uml_arena
