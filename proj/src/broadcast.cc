// Copyright 2026 The kgnews Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "kgnews/broadcast.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "kgnews/error.h"

namespace kgnews {
namespace {

struct CodeInfo {
  EventCode code;
  std::string_view name;
  EventCategory category;
};

constexpr CodeInfo kCodes[] = {
    {EventCode::kMade2pt, "MADE_2PT", EventCategory::kScore},
    {EventCode::kMade3pt, "MADE_3PT", EventCategory::kScore},
    {EventCode::kMadeFt, "MADE_FT", EventCategory::kScore},
    {EventCode::kMiss2pt, "MISS_2PT", EventCategory::kMiss},
    {EventCode::kMiss3pt, "MISS_3PT", EventCategory::kMiss},
    {EventCode::kRebOff, "REB_OFF", EventCategory::kRebound},
    {EventCode::kRebDef, "REB_DEF", EventCategory::kRebound},
    {EventCode::kFoulShooting, "FOUL_SHOOTING", EventCategory::kFoul},
    {EventCode::kFoulPersonal, "FOUL_PERSONAL", EventCategory::kFoul},
    {EventCode::kFoulOffensive, "FOUL_OFFENSIVE", EventCategory::kFoul},
    {EventCode::kFoulFlagrant, "FOUL_FLAGRANT", EventCategory::kFoul},
    {EventCode::kFoulTechnical, "FOUL_TECHNICAL", EventCategory::kFoul},
    {EventCode::kToBadPass, "TO_BAD_PASS", EventCategory::kTurnover},
    {EventCode::kToOutOfBounds, "TO_OUT_OF_BOUNDS", EventCategory::kTurnover},
    {EventCode::kToLostBall, "TO_LOST_BALL", EventCategory::kTurnover},
    {EventCode::kLineup, "LINEUP", EventCategory::kLineup},
    {EventCode::kTimeout, "TIMEOUT", EventCategory::kTimeout},
    {EventCode::kAssist, "ASSIST", EventCategory::kAssistExtension},
};

const CodeInfo &InfoOf(EventCode code) {
  for (const auto &info : kCodes) {
    if (info.code == code) return info;
  }
  throw Error(ErrorCode::kInvalidArgument, "bad event code");
}

struct Pattern {
  std::regex re;
  EventCode code;
  bool explicit_direction;
};

// Order matters: misses are tested before makes, specific fouls before the
// generic one, and the generic rebound last among rebounds.
const std::vector<Pattern> &PatternTable() {
  static const std::vector<Pattern> table = [] {
    const auto flags = std::regex::icase | std::regex::ECMAScript;
    auto p = [&](const char *re, EventCode code, bool explicit_dir = true) {
      return Pattern{std::regex(re, flags), code, explicit_dir};
    };
    const std::string shot = "(two|layup|jumper|jump shot|dunk|hook|field goal)";
    std::vector<Pattern> t;
    t.push_back(p(R"(\bassist)", EventCode::kAssist));
    t.push_back(p(R"(\bmiss(es|ed)?\b.*\bthree|three[- ]point(s|er)?\b.*\bmiss)",
                  EventCode::kMiss3pt));
    t.push_back(p((R"(\bmiss(es|ed)?\b.*\b)" + shot +
                   R"(|two[- ]point(s|er)?\b.*\bmiss)").c_str(),
                  EventCode::kMiss2pt));
    t.push_back(p(R"(\b(makes|made|hits|scores|sinks)\b.*free throw|free throw.*\b(hit|made|good)\b)",
                  EventCode::kMadeFt));
    t.push_back(p(R"(\b(makes|made|hits|scores|drains|nails)\b.*\bthree|three[- ]point(s|er)?\b.*\b(hit|made|good)\b)",
                  EventCode::kMade3pt));
    t.push_back(p((R"(\b(makes|made|hits|scores)\b.*\b)" + shot +
                   R"(|two[- ]point(s|er)?\b.*\b(hit|made|good)\b|\bdunks\b)").c_str(),
                  EventCode::kMade2pt));
    t.push_back(p(R"(offensive rebound)", EventCode::kRebOff));
    t.push_back(p(R"(defensive rebound)", EventCode::kRebDef));
    t.push_back(p(R"(\brebound)", EventCode::kRebDef, false));
    t.push_back(p(R"(technical foul|\btechnical\b)", EventCode::kFoulTechnical));
    t.push_back(p(R"(flagrant|malicious foul)", EventCode::kFoulFlagrant));
    t.push_back(p(R"(shooting foul)", EventCode::kFoulShooting));
    t.push_back(p(R"(offensive foul|\bcharg(e|ing)\b)", EventCode::kFoulOffensive));
    t.push_back(p(R"(\bfoul)", EventCode::kFoulPersonal));
    t.push_back(p(R"(bad pass|passing error)", EventCode::kToBadPass));
    t.push_back(p(R"(out of bounds)", EventCode::kToOutOfBounds));
    t.push_back(p(R"(lost ball|loses the ball|losing the ball|\bturnover)",
                  EventCode::kToLostBall));
    t.push_back(p(R"(substitution|enters the game|\breplaces\b|\blineup\b|checks in)",
                  EventCode::kLineup));
    t.push_back(p(R"(\btime ?out\b|\bpause\b)", EventCode::kTimeout));
    return t;
  }();
  return table;
}

int PointsFor(EventCode code) {
  switch (code) {
    case EventCode::kMade2pt: return 2;
    case EventCode::kMade3pt: return 3;
    case EventCode::kMadeFt: return 1;
    default: return 0;
  }
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool IsStopWord(const std::string &w) {
  return w == "The" || w == "A" || w == "An";
}

// Leading span of capitalised tokens, e.g. "Joel Embiid makes ..." →
// "Joel Embiid". A trailing comma closes the span.
std::optional<std::string> LeadingName(std::string_view description) {
  if (description.starts_with("Substitution:")) {
    description.remove_prefix(std::string_view("Substitution:").size());
  }
  std::istringstream in{std::string(description)};
  std::string token;
  std::vector<std::string> words;
  while (in >> token) {
    if (!std::isupper(static_cast<unsigned char>(token[0]))) break;
    bool closes = false;
    while (!token.empty() && (token.back() == ',' || token.back() == ':' ||
                              token.back() == ';')) {
      token.pop_back();
      closes = true;
    }
    // A sentence-final period ends the span, but keep initials like "Jr."
    // and "T.J.".
    if (token.size() > 3 && token.back() == '.' &&
        token.find('.') == token.size() - 1) {
      token.pop_back();
      closes = true;
    }
    if (token.empty()) break;
    words.push_back(token);
    if (closes) break;
  }
  while (!words.empty() && IsStopWord(words.front())) {
    words.erase(words.begin());
  }
  if (words.empty()) return std::nullopt;
  std::string name = words[0];
  for (size_t i = 1; i < words.size(); ++i) name += " " + words[i];
  return name;
}

std::string NormalizeTeam(std::string_view raw) {
  std::string t = Trim(raw);
  while (!t.empty() && (t.back() == '.' || t.back() == ',')) t.pop_back();
  return Trim(t);
}

std::string Lower(std::string s) {
  for (auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

int ParseQuarter(const std::string &raw, int row) {
  const std::string s = Lower(Trim(raw));
  auto parse_int = [&](std::string_view digits) -> int {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 1) {
      throw Error(ErrorCode::kMalformedRow,
                  "row " + std::to_string(row) + ": bad quarter '" + raw + "'");
    }
    return value;
  };
  if (s.empty()) {
    throw Error(ErrorCode::kMalformedRow,
                "row " + std::to_string(row) + ": missing quarter");
  }
  if (s[0] == 'q') return parse_int(std::string_view(s).substr(1));
  if (s.rfind("ot", 0) == 0) {
    return s.size() == 2 ? 5 : 4 + parse_int(std::string_view(s).substr(2));
  }
  static const char *kOrdinals[] = {"first", "second", "third", "fourth"};
  for (int i = 0; i < 4; ++i) {
    if (s.rfind(kOrdinals[i], 0) == 0) return i + 1;
  }
  return parse_int(s);
}

struct Score {
  int home;
  int away;
};

Score ParseScore(const std::string &raw, int row) {
  const std::string s = Trim(raw);
  const auto colon = s.find(':');
  auto bad = [&]() {
    return Error(ErrorCode::kMalformedRow, "row " + std::to_string(row) +
                                               ": score must be \"H:A\", got '" +
                                               raw + "'");
  };
  if (colon == std::string::npos) throw bad();
  Score score{};
  const std::string h = Trim(s.substr(0, colon));
  const std::string a = Trim(s.substr(colon + 1));
  auto r1 = std::from_chars(h.data(), h.data() + h.size(), score.home);
  auto r2 = std::from_chars(a.data(), a.data() + a.size(), score.away);
  if (h.empty() || a.empty() || r1.ec != std::errc() ||
      r1.ptr != h.data() + h.size() || r2.ec != std::errc() ||
      r2.ptr != a.data() + a.size() || score.home < 0 || score.away < 0) {
    throw bad();
  }
  return score;
}

struct RawRow {
  int line = 0;
  std::string quarter, time, team, description, score;
};

// RFC 4180 field splitting for one physical line. Quoted fields may contain
// the delimiter and doubled quotes; embedded newlines are not supported.
std::vector<std::string> SplitDelimited(const std::string &line, char delim) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && Trim(field).empty()) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (c == delim) {
      fields.push_back(was_quoted ? field : Trim(field));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  fields.push_back(was_quoted ? field : Trim(field));
  return fields;
}

std::vector<RawRow> ReadDelimitedRows(std::istream &in) {
  std::vector<RawRow> rows;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    const char delim = line.find('|') != std::string::npos ? '|' : ',';
    auto fields = SplitDelimited(line, delim);
    if (first) {
      first = false;
      if (!fields.empty() && Lower(fields[0]) == "quarter") continue;
    }
    if (fields.size() != 5) {
      throw Error(ErrorCode::kMalformedRow,
                  "row " + std::to_string(line_no) + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    rows.push_back({line_no, fields[0], fields[1], fields[2], fields[3], fields[4]});
  }
  return rows;
}

std::vector<RawRow> ReadJsonRows(std::istream &in) {
  std::vector<RawRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedRow,
                  "row " + std::to_string(line_no) + ": " + e.what());
    }
    auto field = [&](const char *key) -> std::string {
      if (!obj.is_object() || !obj.contains(key)) {
        throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(line_no) +
                                                  ": missing field '" + key + "'");
      }
      const auto &v = obj[key];
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return v.dump();
      throw Error(ErrorCode::kMalformedRow, "row " + std::to_string(line_no) +
                                                ": bad field '" + key + "'");
    };
    rows.push_back({line_no, field("quarter"), field("time"), field("team"),
                    field("description"), field("score")});
  }
  return rows;
}

std::string CsvQuote(const std::string &s) {
  if (s.find_first_of(",\"|") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<EventCode> &AllEventCodes() {
  static const std::vector<EventCode> codes = [] {
    std::vector<EventCode> v;
    for (const auto &info : kCodes) v.push_back(info.code);
    return v;
  }();
  return codes;
}

EventCategory CategoryOf(EventCode code) { return InfoOf(code).category; }

bool IsExtension(EventCode code) {
  return CategoryOf(code) == EventCategory::kAssistExtension;
}

std::string_view EventCodeName(EventCode code) { return InfoOf(code).name; }

std::optional<EventCode> EventCodeFromName(std::string_view name) {
  for (const auto &info : kCodes) {
    if (info.name == name) return info.code;
  }
  return std::nullopt;
}

std::string_view EventCategoryName(EventCategory category) {
  switch (category) {
    case EventCategory::kScore: return "score";
    case EventCategory::kMiss: return "strike_iron";
    case EventCategory::kRebound: return "rebound";
    case EventCategory::kFoul: return "foul";
    case EventCategory::kTurnover: return "error";
    case EventCategory::kLineup: return "lineup_adjustment";
    case EventCategory::kTimeout: return "pause";
    case EventCategory::kAssistExtension: return "assist_extension";
  }
  return "unknown";
}

int GameLog::LastQuarter() const {
  return events.empty() ? 0 : events.back().quarter;
}

ClassifiedEvent ClassifyEvent(std::string_view description) {
  const std::string text = Trim(description);
  if (text.empty()) {
    throw Error(ErrorCode::kUnclassified, "empty description");
  }
  for (const auto &pattern : PatternTable()) {
    if (std::regex_search(text, pattern.re)) {
      ClassifiedEvent out{pattern.code, std::nullopt, PointsFor(pattern.code),
                          pattern.explicit_direction};
      if (pattern.code != EventCode::kTimeout) out.actor = LeadingName(text);
      return out;
    }
  }
  throw Error(ErrorCode::kUnclassified, "no pattern matches '" + text + "'");
}

double ParseClock(std::string_view text) {
  std::string s = Trim(text);
  auto bad = [&]() {
    return Error(ErrorCode::kMalformedRow, "unparsable clock '" + std::string(text) + "'");
  };
  if (!s.empty() && s.back() == '"') s.pop_back();
  if (s.empty()) throw bad();
  auto number = [&](std::string_view part) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() ||
        !std::isfinite(v) || v < 0) {
      throw bad();
    }
    return v;
  };
  const auto colon = s.find(':');
  if (colon == std::string::npos) return number(s);
  const double minutes = number(std::string_view(s).substr(0, colon));
  const double seconds = number(std::string_view(s).substr(colon + 1));
  if (seconds >= 60 || minutes != std::floor(minutes)) throw bad();
  return minutes * 60 + seconds;
}

std::string FormatSeconds(double seconds) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), seconds);
  (void)ec;
  return std::string(buf, ptr);
}

double ToElapsed(int quarter, double clock_remaining, double quarter_length) {
  if (quarter < 1) {
    throw Error(ErrorCode::kInvalidArgument, "quarter must be >= 1");
  }
  if (clock_remaining < 0 || clock_remaining > quarter_length) {
    throw Error(ErrorCode::kClockRange,
                "clock " + FormatSeconds(clock_remaining) +
                    " outside quarter of length " + FormatSeconds(quarter_length));
  }
  return (quarter - 1) * quarter_length + (quarter_length - clock_remaining);
}

GameLog ParseBroadcast(std::istream &in, BroadcastFormat format,
                       const ParseOptions &options) {
  GameLog log;
  log.game_id = options.game_id;
  log.home_team = NormalizeTeam(options.home_team);
  log.away_team = NormalizeTeam(options.away_team);
  log.quarter_length = options.quarter_length;
  if (log.home_team.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "home team is required");
  }

  const std::vector<RawRow> rows = format == BroadcastFormat::kCsv
                                       ? ReadDelimitedRows(in)
                                       : ReadJsonRows(in);
  Score prev{0, 0};
  std::string last_shooting_team;
  for (const RawRow &row : rows) {
    const std::string where = "row " + std::to_string(row.line) + ": ";
    PlayEvent ev;
    ev.quarter = ParseQuarter(row.quarter, row.line);
    try {
      ev.clock_remaining = ParseClock(row.time);
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedRow, where + e.what());
    }
    if (ev.clock_remaining > log.quarter_length) {
      throw Error(ErrorCode::kClockRange, where + "clock exceeds quarter length");
    }
    ev.team = NormalizeTeam(row.team);
    if (ev.team.empty()) throw Error(ErrorCode::kMalformedRow, where + "missing team");
    if (ev.team != log.home_team) {
      if (log.away_team.empty()) {
        log.away_team = ev.team;
      } else if (ev.team != log.away_team) {
        throw Error(ErrorCode::kUnknownTeam, where + "team '" + ev.team +
                                                 "' is neither " + log.home_team +
                                                 " nor " + log.away_team);
      }
    }
    ev.raw_text = row.description;
    ClassifiedEvent cls;
    try {
      cls = ClassifyEvent(row.description);
    } catch (const Error &e) {
      throw Error(e.code(), where + e.what());
    }
    ev.code = cls.code;
    ev.actor = cls.actor;
    if (IsRebound(cls.code) && !cls.explicit_direction) {
      ev.code = (!last_shooting_team.empty() && last_shooting_team == ev.team)
                    ? EventCode::kRebOff
                    : EventCode::kRebDef;
    }
    if (IsMiss(ev.code)) last_shooting_team = ev.team;

    const Score score = ParseScore(row.score, row.line);
    ev.score_home = score.home;
    ev.score_away = score.away;
    if (score.home < prev.home || score.away < prev.away) {
      throw Error(ErrorCode::kScoreRegression,
                  where + "score went backwards (" + std::to_string(prev.home) +
                      ":" + std::to_string(prev.away) + " -> " + row.score + ")");
    }
    if (!log.events.empty()) {
      const PlayEvent &last = log.events.back();
      if (ev.quarter < last.quarter ||
          (ev.quarter == last.quarter && ev.clock_remaining > last.clock_remaining)) {
        throw Error(ErrorCode::kClockRegression, where + "event out of time order");
      }
    }
    const bool home = ev.team == log.home_team;
    const int own_delta = home ? score.home - prev.home : score.away - prev.away;
    const int other_delta = home ? score.away - prev.away : score.home - prev.home;
    if (own_delta != cls.points || other_delta != 0) {
      throw Error(ErrorCode::kPointsMismatch,
                  where + "event worth " + std::to_string(cls.points) +
                      " points but score moved " + std::to_string(prev.home) + ":" +
                      std::to_string(prev.away) + " -> " + row.score);
    }
    ev.points = own_delta;
    prev = score;
    log.events.push_back(std::move(ev));
  }
  return log;
}

GameLog ReadBroadcastFile(const std::string &path, const ParseOptions &options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  const bool json = path.ends_with(".jsonl") || path.ends_with(".json");
  ParseOptions opts = options;
  if (opts.game_id.empty()) {
    auto slash = path.find_last_of('/');
    std::string stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    opts.game_id = stem.substr(0, stem.find('.'));
  }
  return ParseBroadcast(in, json ? BroadcastFormat::kJsonLines : BroadcastFormat::kCsv,
                        opts);
}

void WriteBroadcast(const GameLog &log, std::ostream &out, BroadcastFormat format) {
  if (format == BroadcastFormat::kCsv) out << "quarter,time,team,description,score\n";
  for (const PlayEvent &e : log.events) {
    const std::string score =
        std::to_string(e.score_home) + ":" + std::to_string(e.score_away);
    if (format == BroadcastFormat::kCsv) {
      out << 'Q' << e.quarter << ',' << FormatSeconds(e.clock_remaining) << ','
          << CsvQuote(e.team) << ',' << CsvQuote(e.raw_text) << ',' << score << '\n';
    } else {
      nlohmann::json obj = {{"quarter", e.quarter},
                            {"time", FormatSeconds(e.clock_remaining)},
                            {"team", e.team},
                            {"description", e.raw_text},
                            {"score", score}};
      out << obj.dump() << '\n';
    }
  }
}

}  // namespace kgnews
