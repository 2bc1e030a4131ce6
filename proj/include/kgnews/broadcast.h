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


// Parsing of live text broadcasts (play-by-play logs) into a validated,
// time-ordered game log. Each input row is one (quarter, time, team, event,
// score) record.

#ifndef KGNEWS_BROADCAST_H_
#define KGNEWS_BROADCAST_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgnews {

enum class EventCode {
  kMade2pt,
  kMade3pt,
  kMadeFt,
  kMiss2pt,
  kMiss3pt,
  kRebOff,
  kRebDef,
  kFoulShooting,
  kFoulPersonal,
  kFoulOffensive,
  kFoulFlagrant,
  kFoulTechnical,
  kToBadPass,
  kToOutOfBounds,
  kToLostBall,
  kLineup,
  kTimeout,
  kAssist,
};

// The seven broadcast event categories, plus a flagged slot for assists,
// which the categories omit but player summaries need.
enum class EventCategory {
  kScore,
  kMiss,
  kRebound,
  kFoul,
  kTurnover,
  kLineup,
  kTimeout,
  kAssistExtension,
};

const std::vector<EventCode> &AllEventCodes();
EventCategory CategoryOf(EventCode code);
bool IsExtension(EventCode code);
std::string_view EventCodeName(EventCode code);
std::optional<EventCode> EventCodeFromName(std::string_view name);
std::string_view EventCategoryName(EventCategory category);

inline bool IsScoring(EventCode code) {
  return CategoryOf(code) == EventCategory::kScore;
}
inline bool IsMiss(EventCode code) {
  return CategoryOf(code) == EventCategory::kMiss;
}
inline bool IsRebound(EventCode code) {
  return CategoryOf(code) == EventCategory::kRebound;
}
inline bool IsTurnover(EventCode code) {
  return CategoryOf(code) == EventCategory::kTurnover;
}

struct PlayEvent {
  int quarter = 1;
  double clock_remaining = 0;  // seconds left in the quarter
  std::string team;
  EventCode code = EventCode::kTimeout;
  std::optional<std::string> actor;
  int points = 0;
  int score_home = 0;
  int score_away = 0;
  std::string raw_text;

  bool operator==(const PlayEvent &) const = default;
};

struct GameLog {
  std::string game_id;
  std::string home_team;
  std::string away_team;
  double quarter_length = 720;
  std::vector<PlayEvent> events;

  bool operator==(const GameLog &) const = default;

  // Number of the last quarter present, 0 for an empty log.
  int LastQuarter() const;
};

struct ClassifiedEvent {
  EventCode code;
  std::optional<std::string> actor;
  int points = 0;
  // False when a rebound row carries no offensive/defensive marker; the
  // parser then infers the direction from the last missed shot.
  bool explicit_direction = true;
};

// Maps a free-text event description onto an EventCode through an ordered
// pattern table. Throws kUnclassified when nothing matches.
ClassifiedEvent ClassifyEvent(std::string_view description);

// Accepts "MM:SS", "SS.S\"" and bare seconds ("0.0", "704").
double ParseClock(std::string_view text);

// Shortest decimal that parses back to the same double.
std::string FormatSeconds(double seconds);

// Seconds elapsed since the start of the game.
double ToElapsed(int quarter, double clock_remaining, double quarter_length);

inline double ToElapsed(const PlayEvent &e, double quarter_length) {
  return ToElapsed(e.quarter, e.clock_remaining, quarter_length);
}

enum class BroadcastFormat { kCsv, kJsonLines };

struct ParseOptions {
  std::string home_team;
  // Optional; otherwise the first non-home team seen becomes the away team.
  std::string away_team;
  std::string game_id;
  double quarter_length = 720;
};

// Rows are quarter,time,team,description,score where score is "H:A" from
// the home team's point of view. Delimited input may use ',' (RFC 4180
// quoting) or '|'; a header row is skipped. Errors carry the 1-based row.
GameLog ParseBroadcast(std::istream &in, BroadcastFormat format,
                       const ParseOptions &options);

// Picks the format from the extension (.jsonl / .json → JSON lines).
GameLog ReadBroadcastFile(const std::string &path, const ParseOptions &options);

void WriteBroadcast(const GameLog &log, std::ostream &out,
                    BroadcastFormat format);

}  // namespace kgnews

#endif  // KGNEWS_BROADCAST_H_
