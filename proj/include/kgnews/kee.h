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


// Key event extraction: score-difference series, key time points, trend
// segmentation and per-segment key events.
//
// Times are elapsed seconds since tip-off. A series covers one quarter by
// default, or the whole game.

#ifndef KGNEWS_KEE_H_
#define KGNEWS_KEE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgnews/broadcast.h"
#include "json.hpp"

namespace kgnews {

class KnowledgeGraph;

struct KeeConfig {
  int range_threshold = 8;       // range above which a scope splits
  int steady_threshold = 10;     // |dif| beyond which a lead is "steady"
  int consecutive_points = 6;    // minimum one-player run
  double drought_seconds = 180;  // scoring drought that makes a basket notable
  int rebound_window = 2;        // events before a significant score
  int timeout_window = 5;        // scoring events compared around a timeout

  void Validate() const;
  nlohmann::json ToJson() const;
  static KeeConfig FromJson(const nlohmann::json &j);
};

struct ScoreSample {
  double time = 0;  // elapsed seconds
  int dif = 0;      // home minus away after the event
  size_t event = 0; // index into GameLog::events

  bool operator==(const ScoreSample &) const = default;
};

struct ScoreSeries {
  int quarter = 0;  // 0 for the whole game
  std::string home_team;
  std::string away_team;
  int baseline_dif = 0;  // dif before the first sample
  double scope_start = 0;
  std::vector<ScoreSample> samples;  // non-decreasing time; index breaks ties

  bool operator==(const ScoreSeries &) const = default;
};

// One sample per event of the quarter (0 = whole game). Throws kEmptyScope.
ScoreSeries ScoreDiffSeries(const GameLog &log, int quarter);

// Convenience for tests and tools: builds a series from raw values.
ScoreSeries MakeSeries(const std::vector<double> &times, const std::vector<int> &difs);

// Home and away swapped: every dif negated.
ScoreSeries Mirror(const ScoreSeries &series);

struct KeyTimes {
  size_t max_index = 0;  // key time 1
  size_t min_index = 0;  // key time 2
  bool max_snapped = false;
  bool min_snapped = false;

  bool operator==(const KeyTimes &) const = default;
};

// Argmax / argmin of dif, earliest sample on ties. Requires a non-empty series.
KeyTimes FindKeyTimes(const ScoreSeries &series);

// Key times within the first sixth of the elapsed span move to the first
// sample, within the last sixth to the last sample. Exactly one sixth stays.
KeyTimes SnapKeyTimes(const ScoreSeries &series, const KeyTimes &kt);

enum class TrendLabel {
  kSteadyLead,
  kSteadyTrail,
  kStalemate,
  kOvertakenThenReduce,
  kReboundThenReduce,
  kExpandAdvOvertakenNarrowDisadv,   // case 1
  kExpandDisadvOvertakeNarrowAdv,    // case 2
  kNarrowDisadvExpandDisadvNarrowDisadv,  // case 3
  kExpandDisadvNarrowDisadvExpandDisadv,  // case 4
  kExpandAdvNarrowAdvExpandAdv,      // case 5
  kNarrowAdvExpandAdvNarrowAdv,      // case 6
};

const std::vector<TrendLabel> &AllTrendLabels();
std::string_view TrendLabelName(TrendLabel label);
std::optional<TrendLabel> TrendLabelFromName(std::string_view name);
// The label seen from the other team's side.
TrendLabel MirrorLabel(TrendLabel label);

// Phase of a single segment, from the home team's point of view.
enum class Phase {
  kSteadyLead,
  kSteadyTrail,
  kStalemate,
  kExpandAdvantage,
  kNarrowAdvantage,
  kExpandDisadvantage,
  kNarrowDisadvantage,
  kOvertake,
  kOvertaken,
};

std::string_view PhaseName(Phase phase);

struct Segment {
  size_t start = 0;  // inclusive sample indices
  size_t end = 0;
  TrendLabel label = TrendLabel::kStalemate;  // label of the whole scope
  Phase phase = Phase::kStalemate;

  bool operator==(const Segment &) const = default;
};

struct Segmentation {
  KeyTimes raw;
  KeyTimes snapped;
  std::vector<Segment> segments;
};

Segmentation SegmentSeries(const ScoreSeries &series, const KeeConfig &config = {});

enum class KeyEventKind {
  kHighestScore,
  kConsecutivePoints,
  kSignificantScore1,
  kSignificantScore2,  // reserved
  kSignificantScore3,  // reserved
  kSignificantScore4,
  kKeyRebound,
  kMostTurnovers,
  kMostIronShots,
  kOffensiveHighlight,
  kKeyTimeout,
};

const std::vector<KeyEventKind> &AllKeyEventKinds();
// Kinds the extractor can emit (everything except the reserved slots).
const std::vector<KeyEventKind> &EmittedKeyEventKinds();
std::string_view KeyEventKindName(KeyEventKind kind);
std::optional<KeyEventKind> KeyEventKindFromName(std::string_view name);

struct KeyEvent {
  std::string player;  // empty for team events
  std::string team;
  KeyEventKind kind = KeyEventKind::kHighestScore;
  int result = 0;      // points or count
  double time = 0;     // elapsed seconds
  int quarter = 0;
  size_t segment = 0;  // index into the scope's segments
  int score_home = 0;
  int score_away = 0;

  bool operator==(const KeyEvent &) const = default;
};

// Key events of one scope. With a KG, events whose team or player is not
// on the KG roster are dropped.
std::vector<KeyEvent> ExtractKeyEvents(const GameLog &log, const ScoreSeries &series,
                                       const std::vector<Segment> &segments,
                                       const KeeConfig &config = {},
                                       const KnowledgeGraph *kg = nullptr);

struct ScopeAnalysis {
  ScoreSeries series;
  Segmentation segmentation;
  std::vector<KeyEvent> events;
};

// Per quarter by default; one scope when whole_game is set.
std::vector<ScopeAnalysis> AnalyzeGame(const GameLog &log, const KeeConfig &config = {},
                                       bool whole_game = false,
                                       const KnowledgeGraph *kg = nullptr);

nlohmann::json ToJson(const ScoreSeries &series, const Segmentation &segmentation);
nlohmann::json ToJson(const KeyEvent &event);
nlohmann::json ToJson(const std::vector<ScopeAnalysis> &analysis, bool with_events);

}  // namespace kgnews

#endif  // KGNEWS_KEE_H_
