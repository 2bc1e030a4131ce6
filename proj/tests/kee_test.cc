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


#include "kgnews/kee.h"

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "kgnews/broadcast.h"
#include "kgnews/error.h"
#include "kgnews/kg_store.h"
#include "test_util.h"

namespace kgnews {
namespace {

ScoreSeries Steps(const std::vector<int> &difs) {
  std::vector<double> times;
  for (size_t i = 0; i < difs.size(); ++i) times.push_back(static_cast<double>(i));
  return MakeSeries(times, difs);
}

GameLog Parse(const std::string &rows, const std::string &home = "A") {
  std::istringstream in("quarter,time,team,event,score\n" + rows);
  ParseOptions options;
  options.home_team = home;
  return ParseBroadcast(in, BroadcastFormat::kCsv, options);
}

GameLog Fixture() {
  ParseOptions options;
  options.home_team = "Pelicans";
  return ReadBroadcastFile(testing::DataPath("games/pelicans_76ers.csv"), options);
}

const KeyEvent *Find(const std::vector<KeyEvent> &events, KeyEventKind kind,
                     const std::string &team = "") {
  for (const auto &e : events) {
    if (e.kind == kind && (team.empty() || e.team == team)) return &e;
  }
  return nullptr;
}

std::vector<KeyEvent> Extract(const GameLog &log, int quarter = 1,
                              const KnowledgeGraph *kg = nullptr) {
  const ScoreSeries series = ScoreDiffSeries(log, quarter);
  return ExtractKeyEvents(log, series, SegmentSeries(series).segments, {}, kg);
}

TEST_CASE("key times") {
  KeyTimes kt = FindKeyTimes(Steps({0, 5, -3}));
  CHECK(kt.max_index == 1);
  CHECK(kt.min_index == 2);
  kt = FindKeyTimes(Steps({4, 4, 4}));
  CHECK(kt.max_index == 0);
  CHECK(kt.min_index == 0);
  kt = FindKeyTimes(Steps({7}));
  CHECK(kt.max_index == 0);
  CHECK(kt.min_index == 0);
  CHECK_THROWS_AS(FindKeyTimes(ScoreSeries{}), Error);
}

TEST_CASE("snapping by sixths of the scope") {
  // Span 600 s: the first sixth ends at 100, the last begins at 500.
  const std::vector<double> times = {0, 30, 99, 100, 300, 500, 501, 600};
  const ScoreSeries s = MakeSeries(times, {0, 0, 0, 0, 0, 0, 0, 0});
  auto snap = [&](size_t i) {
    KeyTimes kt;
    kt.max_index = kt.min_index = i;
    return SnapKeyTimes(s, kt);
  };
  CHECK(snap(1).max_index == 0);
  CHECK(snap(1).max_snapped);
  CHECK(snap(2).max_index == 0);
  CHECK(snap(3).max_index == 3);
  CHECK_FALSE(snap(3).max_snapped);
  CHECK(snap(4).max_index == 4);
  CHECK(snap(5).min_index == 5);
  CHECK_FALSE(snap(5).min_snapped);
  CHECK(snap(6).min_index == 7);
  CHECK(snap(6).min_snapped);
}

struct LabelCase {
  std::vector<int> difs;
  TrendLabel label;
  std::vector<std::pair<size_t, size_t>> spans;
};

TEST_CASE("one example per trend label") {
  const LabelCase cases[] = {
      {{12, 14, 15, 13, 12}, TrendLabel::kSteadyLead, {{0, 4}}},
      {{-12, -14, -15, -13, -12}, TrendLabel::kSteadyTrail, {{0, 4}}},
      {{-3, 2, -1, 3}, TrendLabel::kStalemate, {{0, 3}}},
      {{0, 1, 2, 3}, TrendLabel::kSteadyLead, {{0, 3}}},
      {{0, 0, 0}, TrendLabel::kStalemate, {{0, 2}}},
      {{2, 0, -2, -4, -6, -8, -10, -8, -6, -5, -4}, TrendLabel::kOvertakenThenReduce,
       {{0, 6}, {7, 10}}},
      {{-2, 0, 2, 4, 6, 8, 10, 8, 6, 5, 4}, TrendLabel::kReboundThenReduce,
       {{0, 6}, {7, 10}}},
      {{0, 3, 6, 2, -2, -6, -4, -3, -3, -3, -3}, TrendLabel::kExpandAdvOvertakenNarrowDisadv,
       {{0, 2}, {3, 5}, {6, 10}}},
      {{0, -3, -6, -2, 2, 6, 4, 3, 3, 3, 3}, TrendLabel::kExpandDisadvOvertakeNarrowAdv,
       {{0, 2}, {3, 5}, {6, 10}}},
      {{-6, -4, -1, -5, -9, -12, -8, -7, -7, -7, -7},
       TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv, {{0, 2}, {3, 5}, {6, 10}}},
      {{-3, -6, -12, -8, -4, -1, -5, -6, -6, -6, -6},
       TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv, {{0, 2}, {3, 5}, {6, 10}}},
      {{3, 6, 12, 8, 4, 1, 5, 6, 6, 6, 6}, TrendLabel::kExpandAdvNarrowAdvExpandAdv,
       {{0, 2}, {3, 5}, {6, 10}}},
      {{6, 4, 1, 5, 9, 12, 8, 7, 7, 7, 7}, TrendLabel::kNarrowAdvExpandAdvNarrowAdv,
       {{0, 2}, {3, 5}, {6, 10}}},
  };
  std::set<TrendLabel> seen;
  for (const auto &c : cases) {
    CAPTURE(TrendLabelName(c.label));
    const ScoreSeries s = Steps(c.difs);
    const Segmentation seg = SegmentSeries(s);
    REQUIRE(seg.segments.size() == c.spans.size());
    for (size_t i = 0; i < c.spans.size(); ++i) {
      CHECK(seg.segments[i].label == c.label);
      CHECK(seg.segments[i].start == c.spans[i].first);
      CHECK(seg.segments[i].end == c.spans[i].second);
    }
    // Swapping home and away mirrors the label and keeps the boundaries.
    const Segmentation mirrored = SegmentSeries(Mirror(s));
    REQUIRE(mirrored.segments.size() == seg.segments.size());
    for (size_t i = 0; i < seg.segments.size(); ++i) {
      CHECK(mirrored.segments[i].label == MirrorLabel(c.label));
      CHECK(mirrored.segments[i].end == seg.segments[i].end);
    }
    seen.insert(c.label);
  }
  CHECK(seen.size() == AllTrendLabels().size());
}

TEST_CASE("thresholds come from the config") {
  const ScoreSeries s = Steps({2, 0, -2, -4, -6, -8, -10, -8, -6, -5, -4});
  KeeConfig wide;
  wide.range_threshold = 20;
  CHECK(SegmentSeries(s, wide).segments.size() == 1);
  KeeConfig bad;
  bad.range_threshold = 0;
  CHECK_THROWS_AS(bad.Validate(), Error);
  CHECK(KeeConfig::FromJson(KeeConfig{}.ToJson()).ToJson() == KeeConfig{}.ToJson());
}

TEST_CASE("label names round trip and mirroring is an involution") {
  for (TrendLabel l : AllTrendLabels()) {
    CHECK(TrendLabelFromName(TrendLabelName(l)) == l);
    CHECK(MirrorLabel(MirrorLabel(l)) == l);
  }
  CHECK(MirrorLabel(TrendLabel::kStalemate) == TrendLabel::kStalemate);
  CHECK(AllKeyEventKinds().size() == 11);
  for (KeyEventKind k : AllKeyEventKinds()) {
    CHECK(KeyEventKindFromName(KeyEventKindName(k)) == k);
  }
}

TEST_CASE("score difference series") {
  const GameLog log = Fixture();
  const ScoreSeries q1 = ScoreDiffSeries(log, 1);
  CHECK(q1.samples.back().dif == -15);
  CHECK(q1.samples.front().time == 16);
  CHECK(q1.home_team == "Pelicans");
  for (const auto &sample : q1.samples) {
    const PlayEvent &e = log.events[sample.event];
    CHECK(sample.dif == e.score_home - e.score_away);
  }
  const ScoreSeries game = ScoreDiffSeries(log, 0);
  CHECK(game.samples.size() == log.events.size());
  CHECK_THROWS_AS(ScoreDiffSeries(log, 9), Error);

  const GameLog quiet = Parse(
      "Q1,11:00,A,Al One misses a two-pointer,0:0\n"
      "Q1,10:00,B,Bob Two misses a three-pointer,0:0\n");
  for (const auto &sample : ScoreDiffSeries(quiet, 1).samples) CHECK(sample.dif == 0);

  GameLog other = log;
  std::swap(other.home_team, other.away_team);
  for (auto &e : other.events) std::swap(e.score_home, e.score_away);
  const ScoreSeries q1_swapped = ScoreDiffSeries(other, 1);
  REQUIRE(q1_swapped.samples.size() == q1.samples.size());
  for (size_t i = 0; i < q1.samples.size(); ++i) {
    CHECK(q1_swapped.samples[i].dif == -q1.samples[i].dif);
  }
}

TEST_CASE("fixture first quarter") {
  const GameLog log = Fixture();
  const ScoreSeries q1 = ScoreDiffSeries(log, 1);
  const Segmentation seg = SegmentSeries(q1);
  REQUIRE(seg.segments.size() == 2);
  CHECK(seg.segments[0].label == TrendLabel::kOvertakenThenReduce);
  CHECK(q1.samples[seg.raw.max_index].dif == 2);
  CHECK(q1.samples[seg.raw.min_index].dif == -16);
  CHECK(seg.snapped.max_snapped);
  CHECK_FALSE(seg.snapped.min_snapped);

  const auto events = ExtractKeyEvents(log, q1, seg.segments);
  const KeyEvent *top = Find(events, KeyEventKind::kHighestScore, "76ers");
  REQUIRE(top != nullptr);
  CHECK(top->player == "Joel Embiid");
  CHECK(top->result == 13);
  CHECK(top->segment == 0);

  // Oracle: 76ers points up to and including the low point.
  int points = 0;
  for (size_t i = 0; i <= seg.raw.min_index; ++i) {
    const PlayEvent &e = log.events[q1.samples[i].event];
    if (e.team == "76ers") points += e.points;
  }
  const KeyEvent *run = Find(events, KeyEventKind::kOffensiveHighlight, "76ers");
  REQUIRE(run != nullptr);
  CHECK(run->result == points);
  CHECK(std::is_sorted(events.begin(), events.end(), [](const auto &a, const auto &b) {
    return a.time < b.time;
  }));
}

TEST_CASE("scoring events") {
  const GameLog log = Parse(
      "Q1,11:50,B,Bob Two makes a three-pointer,0:3\n"
      "Q1,11:40,B,Bob Two makes a three-pointer,0:6\n"
      "Q1,11:30,A,Al One misses a two-pointer,0:6\n"
      "Q1,11:28,B,Bo Four defensive rebound,0:6\n"
      "Q1,11:25,A,Al One makes a two-point field goal,2:6\n"
      "Q1,8:10,A,Al One misses a two-pointer,2:6\n"
      "Q1,8:05,A,Cy Three offensive rebound,2:6\n"
      "Q1,8:00,A,Al One makes a two-point field goal,4:6\n"
      "Q1,7:40,A,Cy Three makes a three-pointer,7:6\n");
  const auto events = Extract(log);

  const KeyEvent *top = Find(events, KeyEventKind::kHighestScore);
  REQUIRE(top != nullptr);
  CHECK(top->player == "Bob Two");
  CHECK(top->result == 6);

  const KeyEvent *run = Find(events, KeyEventKind::kConsecutivePoints);
  REQUIRE(run != nullptr);
  CHECK(run->player == "Bob Two");
  CHECK(run->result == 6);

  const KeyEvent *drought = Find(events, KeyEventKind::kSignificantScore4);
  REQUIRE(drought != nullptr);
  CHECK(drought->player == "Al One");
  CHECK(drought->time == 240);

  const KeyEvent *rebound = Find(events, KeyEventKind::kKeyRebound);
  REQUIRE(rebound != nullptr);
  CHECK(rebound->player == "Cy Three");

  const KeyEvent *go_ahead = Find(events, KeyEventKind::kSignificantScore1);
  REQUIRE(go_ahead != nullptr);
  CHECK(go_ahead->player == "Cy Three");
  CHECK(go_ahead->result == 3);

  const KeyEvent *home_run = Find(events, KeyEventKind::kOffensiveHighlight, "A");
  REQUIRE(home_run != nullptr);
  CHECK(home_run->result == 7);
  const KeyEvent *away_run = Find(events, KeyEventKind::kOffensiveHighlight, "B");
  REQUIRE(away_run != nullptr);
  CHECK(away_run->result == 6);

  CHECK(Find(events, KeyEventKind::kSignificantScore2) == nullptr);
  CHECK(Find(events, KeyEventKind::kSignificantScore3) == nullptr);
}

TEST_CASE("a timeout that reverses the trend") {
  const GameLog log = Parse(
      "Q1,11:00,A,Al One makes a two-point field goal,2:0\n"
      "Q1,10:00,A,Al One makes a two-point field goal,4:0\n"
      "Q1,9:00,A,Al One makes a two-point field goal,6:0\n"
      "Q1,8:50,B,B timeout,6:0\n"
      "Q1,8:00,B,Bob Two makes a two-point field goal,6:2\n"
      "Q1,7:00,B,Bob Two makes a two-point field goal,6:4\n"
      "Q1,6:00,B,Bob Two makes a two-point field goal,6:6\n");
  const auto events = Extract(log);
  const KeyEvent *timeout = Find(events, KeyEventKind::kKeyTimeout);
  REQUIRE(timeout != nullptr);
  CHECK(timeout->team == "B");
  CHECK(timeout->result == 6);
  CHECK(timeout->player.empty());
}

TEST_CASE("slumps are reported only for a team that fell behind") {
  const GameLog log = Parse(
      "Q1,11:00,A,Al One lost ball,0:0\n"
      "Q1,10:30,B,Bob Two makes a two-point field goal,0:2\n"
      "Q1,10:00,A,Al One misses a three-pointer,0:2\n"
      "Q1,9:30,A,Cy Three bad pass turnover,0:2\n"
      "Q1,9:00,A,Al One lost ball,0:2\n"
      "Q1,8:30,B,Bob Two makes a two-point field goal,0:4\n");
  const auto events = Extract(log);
  const KeyEvent *turnovers = Find(events, KeyEventKind::kMostTurnovers);
  REQUIRE(turnovers != nullptr);
  CHECK(turnovers->team == "A");
  CHECK(turnovers->player == "Al One");
  CHECK(turnovers->result == 2);
  const KeyEvent *misses = Find(events, KeyEventKind::kMostIronShots);
  REQUIRE(misses != nullptr);
  CHECK(misses->player == "Al One");
  CHECK(Find(events, KeyEventKind::kMostTurnovers, "B") == nullptr);
}

TEST_CASE("knowledge graph filters events by roster") {
  const KnowledgeGraph kg = KnowledgeGraph::Load(testing::DataPath("kg/fixture_kg.json"));
  const GameLog log = Fixture();
  const auto all = Extract(log);
  CHECK(Extract(log, 1, &kg) == all);

  const GameLog impostor = Parse(
      "Q1,11:00,Pelicans,LeBron James makes a three-pointer,3:0\n"
      "Q1,10:00,76ers,Joel Embiid makes a two-point field goal,3:2\n",
      "Pelicans");
  const auto filtered = Extract(impostor, 1, &kg);
  for (const auto &e : filtered) CHECK(e.player != "LeBron James");
  CHECK(Find(Extract(impostor), KeyEventKind::kHighestScore)->player == "LeBron James");
}

TEST_CASE("game analysis scopes") {
  const GameLog log = Fixture();
  CHECK(AnalyzeGame(log).size() == 4);
  const auto whole = AnalyzeGame(log, {}, true);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].series.quarter == 0);
  const auto json = ToJson(AnalyzeGame(log), true);
  CHECK(json["scopes"].size() == 4);
  CHECK(json["scopes"][0]["label"] == "OVERTAKEN_THEN_REDUCE");
}

}  // namespace
}  // namespace kgnews
