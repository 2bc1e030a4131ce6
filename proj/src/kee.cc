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
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "kgnews/error.h"
#include "kgnews/kg_store.h"

namespace kgnews {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<TrendLabel, std::string_view>, 11> kTrendNames = {{
    {TrendLabel::kSteadyLead, "STEADY_LEAD"},
    {TrendLabel::kSteadyTrail, "STEADY_TRAIL"},
    {TrendLabel::kStalemate, "STALEMATE"},
    {TrendLabel::kOvertakenThenReduce, "OVERTAKEN_THEN_REDUCE"},
    {TrendLabel::kReboundThenReduce, "REBOUND_THEN_REDUCE"},
    {TrendLabel::kExpandAdvOvertakenNarrowDisadv, "EXPAND_ADV_OVERTAKEN_NARROW_DISADV"},
    {TrendLabel::kExpandDisadvOvertakeNarrowAdv, "EXPAND_DISADV_OVERTAKE_NARROW_ADV"},
    {TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv,
     "NARROW_DISADV_EXPAND_DISADV_NARROW_DISADV"},
    {TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv,
     "EXPAND_DISADV_NARROW_DISADV_EXPAND_DISADV"},
    {TrendLabel::kExpandAdvNarrowAdvExpandAdv, "EXPAND_ADV_NARROW_ADV_EXPAND_ADV"},
    {TrendLabel::kNarrowAdvExpandAdvNarrowAdv, "NARROW_ADV_EXPAND_ADV_NARROW_ADV"},
}};

constexpr std::array<std::pair<KeyEventKind, std::string_view>, 11> kKindNames = {{
    {KeyEventKind::kHighestScore, "HIGHEST_SCORE"},
    {KeyEventKind::kConsecutivePoints, "CONSECUTIVE_POINTS"},
    {KeyEventKind::kSignificantScore1, "SIGNIFICANT_SCORE_1"},
    {KeyEventKind::kSignificantScore2, "SIGNIFICANT_SCORE_2"},
    {KeyEventKind::kSignificantScore3, "SIGNIFICANT_SCORE_3"},
    {KeyEventKind::kSignificantScore4, "SIGNIFICANT_SCORE_4"},
    {KeyEventKind::kKeyRebound, "KEY_REBOUND"},
    {KeyEventKind::kMostTurnovers, "MOST_TURNOVERS"},
    {KeyEventKind::kMostIronShots, "MOST_IRON_SHOTS"},
    {KeyEventKind::kOffensiveHighlight, "OFFENSIVE_HIGHLIGHT"},
    {KeyEventKind::kKeyTimeout, "KEY_TIMEOUT"},
}};

// Phases of the three-segment composites, in time order.
std::array<Phase, 3> CompositePhases(TrendLabel label) {
  switch (label) {
    case TrendLabel::kExpandAdvOvertakenNarrowDisadv:
      return {Phase::kExpandAdvantage, Phase::kOvertaken, Phase::kNarrowDisadvantage};
    case TrendLabel::kExpandDisadvOvertakeNarrowAdv:
      return {Phase::kExpandDisadvantage, Phase::kOvertake, Phase::kNarrowAdvantage};
    case TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv:
      return {Phase::kNarrowDisadvantage, Phase::kExpandDisadvantage,
              Phase::kNarrowDisadvantage};
    case TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv:
      return {Phase::kExpandDisadvantage, Phase::kNarrowDisadvantage,
              Phase::kExpandDisadvantage};
    case TrendLabel::kExpandAdvNarrowAdvExpandAdv:
      return {Phase::kExpandAdvantage, Phase::kNarrowAdvantage, Phase::kExpandAdvantage};
    case TrendLabel::kNarrowAdvExpandAdvNarrowAdv:
      return {Phase::kNarrowAdvantage, Phase::kExpandAdvantage, Phase::kNarrowAdvantage};
    default:
      throw Error(ErrorCode::kInvalidArgument, "not a three-segment label");
  }
}

}  // namespace

void KeeConfig::Validate() const {
  if (range_threshold <= 0 || steady_threshold <= 0 || consecutive_points <= 0 ||
      !(drought_seconds > 0) || rebound_window <= 0 || timeout_window <= 0) {
    throw Error(ErrorCode::kConfig, "kee thresholds must be positive");
  }
}

json KeeConfig::ToJson() const {
  return {{"range_threshold", range_threshold},
          {"steady_threshold", steady_threshold},
          {"consecutive_points", consecutive_points},
          {"drought_seconds", drought_seconds},
          {"rebound_window", rebound_window},
          {"timeout_window", timeout_window}};
}

KeeConfig KeeConfig::FromJson(const json &j) {
  KeeConfig c;
  c.range_threshold = j.value("range_threshold", c.range_threshold);
  c.steady_threshold = j.value("steady_threshold", c.steady_threshold);
  c.consecutive_points = j.value("consecutive_points", c.consecutive_points);
  c.drought_seconds = j.value("drought_seconds", c.drought_seconds);
  c.rebound_window = j.value("rebound_window", c.rebound_window);
  c.timeout_window = j.value("timeout_window", c.timeout_window);
  c.Validate();
  return c;
}

ScoreSeries ScoreDiffSeries(const GameLog &log, int quarter) {
  ScoreSeries s;
  s.quarter = quarter;
  s.home_team = log.home_team;
  s.away_team = log.away_team;
  s.scope_start = quarter > 0 ? (quarter - 1) * log.quarter_length : 0;
  bool first = true;
  for (size_t i = 0; i < log.events.size(); ++i) {
    const PlayEvent &e = log.events[i];
    if (quarter > 0 && e.quarter != quarter) {
      if (e.quarter < quarter) {
        s.baseline_dif = e.score_home - e.score_away;
      }
      continue;
    }
    if (first && i > 0 && quarter > 0) {
      const PlayEvent &prev = log.events[i - 1];
      s.baseline_dif = prev.score_home - prev.score_away;
    }
    first = false;
    s.samples.push_back({ToElapsed(e, log.quarter_length), e.score_home - e.score_away, i});
  }
  if (s.samples.empty()) {
    throw Error(ErrorCode::kEmptyScope,
                quarter > 0 ? "no events in quarter " + std::to_string(quarter)
                            : std::string("game log has no events"));
  }
  return s;
}

ScoreSeries MakeSeries(const std::vector<double> &times, const std::vector<int> &difs) {
  if (times.size() != difs.size()) {
    throw Error(ErrorCode::kLengthMismatch, "times and difs differ in length");
  }
  if (times.empty()) throw Error(ErrorCode::kEmptyScope, "empty series");
  ScoreSeries s;
  s.home_team = "home";
  s.away_team = "away";
  s.scope_start = times.front();
  for (size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && times[i] < times[i - 1]) {
      throw Error(ErrorCode::kClockRegression, "series times must not decrease");
    }
    s.samples.push_back({times[i], difs[i], i});
  }
  return s;
}

ScoreSeries Mirror(const ScoreSeries &series) {
  ScoreSeries m = series;
  std::swap(m.home_team, m.away_team);
  m.baseline_dif = -m.baseline_dif;
  for (auto &s : m.samples) s.dif = -s.dif;
  return m;
}

KeyTimes FindKeyTimes(const ScoreSeries &series) {
  if (series.samples.empty()) throw Error(ErrorCode::kEmptyScope, "empty series");
  KeyTimes kt;
  for (size_t i = 1; i < series.samples.size(); ++i) {
    if (series.samples[i].dif > series.samples[kt.max_index].dif) kt.max_index = i;
    if (series.samples[i].dif < series.samples[kt.min_index].dif) kt.min_index = i;
  }
  return kt;
}

KeyTimes SnapKeyTimes(const ScoreSeries &series, const KeyTimes &kt) {
  const auto &s = series.samples;
  const size_t last = s.size() - 1;
  const double t0 = s.front().time;
  const double tn = s.back().time;
  const double span = tn - t0;
  auto snap = [&](size_t index, bool &flag) {
    const double t = s[index].time;
    if (6 * (t - t0) < span) {
      flag = true;
      return size_t{0};
    }
    if (6 * (tn - t) < span) {
      flag = true;
      return last;
    }
    return index;
  };
  KeyTimes out;
  out.max_index = snap(kt.max_index, out.max_snapped);
  out.min_index = snap(kt.min_index, out.min_snapped);
  return out;
}

Segmentation SegmentSeries(const ScoreSeries &series, const KeeConfig &config) {
  Segmentation out;
  out.raw = FindKeyTimes(series);
  out.snapped = SnapKeyTimes(series, out.raw);
  const auto &s = series.samples;
  const size_t last = s.size() - 1;
  const int hi = s[out.raw.max_index].dif;
  const int lo = s[out.raw.min_index].dif;
  const bool wide = hi - lo > config.range_threshold;
  // Samples sharing one instant have no elapsed span to split.
  const bool degenerate = s.back().time == s.front().time;
  const int snapped = out.snapped.max_snapped + out.snapped.min_snapped;

  if (!wide || snapped == 2 || degenerate) {
    TrendLabel label;
    if (lo > config.steady_threshold) {
      label = TrendLabel::kSteadyLead;
    } else if (hi < -config.steady_threshold) {
      label = TrendLabel::kSteadyTrail;
    } else if (hi > 0 && lo < 0) {
      label = TrendLabel::kStalemate;
    } else {
      long long sum = 0;
      for (const auto &x : s) sum += x.dif;
      label = sum > 0 ? TrendLabel::kSteadyLead
                      : sum < 0 ? TrendLabel::kSteadyTrail : TrendLabel::kStalemate;
    }
    const Phase phase = label == TrendLabel::kSteadyLead    ? Phase::kSteadyLead
                        : label == TrendLabel::kSteadyTrail ? Phase::kSteadyTrail
                                                            : Phase::kStalemate;
    out.segments.push_back({0, last, label, phase});
    return out;
  }

  if (snapped == 1) {
    // The surviving interior key time is the turning point.
    if (!out.snapped.min_snapped) {
      const size_t k = out.snapped.min_index;
      const auto label = TrendLabel::kOvertakenThenReduce;
      out.segments.push_back({0, k, label, Phase::kOvertaken});
      out.segments.push_back({k + 1, last, label, Phase::kNarrowDisadvantage});
    } else {
      const size_t k = out.snapped.max_index;
      const auto label = TrendLabel::kReboundThenReduce;
      out.segments.push_back({0, k, label, Phase::kOvertake});
      out.segments.push_back({k + 1, last, label, Phase::kNarrowAdvantage});
    }
    return out;
  }

  const bool max_first = out.raw.max_index < out.raw.min_index;
  TrendLabel label;
  if (hi > 0 && lo < 0) {
    label = max_first ? TrendLabel::kExpandAdvOvertakenNarrowDisadv
                      : TrendLabel::kExpandDisadvOvertakeNarrowAdv;
  } else if (hi <= 0) {
    label = max_first ? TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv
                      : TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv;
  } else {
    label = max_first ? TrendLabel::kExpandAdvNarrowAdvExpandAdv
                      : TrendLabel::kNarrowAdvExpandAdvNarrowAdv;
  }
  const size_t a = std::min(out.raw.max_index, out.raw.min_index);
  const size_t b = std::max(out.raw.max_index, out.raw.min_index);
  const auto phases = CompositePhases(label);
  out.segments.push_back({0, a, label, phases[0]});
  out.segments.push_back({a + 1, b, label, phases[1]});
  out.segments.push_back({b + 1, last, label, phases[2]});
  return out;
}

const std::vector<TrendLabel> &AllTrendLabels() {
  static const std::vector<TrendLabel> all = [] {
    std::vector<TrendLabel> v;
    for (const auto &[l, _] : kTrendNames) v.push_back(l);
    return v;
  }();
  return all;
}

std::string_view TrendLabelName(TrendLabel label) {
  for (const auto &[l, n] : kTrendNames) {
    if (l == label) return n;
  }
  return "UNKNOWN";
}

std::optional<TrendLabel> TrendLabelFromName(std::string_view name) {
  for (const auto &[l, n] : kTrendNames) {
    if (n == name) return l;
  }
  return std::nullopt;
}

TrendLabel MirrorLabel(TrendLabel label) {
  switch (label) {
    case TrendLabel::kSteadyLead: return TrendLabel::kSteadyTrail;
    case TrendLabel::kSteadyTrail: return TrendLabel::kSteadyLead;
    case TrendLabel::kStalemate: return TrendLabel::kStalemate;
    case TrendLabel::kOvertakenThenReduce: return TrendLabel::kReboundThenReduce;
    case TrendLabel::kReboundThenReduce: return TrendLabel::kOvertakenThenReduce;
    case TrendLabel::kExpandAdvOvertakenNarrowDisadv:
      return TrendLabel::kExpandDisadvOvertakeNarrowAdv;
    case TrendLabel::kExpandDisadvOvertakeNarrowAdv:
      return TrendLabel::kExpandAdvOvertakenNarrowDisadv;
    case TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv:
      return TrendLabel::kNarrowAdvExpandAdvNarrowAdv;
    case TrendLabel::kNarrowAdvExpandAdvNarrowAdv:
      return TrendLabel::kNarrowDisadvExpandDisadvNarrowDisadv;
    case TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv:
      return TrendLabel::kExpandAdvNarrowAdvExpandAdv;
    case TrendLabel::kExpandAdvNarrowAdvExpandAdv:
      return TrendLabel::kExpandDisadvNarrowDisadvExpandDisadv;
  }
  return label;
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kSteadyLead: return "STEADY_LEAD";
    case Phase::kSteadyTrail: return "STEADY_TRAIL";
    case Phase::kStalemate: return "STALEMATE";
    case Phase::kExpandAdvantage: return "EXPAND_ADVANTAGE";
    case Phase::kNarrowAdvantage: return "NARROW_ADVANTAGE";
    case Phase::kExpandDisadvantage: return "EXPAND_DISADVANTAGE";
    case Phase::kNarrowDisadvantage: return "NARROW_DISADVANTAGE";
    case Phase::kOvertake: return "OVERTAKE";
    case Phase::kOvertaken: return "OVERTAKEN";
  }
  return "UNKNOWN";
}

const std::vector<KeyEventKind> &AllKeyEventKinds() {
  static const std::vector<KeyEventKind> all = [] {
    std::vector<KeyEventKind> v;
    for (const auto &[k, _] : kKindNames) v.push_back(k);
    return v;
  }();
  return all;
}

const std::vector<KeyEventKind> &EmittedKeyEventKinds() {
  static const std::vector<KeyEventKind> emitted = [] {
    std::vector<KeyEventKind> v;
    for (const auto &[k, _] : kKindNames) {
      if (k != KeyEventKind::kSignificantScore2 && k != KeyEventKind::kSignificantScore3) {
        v.push_back(k);
      }
    }
    return v;
  }();
  return emitted;
}

std::string_view KeyEventKindName(KeyEventKind kind) {
  for (const auto &[k, n] : kKindNames) {
    if (k == kind) return n;
  }
  return "UNKNOWN";
}

std::optional<KeyEventKind> KeyEventKindFromName(std::string_view name) {
  for (const auto &[k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

namespace {

// Event-level view of one scope used by the extractor.
class ScopeView {
 public:
  ScopeView(const GameLog &log, const ScoreSeries &series)
      : log_(log), series_(series) {}

  size_t size() const { return series_.samples.size(); }
  const PlayEvent &event(size_t i) const { return log_.events[series_.samples[i].event]; }
  double time(size_t i) const { return series_.samples[i].time; }
  int dif(size_t i) const { return series_.samples[i].dif; }
  int dif_before(size_t i) const { return i == 0 ? series_.baseline_dif : dif(i - 1); }
  bool home(size_t i) const { return event(i).team == log_.home_team; }
  // Margin from the acting team's side.
  int margin(size_t i) const { return home(i) ? dif(i) : -dif(i); }
  int margin_before(size_t i) const { return home(i) ? dif_before(i) : -dif_before(i); }

  KeyEvent Make(size_t i, KeyEventKind kind, std::string player, std::string team,
                int result, size_t segment) const {
    const PlayEvent &e = event(i);
    return {std::move(player), std::move(team), kind, result, time(i),
            e.quarter,         segment,         e.score_home, e.score_away};
  }

 private:
  const GameLog &log_;
  const ScoreSeries &series_;
};

struct PlayerTally {
  int value = 0;
  double first = 0;
  size_t last = 0;
};

// Highest tally; ties go to the earliest first occurrence, then the name.
template <typename Map>
const typename Map::value_type *Leader(const Map &tallies) {
  const typename Map::value_type *best = nullptr;
  for (const auto &entry : tallies) {
    const auto &[key, t] = entry;
    if (t.value <= 0) continue;
    if (!best || t.value > best->second.value ||
        (t.value == best->second.value &&
         std::tie(t.first, key) < std::tie(best->second.first, best->first))) {
      best = &entry;
    }
  }
  return best;
}

int Sign(int x) { return (x > 0) - (x < 0); }

class Extractor {
 public:
  Extractor(const GameLog &log, const ScoreSeries &series,
            const std::vector<Segment> &segments, const KeeConfig &config)
      : log_(log), view_(log, series), series_(series), segments_(segments), config_(config) {}

  std::vector<KeyEvent> Run() {
    for (size_t s = 0; s < segments_.size(); ++s) {
      HighestScore(s);
      ConsecutivePoints(s);
      SignificantScores(s);
      SlumpEvents(s);
    }
    OffensiveHighlights();
    KeyTimeouts();
    return std::move(out_);
  }

 private:
  size_t SegmentOf(size_t i) const {
    for (size_t s = 0; s < segments_.size(); ++s) {
      if (i >= segments_[s].start && i <= segments_[s].end) return s;
    }
    return segments_.size() - 1;
  }

  void HighestScore(size_t s) {
    std::map<std::pair<std::string, std::string>, PlayerTally> points;
    for (size_t i = segments_[s].start; i <= segments_[s].end; ++i) {
      const PlayEvent &e = view_.event(i);
      if (!IsScoring(e.code) || !e.actor) continue;
      auto [it, fresh] = points.try_emplace({*e.actor, e.team});
      if (fresh) it->second.first = view_.time(i);
      it->second.value += e.points;
      it->second.last = i;
    }
    if (const auto *best = Leader(points)) {
      out_.push_back(view_.Make(best->second.last, KeyEventKind::kHighestScore,
                                best->first.first, best->first.second,
                                best->second.value, s));
    }
  }

  void ConsecutivePoints(size_t s) {
    for (const std::string &team : {log_.home_team, log_.away_team}) {
      std::optional<std::string> actor;
      int run = 0;
      size_t last = 0;
      auto flush = [&] {
        if (actor && run >= config_.consecutive_points) {
          out_.push_back(view_.Make(last, KeyEventKind::kConsecutivePoints, *actor, team, run, s));
        }
      };
      for (size_t i = segments_[s].start; i <= segments_[s].end; ++i) {
        const PlayEvent &e = view_.event(i);
        if (e.team != team || !IsScoring(e.code)) continue;
        if (e.actor && actor == e.actor) {
          run += e.points;
        } else {
          flush();
          actor = e.actor;
          run = e.actor ? e.points : 0;
        }
        last = i;
      }
      flush();
    }
  }

  void SignificantScores(size_t s) {
    std::set<size_t> rebounds;
    for (size_t i = segments_[s].start; i <= segments_[s].end; ++i) {
      const PlayEvent &e = view_.event(i);
      if (!IsScoring(e.code) || !e.actor) continue;
      const int before = view_.margin_before(i);
      const int after = view_.margin(i);
      const int floor = -config_.range_threshold;
      bool significant = false;
      if ((before < floor && after >= floor) || (before < 0 && after > 0)) {
        out_.push_back(view_.Make(i, KeyEventKind::kSignificantScore1, *e.actor, e.team,
                                  e.points, s));
        significant = true;
      }
      if (view_.time(i) - LastTeamScore(i, e.team) >= config_.drought_seconds) {
        out_.push_back(view_.Make(i, KeyEventKind::kSignificantScore4, *e.actor, e.team,
                                  e.points, s));
        significant = true;
      }
      if (!significant) continue;
      for (int back = 1; back <= config_.rebound_window; ++back) {
        if (i < segments_[s].start + back) break;
        const size_t j = i - back;
        const PlayEvent &r = view_.event(j);
        if (IsRebound(r.code) && r.team == e.team && r.actor) {
          if (rebounds.insert(j).second) {
            out_.push_back(view_.Make(j, KeyEventKind::kKeyRebound, *r.actor, r.team, 1, s));
          }
          break;
        }
      }
    }
  }

  // Time of the team's previous basket in scope, or the scope start.
  double LastTeamScore(size_t i, const std::string &team) const {
    for (size_t j = i; j-- > 0;) {
      const PlayEvent &e = view_.event(j);
      if (e.team == team && IsScoring(e.code)) return view_.time(j);
    }
    return series_.scope_start;
  }

  void SlumpEvents(size_t s) {
    const Segment &seg = segments_[s];
    const int start_dif = view_.dif_before(seg.start);
    const int end_dif = view_.dif(seg.end);
    for (const std::string &team : {log_.home_team, log_.away_team}) {
      const int sign = team == log_.home_team ? 1 : -1;
      const int m0 = sign * start_dif;
      const int m1 = sign * end_dif;
      if (!(m1 < m0 && m1 < 0)) continue;
      std::map<std::string, PlayerTally> turnovers, misses;
      for (size_t i = seg.start; i <= seg.end; ++i) {
        const PlayEvent &e = view_.event(i);
        if (e.team != team || !e.actor) continue;
        auto *tallies = IsTurnover(e.code) ? &turnovers : IsMiss(e.code) ? &misses : nullptr;
        if (!tallies) continue;
        auto [it, fresh] = tallies->try_emplace(*e.actor);
        if (fresh) it->second.first = view_.time(i);
        ++it->second.value;
        it->second.last = i;
      }
      if (const auto *best = Leader(turnovers)) {
        out_.push_back(view_.Make(best->second.last, KeyEventKind::kMostTurnovers,
                                  best->first, team, best->second.value, s));
      }
      if (const auto *best = Leader(misses)) {
        out_.push_back(view_.Make(best->second.last, KeyEventKind::kMostIronShots,
                                  best->first, team, best->second.value, s));
      }
    }
  }

  void OffensiveHighlights() {
    const KeyTimes kt = FindKeyTimes(series_);
    auto emit = [&](size_t k, const std::string &team) {
      const size_t s = SegmentOf(k);
      int points = 0;
      for (size_t i = segments_[s].start; i <= k; ++i) {
        const PlayEvent &e = view_.event(i);
        if (e.team == team && IsScoring(e.code)) points += e.points;
      }
      if (points > 0) {
        out_.push_back(view_.Make(k, KeyEventKind::kOffensiveHighlight, "", team, points, s));
      }
    };
    if (view_.dif(kt.max_index) > 0) emit(kt.max_index, log_.home_team);
    if (view_.dif(kt.min_index) < 0) emit(kt.min_index, log_.away_team);
  }

  void KeyTimeouts() {
    std::vector<size_t> scoring;
    for (size_t i = 0; i < view_.size(); ++i) {
      if (IsScoring(view_.event(i).code)) scoring.push_back(i);
    }
    const size_t window = static_cast<size_t>(config_.timeout_window);
    for (size_t i = 0; i < view_.size(); ++i) {
      const PlayEvent &e = view_.event(i);
      if (e.code != EventCode::kTimeout) continue;
      const auto split = std::lower_bound(scoring.begin(), scoring.end(), i);
      const size_t before = static_cast<size_t>(split - scoring.begin());
      const size_t after = scoring.size() - before;
      if (before == 0 || after == 0) continue;
      const size_t first = scoring[before - std::min(before, window)];
      const int slope_before = view_.dif(scoring[before - 1]) - view_.dif_before(first);
      const size_t end = scoring[before + std::min(after, window) - 1];
      const int slope_after = view_.dif(end) - view_.dif_before(scoring[before]);
      if (Sign(slope_before) * Sign(slope_after) < 0) {
        const int swing = e.team == log_.home_team ? slope_after : -slope_after;
        out_.push_back(view_.Make(i, KeyEventKind::kKeyTimeout, "", e.team, swing, SegmentOf(i)));
      }
    }
  }

  const GameLog &log_;
  ScopeView view_;
  const ScoreSeries &series_;
  const std::vector<Segment> &segments_;
  const KeeConfig &config_;
  std::vector<KeyEvent> out_;
};

bool OnRoster(const KnowledgeGraph &kg, const KeyEvent &e) {
  const auto team = kg.Resolve(e.team, EntityClass::kTeam);
  if (!team) return false;
  if (e.player.empty()) return true;
  const auto player = kg.Resolve(e.player, EntityClass::kPlayer);
  return player && kg.triples().count({*player, RelationType::kPlaysFor, *team}) > 0;
}

}  // namespace

std::vector<KeyEvent> ExtractKeyEvents(const GameLog &log, const ScoreSeries &series,
                                       const std::vector<Segment> &segments,
                                       const KeeConfig &config, const KnowledgeGraph *kg) {
  config.Validate();
  if (segments.empty() || segments.front().start != 0 ||
      segments.back().end + 1 != series.samples.size()) {
    throw Error(ErrorCode::kInvalidArgument, "segments do not cover the series");
  }
  std::vector<KeyEvent> events = Extractor(log, series, segments, config).Run();
  if (kg) {
    std::erase_if(events, [&](const KeyEvent &e) { return !OnRoster(*kg, e); });
  }
  std::stable_sort(events.begin(), events.end(), [](const KeyEvent &a, const KeyEvent &b) {
    return std::tie(a.time, a.kind, a.player) < std::tie(b.time, b.kind, b.player);
  });
  return events;
}

std::vector<ScopeAnalysis> AnalyzeGame(const GameLog &log, const KeeConfig &config,
                                       bool whole_game, const KnowledgeGraph *kg) {
  config.Validate();
  std::vector<int> scopes;
  if (whole_game) {
    scopes.push_back(0);
  } else {
    std::set<int> quarters;
    for (const auto &e : log.events) quarters.insert(e.quarter);
    scopes.assign(quarters.begin(), quarters.end());
  }
  if (scopes.empty()) throw Error(ErrorCode::kEmptyScope, "game log has no events");
  std::vector<ScopeAnalysis> out;
  for (int q : scopes) {
    ScopeAnalysis a;
    a.series = ScoreDiffSeries(log, q);
    a.segmentation = SegmentSeries(a.series, config);
    a.events = ExtractKeyEvents(log, a.series, a.segmentation.segments, config, kg);
    out.push_back(std::move(a));
  }
  return out;
}

json ToJson(const ScoreSeries &series, const Segmentation &seg) {
  json segments = json::array();
  for (const auto &s : seg.segments) {
    segments.push_back({{"start", s.start},
                        {"end", s.end},
                        {"start_time", series.samples[s.start].time},
                        {"end_time", series.samples[s.end].time},
                        {"phase", PhaseName(s.phase)}});
  }
  auto key = [&](size_t raw, size_t snapped, bool flag) {
    return json{{"index", raw},
                {"dif", series.samples[raw].dif},
                {"time", series.samples[raw].time},
                {"snapped", flag},
                {"snapped_index", snapped}};
  };
  return {{"quarter", series.quarter},
          {"home_team", series.home_team},
          {"away_team", series.away_team},
          {"final_dif", series.samples.back().dif},
          {"label", TrendLabelName(seg.segments.front().label)},
          {"key_time_1", key(seg.raw.max_index, seg.snapped.max_index, seg.snapped.max_snapped)},
          {"key_time_2", key(seg.raw.min_index, seg.snapped.min_index, seg.snapped.min_snapped)},
          {"segments", segments}};
}

json ToJson(const KeyEvent &e) {
  return {{"kind", KeyEventKindName(e.kind)},
          {"player", e.player},
          {"team", e.team},
          {"result", e.result},
          {"time", e.time},
          {"quarter", e.quarter},
          {"segment", e.segment},
          {"score", std::to_string(e.score_home) + ":" + std::to_string(e.score_away)}};
}

json ToJson(const std::vector<ScopeAnalysis> &analysis, bool with_events) {
  json scopes = json::array();
  for (const auto &a : analysis) {
    json j = ToJson(a.series, a.segmentation);
    if (with_events) {
      json events = json::array();
      for (const auto &e : a.events) events.push_back(ToJson(e));
      j["key_events"] = events;
    }
    scopes.push_back(std::move(j));
  }
  return {{"scopes", scopes}};
}

}  // namespace kgnews
