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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgnews/broadcast.h"
#include "kgnews/enricher.h"
#include "kgnews/error.h"
#include "kgnews/kee.h"
#include "kgnews/kg_store.h"
#include "kgnews/kgc_model.h"
#include "kgnews/kgc_train.h"
#include "kgnews/pipeline.h"
#include "kgnews/random.h"
#include "kgnews/rouge.h"
#include "kgnews/templater.h"
#include "test_util.h"

namespace kgnews {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::DataPath;
using testing::ReadText;

// Thrown by Expect; the message becomes the FAIL detail.
struct Failure {
  std::string what;
};

void Expect(bool ok, const std::string &what) {
  if (!ok) throw Failure{what};
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

PipelineConfig FixtureConfig() {
  PipelineConfig c;
  c.Apply(PipelineConfig::ReadIni(DataPath("config/example.ini")));
  return c;
}

// ---------------------------------------------------------------------------
// 1. Fixture quarter.

std::string FixtureQuarter() {
  const auto start = std::chrono::steady_clock::now();
  const PipelineConfig config = FixtureConfig();
  const GameLog log = ReadBroadcastFile(config.log, {config.home, config.away, config.game_id,
                                                     config.quarter_length});
  const ScoreSeries q1 = ScoreDiffSeries(log, 1);
  Expect(q1.samples.back().dif == -15,
         "final Q1 dif " + std::to_string(q1.samples.back().dif) + ", want -15");
  const Segmentation seg = SegmentSeries(q1, config.kee);
  Expect(q1.samples[seg.raw.min_index].dif == -16, "max deficit is not 16");
  const auto events = ExtractKeyEvents(log, q1, seg.segments, config.kee);
  bool embiid = false;
  for (const auto &e : events) {
    embiid |= e.kind == KeyEventKind::kHighestScore && e.player == "Joel Embiid" &&
              e.result == 13 && e.team == "76ers";
  }
  Expect(embiid, "no HIGHEST_SCORE{Joel Embiid, 13}");

  const Draft draft =
      ComposeDraft(log, AnalyzeGame(log, config.kee), LoadTemplates(config.templates),
                   {config.events_per_segment, config.seed});
  const std::string text = draft.paragraphs.at(0).text;
  for (const char *phrase : {"76ers", "leading by as many as 16 points", "Joel Embiid",
                             "with 13 points", "the 76ers led the Pelicans by 15 points"}) {
    Expect(text.find(phrase) != std::string::npos, std::string("missing '") + phrase + "'");
  }
  std::string golden = ReadText(DataPath("golden/q1_paragraph.txt"));
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  Expect(text == golden, "Q1 paragraph differs from the golden file");
  const double t = Seconds(start);
  Expect(t < 1.0, "took " + Fmt(t) + " s");
  return "dif -15, golden match, " + Fmt(t) + " s";
}

// ---------------------------------------------------------------------------
// 2-4. Segmentation.
//
// The oracle re-reads the rules with integer clock arithmetic in
// remaining-time coordinates (seconds until the end of the scope), so it
// shares no code or coordinate system with the library.

struct OracleSegment {
  size_t start, end;
  std::string label;
  bool operator==(const OracleSegment &) const = default;
};

std::vector<OracleSegment> Oracle(const std::vector<int> &times, const std::vector<int> &difs) {
  const size_t n = difs.size();
  const size_t last = n - 1;
  const int duration = times[last] - times[0];
  std::vector<int> remaining(n);
  for (size_t i = 0; i < n; ++i) remaining[i] = times[last] - times[i];

  size_t kt1 = 0, kt2 = 0;  // first occurrence of the maximum / minimum
  for (size_t i = 0; i < n; ++i) {
    if (difs[i] > difs[kt1]) kt1 = i;
    if (difs[i] < difs[kt2]) kt2 = i;
  }
  const int high = difs[kt1], low = difs[kt2];

  // First sixth of the span: more than five sixths still to play.
  auto in_first_sixth = [&](size_t i) { return 6 * remaining[i] > 5 * duration; };
  auto in_last_sixth = [&](size_t i) { return 6 * remaining[i] < duration; };
  const bool snap1 = in_first_sixth(kt1) || in_last_sixth(kt1);
  const bool snap2 = in_first_sixth(kt2) || in_last_sixth(kt2);

  if (duration == 0 || high - low <= 8 || (snap1 && snap2)) {
    std::string label;
    if (low > 10) {
      label = "STEADY_LEAD";
    } else if (high < -10) {
      label = "STEADY_TRAIL";
    } else if (high > 0 && low < 0) {
      label = "STALEMATE";
    } else {
      long long total = 0;
      for (int d : difs) total += d;
      label = total > 0 ? "STEADY_LEAD" : total < 0 ? "STEADY_TRAIL" : "STALEMATE";
    }
    return {{0, last, label}};
  }
  if (snap1 != snap2) {
    const size_t k = snap1 ? kt2 : kt1;
    const std::string label = snap1 ? "OVERTAKEN_THEN_REDUCE" : "REBOUND_THEN_REDUCE";
    return {{0, k, label}, {k + 1, last, label}};
  }
  // Narrative order: the extreme reached first opens the story.
  const bool max_first = kt1 < kt2;
  std::string label;
  if (high > 0 && low < 0) {
    label = max_first ? "EXPAND_ADV_OVERTAKEN_NARROW_DISADV" : "EXPAND_DISADV_OVERTAKE_NARROW_ADV";
  } else if (high <= 0) {
    label = max_first ? "NARROW_DISADV_EXPAND_DISADV_NARROW_DISADV"
                      : "EXPAND_DISADV_NARROW_DISADV_EXPAND_DISADV";
  } else {
    label = max_first ? "EXPAND_ADV_NARROW_ADV_EXPAND_ADV" : "NARROW_ADV_EXPAND_ADV_NARROW_ADV";
  }
  const size_t a = std::min(kt1, kt2), b = std::max(kt1, kt2);
  return {{0, a, label}, {a + 1, b, label}, {b + 1, last, label}};
}

struct RandomSeries {
  std::vector<int> times;
  std::vector<int> difs;
};

RandomSeries RandomWalk(Rng &rng) {
  RandomSeries s;
  const size_t n = 1 + UniformIndex(rng, 60);
  int t = static_cast<int>(UniformIndex(rng, 200));
  int d = static_cast<int>(UniformIndex(rng, 31)) - 15;
  const int step = 1 + static_cast<int>(UniformIndex(rng, 4));
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) {
      // Occasional shared timestamps, as in and-one plays.
      t += UniformIndex(rng, 8) == 0 ? 0 : 1 + static_cast<int>(UniformIndex(rng, 30));
      d += static_cast<int>(UniformIndex(rng, 2 * step + 1)) - step;
    }
    s.times.push_back(t);
    s.difs.push_back(d);
  }
  return s;
}

ScoreSeries ToSeries(const RandomSeries &r) {
  return MakeSeries(std::vector<double>(r.times.begin(), r.times.end()), r.difs);
}

std::string OracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(SubstreamSeed(2018, "acceptance.oracle"));
  std::map<std::string, int> labels;
  for (int i = 0; i < 1000; ++i) {
    const RandomSeries r = RandomWalk(rng);
    const Segmentation seg = SegmentSeries(ToSeries(r));
    std::vector<OracleSegment> got;
    for (const auto &s : seg.segments) {
      got.push_back({s.start, s.end, std::string(TrendLabelName(s.label))});
    }
    Expect(got == Oracle(r.times, r.difs), "series " + std::to_string(i) + " disagrees");
    ++labels[got.front().label];
  }
  const double t = Seconds(start);
  Expect(t < 10.0, "took " + Fmt(t) + " s");
  Expect(labels.size() == AllTrendLabels().size(),
         "only " + std::to_string(labels.size()) + " labels exercised");
  return "1000/1000 agree, all " + std::to_string(labels.size()) + " labels seen, " + Fmt(t) +
         " s";
}

std::string Invariants() {
  Rng rng(SubstreamSeed(2018, "acceptance.invariants"));
  int composite = 0;
  for (int i = 0; i < 10000; ++i) {
    const RandomSeries r = RandomWalk(rng);
    const ScoreSeries series = ToSeries(r);
    const Segmentation seg = SegmentSeries(series);
    const auto &segs = seg.segments;
    const std::string id = "series " + std::to_string(i);

    // Partition and coverage.
    Expect(!segs.empty() && segs.front().start == 0 &&
               segs.back().end == series.samples.size() - 1,
           id + ": segments do not cover the series");
    for (size_t k = 0; k < segs.size(); ++k) {
      Expect(segs[k].start <= segs[k].end, id + ": empty segment");
      if (k > 0) Expect(segs[k].start == segs[k - 1].end + 1, id + ": gap or overlap");
      Expect(segs[k].label == segs.front().label, id + ": mixed labels");
    }

    // Antisymmetry.
    const Segmentation mirrored = SegmentSeries(Mirror(series));
    Expect(mirrored.segments.size() == segs.size(), id + ": mirror changes segment count");
    for (size_t k = 0; k < segs.size(); ++k) {
      Expect(mirrored.segments[k].start == segs[k].start &&
                 mirrored.segments[k].end == segs[k].end,
             id + ": mirror moves a boundary");
      Expect(mirrored.segments[k].label == MirrorLabel(segs[k].label),
             id + ": mirror label mismatch");
    }

    // Totality of the three-segment selector.
    const int high = r.difs[seg.raw.max_index], low = r.difs[seg.raw.min_index];
    Expect(high >= low, id + ": max below min");
    const bool spread = r.times.back() > r.times.front() && high - low > 8;
    if (spread && !seg.snapped.max_snapped && !seg.snapped.min_snapped) {
      const bool max_first = seg.raw.max_index < seg.raw.min_index;
      const bool cases[6] = {max_first && high > 0 && low < 0, !max_first && high > 0 && low < 0,
                             max_first && high <= 0,           !max_first && high <= 0,
                             max_first && low >= 0,            !max_first && low >= 0};
      Expect(std::count(std::begin(cases), std::end(cases), true) == 1,
             id + ": case selector not total");
      Expect(segs.size() == 3, id + ": expected three segments");
      ++composite;
    }
  }
  return "10000 series, 0 failures (" + std::to_string(composite) + " three-segment)";
}

std::string Snapping() {
  // Span 60 s: the first sixth ends at 10 s, the last begins at 50 s.
  const std::vector<double> times = {0, 5, 9.999, 10, 30, 50, 50.001, 55, 60};
  auto key_at = [&](size_t i) {
    std::vector<int> difs(times.size(), 0);
    difs[i] = 20;
    difs[(i + 4) % times.size()] = -20;
    const ScoreSeries s = MakeSeries(times, difs);
    return SnapKeyTimes(s, FindKeyTimes(s));
  };
  const size_t last = times.size() - 1;
  struct Case {
    size_t index;
    size_t want;
    bool snapped;
  };
  const Case cases[] = {{0, 0, true},     {1, 0, true},        {2, 0, true},
                        {3, 3, false},    {4, 4, false},       {5, 5, false},
                        {6, last, true},  {7, last, true},     {8, last, true}};
  for (const Case &c : cases) {
    const KeyTimes kt = key_at(c.index);
    Expect(kt.max_index == c.want && kt.max_snapped == c.snapped,
           "key at t=" + Fmt(times[c.index]) + " snapped wrongly");
  }
  // Exactly-one-snapped series split at the interior key only.
  const ScoreSeries two = MakeSeries({0, 20, 30, 60}, {12, 2, -3, 1});
  const Segmentation seg = SegmentSeries(two);
  Expect(seg.segments.size() == 2 && seg.segments[0].end == 2,
         "two-segment split not at the interior key");
  return "9 boundary cases, first/last sixth snap, exact boundaries stay";
}

// ---------------------------------------------------------------------------
// 5-7. Completion model.

kgc::ModelConfig Tiny() {
  kgc::ModelConfig c;
  c.dim = 4;
  c.layers = 1;
  c.heads = 2;
  c.conv_channels = 2;
  return c;
}

std::string GradientCheck() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(SubstreamSeed(5, "acceptance.gradcheck"));
  const auto params = kgc::ModelParams::Init(Tiny(), rng);
  const auto emb = kgc::EmbeddingTable::Init({"a", "b", "c", "d", "e"}, 4, rng);
  const kgc::FewShotTask task{"r", {{"a", "b"}}, {{"c", "d"}}, {{"c", "e"}}};
  const auto r = kgc::GradCheck(params, emb, {task}, 1e-5);
  const double t = Seconds(start);
  Expect(r.max_relative_error <= 1e-4, "max relative error " + Fmt(r.max_relative_error) +
                                           " at " + r.worst);
  Expect(t < 5.0, "took " + Fmt(t) + " s");
  std::ostringstream out;
  out << "max rel err " << r.max_relative_error << " over " << r.coordinates
      << " coordinates, " << Fmt(t) << " s";
  return out.str();
}

std::string CompletionProperties() {
  Rng rng(SubstreamSeed(6, "acceptance.kgc"));
  // Score is a non-negative distance, zero exactly at h + r = t.
  for (int i = 0; i < 200; ++i) {
    const kgc::Matrix h = kgc::Matrix::NullaryExpr(1, 4, [&] { return UniformReal(rng, -2, 2); });
    const kgc::Matrix r = kgc::Matrix::NullaryExpr(1, 4, [&] { return UniformReal(rng, -2, 2); });
    kgc::Matrix t = kgc::Matrix::NullaryExpr(1, 4, [&] { return UniformReal(rng, -2, 2); });
    Expect(kgc::Score(h, r, t) > 0, "score not positive off the translation");
    t = h + r;
    Expect(kgc::Score(h, r, t) == 0, "score not zero at h + r = t");
  }

  const auto params = kgc::ModelParams::Init(Tiny(), rng);
  const auto emb = kgc::EmbeddingTable::Init({"a", "b", "c", "d", "e", "f"}, 4, rng);

  // Support duplication.
  const kgc::Matrix once = kgc::RelationMeta({{"a", "b"}, {"c", "d"}}, params, emb);
  const kgc::Matrix twice =
      kgc::RelationMeta({{"c", "d"}, {"a", "b"}, {"a", "b"}, {"c", "d"}}, params, emb);
  Expect((once - twice).cwiseAbs().maxCoeff() < 1e-12, "R_s changes under duplication");

  // Zero loss once every margin is met.
  kgc::FewShotTask task{"r", {{"a", "b"}}, {{"c", "d"}, {"e", "f"}}, {{"c", "f"}, {"e", "a"}}};
  auto score = [&](const kgc::EntityPair &p) {
    kgc::ModelGraph g(params, emb);
    const auto rs = g.RelationMeta(task.support);
    const auto r0 = g.InitialRelation(task.support);
    return g.tape().value(g.PairScore(p, rs, r0))(0, 0);
  };
  double gap = 1e9;
  for (size_t i = 0; i < task.queries.size(); ++i) {
    if (score(task.queries[i]) > score(task.negatives[i])) {
      std::swap(task.queries[i], task.negatives[i]);
    }
    gap = std::min(gap, score(task.negatives[i]) - score(task.queries[i]));
  }
  Expect(gap > 0, "degenerate task");
  auto satisfied = params;
  satisfied.config.margin = gap / 2;
  Expect(kgc::TaskLoss(task, satisfied, emb) == 0, "loss positive with margins met");
  auto unmet = params;
  unmet.config.margin = gap + 1;
  Expect(kgc::TaskLoss(task, unmet, emb) > 0, "hinge inactive below the margin");

  // Bit-identical loss curves.
  kgc::TrainOptions options;
  options.epochs = 10;
  options.seed = 99;
  options.negative_pool = emb.Ids();
  const auto one = kgc::Train({task}, params, emb, options);
  const auto two = kgc::Train({task}, params, emb, options);
  Expect(one.train_loss == two.train_loss, "loss curves differ");
  Expect(one.embeddings == two.embeddings, "trained embeddings differ");
  return "score >= 0 (=0 iff H+R=T), zero loss at margin, R_s duplication-invariant, "
         "identical curves";
}

std::string CycleSmoke() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  for (uint64_t seed : {1, 2, 3}) {
    kgc::CycleOptions options;
    options.train.seed = seed;
    const auto report = kgc::RunCycleBenchmark(options);
    Expect(report.hits_at_1 > 1.0 / 19, "seed " + std::to_string(seed) + " Hits@1 " +
                                            Fmt(report.hits_at_1));
    detail += (detail.empty() ? "" : ", ") + std::string("seed ") + std::to_string(seed) +
              " Hits@1 " + Fmt(report.hits_at_1);
  }
  const double t = Seconds(start);
  Expect(t < 60.0, "took " + Fmt(t) + " s");
  return detail + " (baseline 0.0526), " + Fmt(t) + " s";
}

// ---------------------------------------------------------------------------
// 8. ROUGE.

std::string RougeOracles() {
  const auto a = Tokenize("the lakers beat the celtics at home");
  const auto b = Tokenize("bulls edge knicks");
  for (const char *m : {"1", "2", "L"}) {
    Expect(Score(m, a, a).f1 == 1.0, std::string("identical ROUGE-") + m + " != 1");
    Expect(Score(m, a, b).f1 == 0.0, std::string("disjoint ROUGE-") + m + " != 0");
  }
  // Bigrams of "the cat sat on the mat" vs "the cat is on the mat": 3 of 5
  // shared. LCS "the cat on the mat" has 5 of 6 tokens.
  const auto cand = Tokenize("the cat sat on the mat");
  const auto ref = Tokenize("the cat is on the mat");
  Expect(std::abs(RougeN(cand, ref, 2).f1 - 0.6) < 1e-12, "bigram example");
  Expect(std::abs(RougeL(cand, ref).f1 - 5.0 / 6) < 1e-12, "LCS example");
  const auto c2 = Tokenize("a b c d"), r2 = Tokenize("a c e");
  Expect(std::abs(RougeL(c2, r2).f1 - 4.0 / 7) < 1e-12, "asymmetric LCS example");

  const auto result = EvaluateCorpus(
      ReadCorpusDirs(DataPath("rouge/candidate"), DataPath("rouge/reference")), {"1", "2", "L"});
  const json oracle = json::parse(ReadText(DataPath("rouge/oracle.json")));
  double worst = 0;
  for (size_t p = 0; p < result.names.size(); ++p) {
    for (size_t m = 0; m < result.metrics.size(); ++m) {
      const json &want = oracle.at("pairs").at(result.names[p]).at(result.metrics[m]);
      const RougeScore &got = result.per_pair[p][m];
      worst = std::max({worst, std::abs(got.precision - want.at("precision").get<double>()),
                        std::abs(got.recall - want.at("recall").get<double>()),
                        std::abs(got.f1 - want.at("f1").get<double>())});
    }
  }
  Expect(result.names.size() == 5, "corpus is not 5 pairs");
  Expect(worst <= 1e-9, "corpus deviates by " + Fmt(worst));
  std::ostringstream out;
  out << "identity/disjoint/hand examples exact, corpus max deviation " << worst;
  return out.str();
}

// ---------------------------------------------------------------------------
// 9. Templates.

std::string TemplateEngine() {
  const TemplateLibrary library = LoadTemplates(DataPath("templates/news.tpl"));
  int templates = 0;
  for (const std::string &key : library.Keys()) {
    for (const Template &t : library.For(key)) {
      ++templates;
      std::map<std::string, std::string> bindings;
      for (const auto &slot : t.required_slots) bindings[slot] = "v";
      bindings["Unused_Extra"] = "x";
      const std::string text = Render(t, bindings);
      Expect(text.find("[#") == std::string::npos, t.id + ": marker left in output");
      for (const auto &slot : t.required_slots) {
        auto partial = bindings;
        partial.erase(slot);
        bool raised = false;
        try {
          Render(t, partial);
        } catch (const Error &e) {
          raised = e.code() == ErrorCode::kMissingSlot &&
                   std::string(e.what()).find(slot) != std::string::npos;
        }
        Expect(raised, t.id + ": no missing-slot error for " + slot);
      }
    }
  }

  struct Game {
    const char *file, *home;
  };
  const KnowledgeGraph kg = KnowledgeGraph::Load(DataPath("kg/fixture_kg.json"));
  int drafts = 0;
  for (const Game g : {Game{"games/pelicans_76ers.csv", "Pelicans"},
                       Game{"games/lakers_celtics.csv", "Lakers"}}) {
    ParseOptions options;
    options.home_team = g.home;
    const GameLog log = ReadBroadcastFile(DataPath(g.file), options);
    for (bool whole : {false, true}) {
      const auto analysis = AnalyzeGame(log, {}, whole, &kg);
      for (uint64_t seed = 0; seed < 25; ++seed) {
        const Draft a = ComposeDraft(log, analysis, library, {2, seed});
        const Draft b = ComposeDraft(log, analysis, library, {2, seed});
        Expect(a.ToJson().dump() == b.ToJson().dump(), "compose not deterministic");
        Expect(a.Text().find("[#") == std::string::npos &&
                   a.title.find("[#") == std::string::npos,
               "draft contains a marker");
        ++drafts;
      }
    }
  }
  return std::to_string(templates) + " templates slot-checked, " + std::to_string(drafts) +
         " drafts marker-free and reproducible";
}

// ---------------------------------------------------------------------------
// 10. No-fabrication audit, read straight from the stored graph JSON.

std::string PrintValue(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d == std::floor(d)) return std::to_string(static_cast<long long>(d));
    std::ostringstream out;
    out << d;
    return out.str();
  }
  return v.dump();
}

// Whitespace tokens with a digit and no letters, edge punctuation removed.
std::vector<std::string> Numbers(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.back()))) {
      word.pop_back();
    }
    while (!word.empty() && std::ispunct(static_cast<unsigned char>(word.front()))) {
      word.erase(word.begin());
    }
    const bool digit = std::any_of(word.begin(), word.end(), ::isdigit);
    const bool alpha = std::any_of(word.begin(), word.end(), ::isalpha);
    if (digit && !alpha) out.push_back(word);
  }
  return out;
}

std::vector<std::string> Audit(const json &article, const json &graph) {
  std::map<std::string, json> entities;
  for (const json &e : graph.at("entities")) entities[e.at("id")] = e;
  std::set<std::string> triples;
  std::map<std::string, std::set<std::string>> participated;
  for (const json &t : graph.at("triples")) {
    const std::string h = t.at("head"), r = t.at("relation"), tl = t.at("tail");
    triples.insert(h + "|" + r + "|" + tl);
    if (r == "PARTICIPATED_IN") participated[tl].insert(h);
  }

  std::vector<std::string> violations;
  for (const json &p : article.at("paragraphs")) {
    if (p.at("provenance") != "kg-background") continue;
    const std::string text = p.at("text");
    std::set<std::string> cited;
    if (p.at("citations").empty()) violations.push_back("uncited: " + text);
    for (const json &c : p.at("citations")) {
      const std::string kind = c.at("kind"), id = c.at("id"), value = c.at("value");
      cited.insert(value);
      if (kind == "attribute") {
        const size_t dot = id.rfind('.');
        const auto e = entities.find(id.substr(0, dot));
        if (dot == std::string::npos || e == entities.end() ||
            !e->second.at("attributes").contains(id.substr(dot + 1))) {
          violations.push_back("missing attribute " + id);
        } else if (PrintValue(e->second.at("attributes").at(id.substr(dot + 1))) != value) {
          violations.push_back("attribute " + id + " is not " + value);
        }
      } else if (kind == "triple") {
        if (!triples.count(id)) violations.push_back("missing triple " + id);
      } else if (kind == "aggregate") {
        const auto sources = c.value("sources", std::vector<std::string>{});
        for (const auto &s : sources) {
          if (!entities.count(s)) violations.push_back("missing source " + s);
        }
        // head_to_head:A|B counts games both teams took part in.
        const std::string prefix = "head_to_head:";
        if (id.rfind(prefix, 0) == 0) {
          const std::string pair = id.substr(prefix.size());
          const std::string a = pair.substr(0, pair.find('|'));
          const std::string b = pair.substr(pair.find('|') + 1);
          size_t games = 0;
          for (const auto &[game, teams] : participated) games += teams.count(a) && teams.count(b);
          if (std::to_string(games) != value) {
            violations.push_back(id + " claims " + value + ", graph has " +
                                 std::to_string(games));
          }
        } else if (std::to_string(sources.size()) != value) {
          violations.push_back(id + " count mismatch");
        }
      } else {
        violations.push_back("unknown citation kind " + kind);
      }
    }
    for (const std::string &n : Numbers(text)) {
      if (!cited.count(n)) violations.push_back("uncited number " + n + " in: " + text);
    }
  }
  return violations;
}

std::string NoFabrication() {
  const PipelineOutputs out = RunStages(FixtureConfig());
  const json article = json::parse(out.article_json);
  const json graph = json::parse(ReadText(DataPath("kg/fixture_kg.json")));
  int background = 0;
  for (const json &p : article.at("paragraphs")) background += p.at("provenance") == "kg-background";
  Expect(background >= 2, "only " + std::to_string(background) + " background paragraphs");
  const auto violations = Audit(article, graph);
  Expect(violations.empty(), violations.empty() ? "" : violations.front());

  // The audit must notice a changed number.
  json tampered = article;
  for (json &p : tampered.at("paragraphs")) {
    if (p.at("provenance") != "kg-background") continue;
    std::string text = p.at("text");
    const auto nums = Numbers(text);
    if (nums.empty()) continue;
    text.replace(text.find(nums.front()), nums.front().size(), "999");
    p["text"] = text;
    break;
  }
  Expect(!Audit(tampered, graph).empty(), "audit misses a tampered number");
  return std::to_string(background) + " background paragraphs, 0 violations";
}

// ---------------------------------------------------------------------------
// 11. End to end.

std::string EndToEnd() {
  const auto dir = testing::ScratchDir("acceptance_e2e");
  PipelineConfig config = FixtureConfig();
  config.output_dir = (dir / "a").string();
  RunPipeline(config);
  config.output_dir = (dir / "b").string();
  RunPipeline(config);
  for (const char *name : {"article.json", "article.html"}) {
    const std::string a = ReadText((dir / "a" / name).string());
    const std::string b = ReadText((dir / "b" / name).string());
    Expect(!a.empty() && a == b, std::string(name) + " differs between runs");
    Expect(a == ReadText(DataPath(std::string("golden/") + name)),
           std::string(name) + " differs from the golden file");
  }
  return "article.json and article.html byte-identical across runs and to golden";
}

}  // namespace
}  // namespace kgnews

int main() {
  using Check = std::pair<const char *, std::function<std::string()>>;
  const std::vector<Check> checks = {
      {"fixture quarter concordance", kgnews::FixtureQuarter},
      {"segmentation oracle equivalence", kgnews::OracleEquivalence},
      {"segmentation invariants", kgnews::Invariants},
      {"key time snapping", kgnews::Snapping},
      {"completion gradient check", kgnews::GradientCheck},
      {"completion score/loss properties", kgnews::CompletionProperties},
      {"completion learning smoke test", kgnews::CycleSmoke},
      {"ROUGE oracles", kgnews::RougeOracles},
      {"template engine", kgnews::TemplateEngine},
      {"enrichment no-fabrication audit", kgnews::NoFabrication},
      {"end-to-end determinism", kgnews::EndToEnd},
  };
  int failed = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    std::string status = "PASS", detail;
    try {
      detail = checks[i].second();
    } catch (const kgnews::Failure &f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception &e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    failed += status == "FAIL";
    std::printf("%s [%2zu] %s: %s\n", status.c_str(), i + 1, checks[i].first, detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
