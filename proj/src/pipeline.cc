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


#include "kgnews/pipeline.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>

#include "CLI11.hpp"
#include "kgnews/broadcast.h"
#include "kgnews/error.h"
#include "kgnews/kg_store.h"
#include "kgnews/templater.h"

#ifndef KGNEWS_DATA_DIR
#define KGNEWS_DATA_DIR "data"
#endif

namespace kgnews {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  T out{};
  std::istringstream in(value);
  in >> out;
  if (!in || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::kConfig, key + ": cannot parse '" + value + "'");
  }
  return out;
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error(ErrorCode::kConfig, key + ": expected a boolean, got '" + value + "'");
}

using Setter = std::function<void(PipelineConfig &, const std::string &, const std::string &)>;

template <typename T>
Setter Number(T PipelineConfig::*field) {
  return [field](PipelineConfig &c, const std::string &k, const std::string &v) {
    c.*field = ParseNumber<T>(k, v);
  };
}

template <typename S, typename T>
Setter Nested(S PipelineConfig::*outer, T S::*field) {
  return [outer, field](PipelineConfig &c, const std::string &k, const std::string &v) {
    if constexpr (std::is_same_v<T, std::string>) {
      c.*outer.*field = v;
    } else if constexpr (std::is_same_v<T, bool>) {
      c.*outer.*field = ParseBool(k, v);
    } else {
      c.*outer.*field = ParseNumber<T>(k, v);
    }
  };
}

Setter Text(std::string PipelineConfig::*field) {
  return [field](PipelineConfig &c, const std::string &, const std::string &v) { c.*field = v; };
}

Setter Flag(bool PipelineConfig::*field) {
  return [field](PipelineConfig &c, const std::string &k, const std::string &v) {
    c.*field = ParseBool(k, v);
  };
}

const std::map<std::string, Setter> &Setters() {
  static const std::map<std::string, Setter> setters = {
      {"paths.log", Text(&PipelineConfig::log)},
      {"paths.kg", Text(&PipelineConfig::kg)},
      {"paths.templates", Text(&PipelineConfig::templates)},
      {"paths.background", Text(&PipelineConfig::background)},
      {"paths.output_dir", Text(&PipelineConfig::output_dir)},
      {"game.home", Text(&PipelineConfig::home)},
      {"game.away", Text(&PipelineConfig::away)},
      {"game.game_id", Text(&PipelineConfig::game_id)},
      {"game.quarter_length", Number(&PipelineConfig::quarter_length)},
      {"kee.range_threshold", Nested(&PipelineConfig::kee, &KeeConfig::range_threshold)},
      {"kee.steady_threshold", Nested(&PipelineConfig::kee, &KeeConfig::steady_threshold)},
      {"kee.consecutive_points", Nested(&PipelineConfig::kee, &KeeConfig::consecutive_points)},
      {"kee.drought_seconds", Nested(&PipelineConfig::kee, &KeeConfig::drought_seconds)},
      {"kee.rebound_window", Nested(&PipelineConfig::kee, &KeeConfig::rebound_window)},
      {"kee.timeout_window", Nested(&PipelineConfig::kee, &KeeConfig::timeout_window)},
      {"kee.whole_game", Flag(&PipelineConfig::whole_game)},
      {"templater.events_per_segment", Number(&PipelineConfig::events_per_segment)},
      {"enricher.link_threshold", Number(&PipelineConfig::link_threshold)},
      {"enricher.head_to_head", Nested(&PipelineConfig::policy, &EnrichPolicy::head_to_head)},
      {"enricher.career_facts", Nested(&PipelineConfig::policy, &EnrichPolicy::career_facts)},
      {"enricher.history_relation",
       Nested(&PipelineConfig::policy, &EnrichPolicy::history_relation)},
      {"enricher.career_attribute",
       Nested(&PipelineConfig::policy, &EnrichPolicy::career_attribute)},
      {"kgc.dim", Nested(&PipelineConfig::model, &kgc::ModelConfig::dim)},
      {"kgc.layers", Nested(&PipelineConfig::model, &kgc::ModelConfig::layers)},
      {"kgc.heads", Nested(&PipelineConfig::model, &kgc::ModelConfig::heads)},
      {"kgc.conv_channels", Nested(&PipelineConfig::model, &kgc::ModelConfig::conv_channels)},
      {"kgc.margin", Nested(&PipelineConfig::model, &kgc::ModelConfig::margin)},
      {"kgc.support_size", Number(&PipelineConfig::support_size)},
      {"kgc.learning_rate", Number(&PipelineConfig::learning_rate)},
      {"kgc.epochs", Number(&PipelineConfig::epochs)},
      {"seed", Number(&PipelineConfig::seed)},
  };
  return setters;
}

std::string DataPath(const std::string &configured, const char *fallback) {
  return configured.empty() ? std::string(KGNEWS_DATA_DIR) + "/" + fallback : configured;
}

class StageRunner {
 public:
  explicit StageRunner(RunReport *report) : report_(report) {}

  template <typename F>
  auto operator()(const std::string &stage, F &&body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        Record(stage, start);
      } else {
        auto result = body();
        Record(stage, start);
        return result;
      }
    } catch (const Error &e) {
      throw Error(ErrorCode::kStage, stage + ": " + e.what());
    } catch (const std::exception &e) {
      throw Error(ErrorCode::kStage, stage + ": " + e.what());
    }
  }

 private:
  void Record(const std::string &stage, std::chrono::steady_clock::time_point start) {
    if (!report_) return;
    const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
    report_->timings.push_back({stage, d.count()});
  }
  RunReport *report_;
};

void WriteFile(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out.flush()) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace

void PipelineConfig::Validate() const {
  kee.Validate();
  model.Validate();
  if (events_per_segment < 0) throw Error(ErrorCode::kConfig, "events_per_segment must be >= 0");
  if (!(link_threshold > 0 && link_threshold <= 1)) {
    throw Error(ErrorCode::kConfig, "link_threshold must be in (0, 1]");
  }
  if (!(quarter_length > 0)) throw Error(ErrorCode::kConfig, "quarter_length must be positive");
  if (support_size < 1 || epochs < 0 || !(learning_rate > 0)) {
    throw Error(ErrorCode::kConfig, "kgc support_size, epochs and learning_rate must be positive");
  }
}

json PipelineConfig::ToJson() const {
  return {{"paths",
           {{"log", log},
            {"kg", kg},
            {"templates", DataPath(templates, "templates/news.tpl")},
            {"background", DataPath(background, "templates/background.tpl")},
            {"output_dir", output_dir}}},
          {"game",
           {{"home", home}, {"away", away}, {"game_id", game_id},
            {"quarter_length", quarter_length}}},
          {"kee", [&] {
             json j = kee.ToJson();
             j["whole_game"] = whole_game;
             return j;
           }()},
          {"templater", {{"events_per_segment", events_per_segment}}},
          {"enricher",
           {{"link_threshold", link_threshold},
            {"head_to_head", policy.head_to_head},
            {"career_facts", policy.career_facts},
            {"history_relation", policy.history_relation},
            {"career_attribute", policy.career_attribute}}},
          {"kgc",
           {{"model", model.ToJson()},
            {"support_size", support_size},
            {"learning_rate", learning_rate},
            {"epochs", epochs}}},
          {"seed", seed}};
}

void PipelineConfig::Apply(const std::map<std::string, std::string> &values) {
  for (const auto &[key, value] : values) {
    auto it = Setters().find(key);
    if (it == Setters().end()) throw Error(ErrorCode::kConfig, "unknown config key " + key);
    it->second(*this, key, value);
  }
}

std::map<std::string, std::string> PipelineConfig::ReadIni(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error &e) {
    throw Error(ErrorCode::kConfig, path + ": " + e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  std::map<std::string, std::string> out;
  for (const auto &item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string key;
    for (const auto &p : item.parents) key += p + ".";
    key += item.name;
    std::string value;
    for (size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    // Paths in a config file are relative to the file.
    if (key.rfind("paths.", 0) == 0 && !value.empty() && fs::path(value).is_relative()) {
      value = (base / value).lexically_normal().string();
    }
    out[key] = value;
  }
  return out;
}

json RunReport::ToJson() const {
  json t = json::array();
  for (const auto &s : timings) t.push_back({{"stage", s.stage}, {"milliseconds", s.milliseconds}});
  return {{"timings", t}, {"outputs", outputs}, {"summary", summary}, {"constants", constants}};
}

PipelineOutputs RunStages(const PipelineConfig &config, RunReport *report) {
  StageRunner stage(report);
  stage("config", [&] { config.Validate(); });
  if (report) report->constants = config.ToJson();

  PipelineOutputs out;
  const GameLog log = stage("ingest", [&] {
    return ReadBroadcastFile(config.log, ParseOptions{config.home, config.away, config.game_id,
                                                      config.quarter_length});
  });

  stage("segment", [&] {
    std::vector<int> scopes;
    if (config.whole_game) {
      scopes.push_back(0);
    } else {
      for (int q = 1; q <= log.LastQuarter(); ++q) {
        for (const auto &e : log.events) {
          if (e.quarter == q) {
            scopes.push_back(q);
            break;
          }
        }
      }
    }
    for (int q : scopes) {
      ScopeAnalysis a;
      a.series = ScoreDiffSeries(log, q);
      a.segmentation = SegmentSeries(a.series, config.kee);
      out.analysis.push_back(std::move(a));
    }
  });

  stage("extract", [&] {
    for (auto &a : out.analysis) {
      a.events = ExtractKeyEvents(log, a.series, a.segmentation.segments, config.kee);
    }
  });

  stage("write", [&] {
    const TemplateLibrary library = LoadTemplates(DataPath(config.templates, "templates/news.tpl"));
    out.draft = ComposeDraft(log, out.analysis, library,
                             ComposeOptions{config.events_per_segment, config.seed});
  });

  LinkResult links;
  stage("enrich", [&] {
    if (config.kg.empty() || !fs::exists(config.kg)) {
      throw Error(ErrorCode::kIo, "knowledge graph not found: '" + config.kg + "'");
    }
    const KnowledgeGraph kg = KnowledgeGraph::Load(config.kg);
    const TemplateLibrary background =
        LoadBackgroundTemplates(DataPath(config.background, "templates/background.tpl"));
    for (const std::string &team : {log.home_team, log.away_team}) {
      Paragraph summary = PlayerSummary(log, kg, team);
      if (!summary.text.empty()) out.draft.paragraphs.push_back(std::move(summary));
    }
    links = LinkEntities(out.draft, kg, config.link_threshold);
    out.article = Enrich(out.draft, kg, links, background, config.policy);
  });

  stage("export", [&] {
    out.article_json = ExportJson(out.article);
    out.article_html = ExportHtml(out.article);
  });

  if (report) {
    json scopes = json::array();
    for (const auto &a : out.analysis) {
      json counts = json::object();
      for (const auto &e : a.events) counts[std::string(KeyEventKindName(e.kind))] =
          counts.value(std::string(KeyEventKindName(e.kind)), 0) + 1;
      scopes.push_back({{"quarter", a.series.quarter},
                        {"label", TrendLabelName(a.segmentation.segments.front().label)},
                        {"segments", a.segmentation.segments.size()},
                        {"final_dif", a.series.samples.back().dif},
                        {"key_events", counts}});
    }
    json methods = {{"exact", 0}, {"alias", 0}, {"similarity", 0}};
    for (const auto &l : links.links) {
      methods[std::string(LinkMethodName(l.method))] =
          methods[std::string(LinkMethodName(l.method))].get<int>() + 1;
    }
    int background = 0;
    for (const auto &p : out.article.paragraphs) background += p.provenance == "kg-background";
    report->summary = {{"scopes", scopes},
                       {"links", {{"resolved", links.links.size()},
                                  {"unresolved", links.unresolved.size()},
                                  {"methods", methods}}},
                       {"background_paragraphs", background}};
  }
  return out;
}

RunReport RunPipeline(const PipelineConfig &config) {
  RunReport report;
  const PipelineOutputs out = RunStages(config, &report);

  const fs::path dir = config.output_dir;
  const std::vector<std::pair<std::string, std::string>> files = {
      {"draft.json", out.draft.ToJson().dump(2) + "\n"},
      {"article.json", out.article_json},
      {"article.html", out.article_html},
  };
  std::vector<fs::path> written;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto &p : written) fs::remove(p, ec);
    for (const auto &[name, _] : files) fs::remove(dir / (name + ".tmp"), ec);
    fs::remove(dir / "report.json.tmp", ec);
  };
  try {
    fs::create_directories(dir);
    for (const auto &[name, content] : files) WriteFile(dir / (name + ".tmp"), content);
    for (const auto &[name, _] : files) {
      report.outputs.push_back((dir / name).string());
    }
    report.outputs.push_back((dir / "report.json").string());
    WriteFile(dir / "report.json.tmp", report.ToJson().dump(2) + "\n");
    for (const auto &[name, _] : files) {
      fs::rename(dir / (name + ".tmp"), dir / name);
      written.push_back(dir / name);
    }
    fs::rename(dir / "report.json.tmp", dir / "report.json");
  } catch (const std::exception &e) {
    cleanup();
    throw Error(ErrorCode::kStage, std::string("output: ") + e.what());
  }
  return report;
}

}  // namespace kgnews
