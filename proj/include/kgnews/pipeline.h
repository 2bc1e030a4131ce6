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


// End-to-end run: ingest -> segment -> extract -> write -> enrich -> export.

#ifndef KGNEWS_PIPELINE_H_
#define KGNEWS_PIPELINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgnews/enricher.h"
#include "kgnews/kee.h"
#include "kgnews/kgc_model.h"

namespace kgnews {

struct PipelineConfig {
  // [paths]
  std::string log;
  std::string kg;
  std::string templates;
  std::string background;
  std::string output_dir = "out";
  // [game]
  std::string home;
  std::string away;
  std::string game_id;
  double quarter_length = 720;
  // [kee]
  KeeConfig kee;
  bool whole_game = false;
  // [templater]
  int events_per_segment = 2;
  // [enricher]
  double link_threshold = 0.85;
  EnrichPolicy policy;
  // [kgc]
  kgc::ModelConfig model;
  int support_size = 3;
  double learning_rate = 0.05;
  int epochs = 50;
  // top level
  uint64_t seed = 0;

  void Validate() const;
  nlohmann::json ToJson() const;

  // Overrides fields from "section.key" -> value pairs. Throws kConfig for
  // unknown keys or unparsable values.
  void Apply(const std::map<std::string, std::string> &values);
  // Reads an INI file into "section.key" -> value pairs.
  static std::map<std::string, std::string> ReadIni(const std::string &path);
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct RunReport {
  std::vector<StageTiming> timings;
  std::vector<std::string> outputs;
  nlohmann::json summary;  // labels, event counts, link statistics
  nlohmann::json constants;

  nlohmann::json ToJson() const;
};

struct PipelineOutputs {
  Draft draft;
  Article article;
  std::string article_json;
  std::string article_html;
  std::vector<ScopeAnalysis> analysis;
};

// Runs every stage in memory. Errors are rethrown as kStage with the stage
// name prefixed to the cause.
PipelineOutputs RunStages(const PipelineConfig &config, RunReport *report = nullptr);

// RunStages plus atomic writes of draft.json, article.json, article.html and
// report.json into config.output_dir. On failure nothing is left behind.
RunReport RunPipeline(const PipelineConfig &config);

}  // namespace kgnews

#endif  // KGNEWS_PIPELINE_H_
