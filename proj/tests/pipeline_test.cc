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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kgnews/error.h"
#include "test_util.h"

namespace kgnews {
namespace {

namespace fs = std::filesystem;

PipelineConfig FixtureConfig(const fs::path &out) {
  PipelineConfig c;
  c.Apply(PipelineConfig::ReadIni(testing::DataPath("config/example.ini")));
  c.output_dir = out.string();
  return c;
}

TEST_CASE("ini parsing resolves paths against the file") {
  const auto values = PipelineConfig::ReadIni(testing::DataPath("config/example.ini"));
  CHECK(values.at("seed") == "7");
  CHECK(values.at("game.home") == "Pelicans");
  CHECK(fs::path(values.at("paths.kg")).filename() == "fixture_kg.json");
  CHECK(fs::exists(values.at("paths.log")));
}

TEST_CASE("precedence: defaults < file < flags") {
  PipelineConfig c;
  CHECK(c.events_per_segment == 2);
  CHECK(c.seed == 0);
  c.Apply(PipelineConfig::ReadIni(testing::DataPath("config/example.ini")));
  CHECK(c.seed == 7);
  CHECK(c.kee.range_threshold == 8);
  c.Apply({{"seed", "11"}, {"kee.range_threshold", "6"}, {"enricher.head_to_head", "false"}});
  CHECK(c.seed == 11);
  CHECK(c.kee.range_threshold == 6);
  CHECK_FALSE(c.policy.head_to_head);
  CHECK(c.ToJson()["seed"] == 11);
}

TEST_CASE("bad configuration") {
  PipelineConfig c;
  try {
    c.Apply({{"kee.no_such_key", "1"}});
    FAIL("expected kConfig");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kConfig);
    CHECK(std::string(e.what()).find("kee.no_such_key") != std::string::npos);
  }
  CHECK_THROWS_AS(c.Apply({{"seed", "seven"}}), Error);
  PipelineConfig bad;
  bad.link_threshold = 1.5;
  CHECK_THROWS_AS(bad.Validate(), Error);

  const auto dir = testing::ScratchDir("bad_ini");
  std::ofstream(dir / "x.ini") << "[kee]\nwhatever = 3\n";
  PipelineConfig d;
  CHECK_THROWS_AS(d.Apply(PipelineConfig::ReadIni((dir / "x.ini").string())), Error);
}

TEST_CASE("full run writes four outputs") {
  const auto dir = testing::ScratchDir("pipeline_ok");
  const RunReport report = RunPipeline(FixtureConfig(dir / "out"));
  CHECK(report.outputs.size() == 4);
  for (const auto &p : report.outputs) CHECK(fs::exists(p));
  CHECK(report.summary["scopes"].size() == 4);
  CHECK(report.summary["links"]["unresolved"] == 0);
  CHECK(report.summary["background_paragraphs"] == 3);
  std::vector<std::string> stages;
  for (const auto &t : report.timings) stages.push_back(t.stage);
  CHECK(stages == std::vector<std::string>{"config", "ingest", "segment", "extract", "write",
                                           "enrich", "export"});
}

TEST_CASE("same config, same bytes") {
  const auto dir = testing::ScratchDir("pipeline_det");
  const PipelineConfig c = FixtureConfig(dir);
  const PipelineOutputs a = RunStages(c);
  const PipelineOutputs b = RunStages(c);
  CHECK(a.article_json == b.article_json);
  CHECK(a.article_html == b.article_html);
}

TEST_CASE("a failing stage is named and leaves no output") {
  const auto dir = testing::ScratchDir("pipeline_fail");
  PipelineConfig c = FixtureConfig(dir / "out");
  c.kg = (dir / "missing.json").string();
  try {
    RunPipeline(c);
    FAIL("expected kStage");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kStage);
    CHECK(std::string(e.what()).find("enrich") != std::string::npos);
  }
  CHECK((!fs::exists(dir / "out") || fs::is_empty(dir / "out")));

  c = FixtureConfig(dir / "out");
  c.log = (dir / "nope.csv").string();
  try {
    RunStages(c);
    FAIL("expected kStage");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("ingest") != std::string::npos);
  }
}

}  // namespace
}  // namespace kgnews
