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


#include "kgnews/templater.h"

#include <sstream>

#include "doctest.h"
#include "kgnews/broadcast.h"
#include "kgnews/error.h"
#include "kgnews/kee.h"
#include "kgnews/kg_store.h"
#include "test_util.h"

namespace kgnews {
namespace {

GameLog Game(const std::string &file, const std::string &home) {
  ParseOptions options;
  options.home_team = home;
  return ReadBroadcastFile(testing::DataPath("games/" + file), options);
}

TemplateLibrary News() { return LoadTemplates(testing::DataPath("templates/news.tpl")); }

template <typename F>
ErrorCode CodeOf(F &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("slot parsing") {
  CHECK(ParseSlots("[#Team_A] beat [#Team_B] by [#Margin]") ==
        std::set<std::string>{"Team_A", "Team_B", "Margin"});
  CHECK(ParseSlots("no slots [here]").empty());
  CHECK(ParseSlots("[#A][#A]") == std::set<std::string>{"A"});
  for (const char *bad : {"[#]", "[#Team A]", "[# Team]", "[#Open", "trailing [#"}) {
    CAPTURE(bad);
    CHECK(CodeOf([&] { ParseSlots(bad); }) == ErrorCode::kMalformedMarker);
  }
}

TEST_CASE("missing slots are reported exactly when unbound") {
  const Template t = MakeTemplate("t", "closing", "[#Leader] led [#Trailer] by [#Margin].");
  const std::map<std::string, std::string> full = {
      {"Leader", "Lakers"}, {"Trailer", "Celtics"}, {"Margin", "5"}};
  CHECK(Render(t, full) == "Lakers led Celtics by 5.");
  auto extra = full;
  extra["Unused"] = "x";
  CHECK(Render(t, extra) == "Lakers led Celtics by 5.");
  for (const auto &[slot, _] : full) {
    auto partial = full;
    partial.erase(slot);
    try {
      Render(t, partial);
      FAIL("expected MISSING_SLOT");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kMissingSlot);
      CHECK(std::string(e.what()).find(slot) != std::string::npos);
    }
  }
  CHECK(CodeOf([&] { Render(t, {{"Leader", "[#X]"}, {"Trailer", "b"}, {"Margin", "1"}}); }) ==
        ErrorCode::kMalformedMarker);
}

TEST_CASE("mentions carry byte offsets") {
  const Template t = MakeTemplate("t", "x", "The [#Team] won; [#Player] starred.");
  const Rendered r = RenderWithMentions(
      t, {{"Team", {"Lakers", MentionKind::kTeam}},
          {"Player", {"LeBron James", MentionKind::kPlayer}}});
  REQUIRE(r.mentions.size() == 2);
  for (const Mention &m : r.mentions) {
    CHECK(r.text.substr(m.begin, m.end - m.begin) == m.surface);
  }
  CHECK(r.mentions[1].kind == MentionKind::kPlayer);
}

TEST_CASE("template file grammar") {
  std::istringstream in(
      "# comment\n"
      "[trend:STALEMATE]\n"
      "text: [#Team_A] and [#Team_B] traded baskets.\n"
      "source: [# Team A] and [# Team B] are locked in a tight battle\n"
      "text: A second option.\n"
      "\n"
      "[closing]\n"
      "text: Done.\n");
  const TemplateLibrary lib = TemplateLibrary::Parse(in);
  CHECK(lib.size() == 3);
  REQUIRE(lib.For("trend:STALEMATE").size() == 2);
  CHECK(lib.For("trend:STALEMATE")[0].source.find("[# Team A]") != std::string::npos);
  CHECK(lib.For("trend:STALEMATE")[0].required_slots.size() == 2);
  CHECK(CodeOf([&] { lib.For("closing_tied"); }) == ErrorCode::kCoverage);
  CHECK(CodeOf([&] { lib.RequireCoverage(NewsTemplateKeys()); }) == ErrorCode::kCoverage);

  std::istringstream bad_section("[nonsense]\ntext: x\n");
  CHECK(CodeOf([&] { TemplateLibrary::Parse(bad_section); }) == ErrorCode::kSchema);
  std::istringstream orphan("text: x\n");
  CHECK(CodeOf([&] { TemplateLibrary::Parse(orphan); }) == ErrorCode::kSchema);
  std::istringstream bad_marker("[closing]\ntext: [#Oops\n");
  CHECK(CodeOf([&] { TemplateLibrary::Parse(bad_marker); }) == ErrorCode::kMalformedMarker);
}

TEST_CASE("bundled templates cover every key") {
  const TemplateLibrary lib = News();
  lib.RequireCoverage(NewsTemplateKeys());
  for (TrendLabel l : AllTrendLabels()) CHECK(lib.Has(TrendKey(l)));
  for (KeyEventKind k : EmittedKeyEventKinds()) CHECK(lib.Has(EventKey(k)));
  CHECK(lib.Has(kClosingKey));
  CHECK(lib.Has(kClosingTiedKey));
}

TEST_CASE("period names") {
  CHECK(PeriodName(0) == "game");
  CHECK(PeriodName(1) == "first quarter");
  CHECK(PeriodName(4) == "fourth quarter");
  CHECK(PeriodName(5) == "first overtime");
}

TEST_CASE("draft composition is seeded") {
  const GameLog log = Game("pelicans_76ers.csv", "Pelicans");
  const auto analysis = AnalyzeGame(log);
  const TemplateLibrary lib = News();
  const Draft a = ComposeDraft(log, analysis, lib, {2, 42});
  const Draft b = ComposeDraft(log, analysis, lib, {2, 42});
  CHECK(a == b);
  CHECK(a.Text() == b.Text());
  CHECK(a.title == "Pelicans 77, 76ers 100");
  CHECK(a.paragraphs.size() == 4);
  for (const Paragraph &p : a.paragraphs) {
    CHECK(p.kind == "quarter");
    CHECK(p.text.find("[#") == std::string::npos);
    for (const Mention &m : p.mentions) {
      CHECK(p.text.substr(m.begin, m.end - m.begin) == m.surface);
    }
  }
  CHECK(a.paragraphs[0].text.find("leading by as many as 16 points") != std::string::npos);
  CHECK(a.paragraphs[0].text.find("Joel Embiid") != std::string::npos);
  CHECK(a.paragraphs[0].text.find("with 13 points") != std::string::npos);
  CHECK(a.paragraphs[0].text.ends_with(
      "By the end of the first quarter, the 76ers led the Pelicans by 15 points."));
  CHECK(Draft::FromJson(a.ToJson()) == a);

  const Draft whole = ComposeDraft(log, AnalyzeGame(log, {}, true), lib, {2, 42});
  REQUIRE(whole.paragraphs.size() == 1);
  CHECK(whole.paragraphs[0].kind == "game");
}

TEST_CASE("events per segment bounds the sentences") {
  const GameLog log = Game("pelicans_76ers.csv", "Pelicans");
  const auto analysis = AnalyzeGame(log);
  const Draft one = ComposeDraft(log, analysis, News(), {1, 3});
  // Trend + one event per segment + closing for the two-segment first quarter.
  const std::string &text = one.paragraphs[0].text;
  CHECK(std::count(text.begin(), text.end(), '.') == 2 + 1 + 1 + 1);
}

TEST_CASE("player summary") {
  const GameLog log = Game("lakers_celtics.csv", "Lakers");
  const KnowledgeGraph kg = KnowledgeGraph::Load(testing::DataPath("kg/fixture_kg.json"));
  CHECK(CountPlayer(log, "LeBron James") == PlayerLine{"LeBron James", 17, 13, 5});
  CHECK(CountPlayer(log, "Kyle Kuzma") == PlayerLine{"Kyle Kuzma", 19, 6, 0});
  CHECK(CountPlayer(log, "Brandon Ingram") == PlayerLine{"Brandon Ingram", 14, 2, 2});
  const Paragraph p = PlayerSummary(log, kg, "Lakers");
  CHECK(p.kind == "player_summary");
  CHECK(p.text ==
        "On the Lakers side, leader LeBron James had 17 points, 13 rebounds and 5 assists, "
        "star player Kyle Kuzma had 19 points and 6 rebounds, and Brandon Ingram had 14 "
        "points, 2 rebounds and 2 assists, which helped the team immensely.");
  CHECK(p.mentions.size() >= 4);
  CHECK_THROWS_AS(PlayerSummary(log, kg, "Raptors"), Error);
}

}  // namespace
}  // namespace kgnews
