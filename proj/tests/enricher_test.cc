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


#include "kgnews/enricher.h"

#include "doctest.h"
#include "kgnews/broadcast.h"
#include "kgnews/error.h"
#include "kgnews/kee.h"
#include "kgnews/kg_store.h"
#include "kgnews/levenshtein.h"
#include "kgnews/templater.h"
#include "test_util.h"

namespace kgnews {
namespace {

KnowledgeGraph Kg() { return KnowledgeGraph::Load(testing::DataPath("kg/fixture_kg.json")); }

TemplateLibrary Background() {
  return LoadBackgroundTemplates(testing::DataPath("templates/background.tpl"));
}

Draft FixtureDraft(const KnowledgeGraph &kg) {
  ParseOptions options;
  options.home_team = "Pelicans";
  const GameLog log =
      ReadBroadcastFile(testing::DataPath("games/pelicans_76ers.csv"), options);
  Draft d = ComposeDraft(log, AnalyzeGame(log),
                         LoadTemplates(testing::DataPath("templates/news.tpl")), {2, 1});
  d.paragraphs.push_back(PlayerSummary(log, kg, "Pelicans"));
  d.paragraphs.push_back(PlayerSummary(log, kg, "76ers"));
  return d;
}

TEST_CASE("edit distance") {
  CHECK(Levenshtein("kitten", "sitting") == 3);
  CHECK(Levenshtein("", "abc") == 3);
  CHECK(Levenshtein("abc", "abc") == 0);
  CHECK(NameSimilarity("LeBron James", "lebron james") == 1.0);
  CHECK(NameSimilarity("abcd", "abce") == doctest::Approx(0.75));
  CHECK(NameSimilarity("", "") == 1.0);
  CHECK(AsciiLower("LeBron") == "lebron");
}

TEST_CASE("mention matching tiers") {
  const KnowledgeGraph kg = Kg();
  auto m = MatchMention("LeBron James", MentionKind::kPlayer, kg, 0.85);
  REQUIRE(m);
  CHECK(m->entity_id == "lebron_james");
  CHECK(m->method == LinkMethod::kExact);
  CHECK(m->confidence == 1.0);

  m = MatchMention("King James", MentionKind::kPlayer, kg, 0.85);
  REQUIRE(m);
  CHECK(m->entity_id == "lebron_james");
  CHECK(m->method == LinkMethod::kAlias);

  m = MatchMention("Lebron Jame", MentionKind::kPlayer, kg, 0.85);
  REQUIRE(m);
  CHECK(m->entity_id == "lebron_james");
  CHECK(m->method == LinkMethod::kSimilarity);
  CHECK(m->confidence == doctest::Approx(1.0 - 1.0 / 12));

  double best = 0;
  CHECK_FALSE(MatchMention("Michael Jordan", MentionKind::kPlayer, kg, 0.85, &best));
  CHECK(best < 0.85);
  CHECK(best > 0);
  // The class matters: a team alias does not link a player mention.
  CHECK_FALSE(MatchMention("Lakers", MentionKind::kPlayer, kg, 0.85));
  CHECK(MatchMention("Lakers", MentionKind::kTeam, kg, 0.85)->entity_id == "lakers");
}

TEST_CASE("similarity ties go to the smaller id") {
  Schema schema;
  schema.Declare(EntityClass::kTeam, "name", AttributeType::kString);
  KnowledgeGraph kg(schema);
  kg.UpsertEntity({"b_team", EntityClass::kTeam, {{"name", std::string("Hawks")}}, {}});
  kg.UpsertEntity({"a_team", EntityClass::kTeam, {{"name", std::string("Hawkz")}}, {}});
  const auto m = MatchMention("Hawky", MentionKind::kTeam, kg, 0.5);
  REQUIRE(m);
  CHECK(m->entity_id == "a_team");
}

TEST_CASE("linking a draft") {
  const KnowledgeGraph kg = Kg();
  const Draft draft = FixtureDraft(kg);
  const LinkResult links = LinkEntities(draft, kg);
  CHECK(links.unresolved.empty());
  CHECK_FALSE(links.links.empty());
  for (const EntityLink &l : links.links) {
    const std::string &text = draft.paragraphs.at(l.paragraph).text;
    CHECK(text.substr(l.begin, l.end - l.begin) == l.surface);
    CHECK(kg.Find(l.entity_id) != nullptr);
  }

  Draft typo = draft;
  typo.paragraphs.push_back({"Zzyzx Qwerty scored.", "quarter", 1,
                             {{"Zzyzx Qwerty", 0, 12, MentionKind::kPlayer}}});
  const LinkResult partial = LinkEntities(typo, kg);
  REQUIRE(partial.unresolved.size() == 1);
  CHECK(partial.unresolved[0].mention.surface == "Zzyzx Qwerty");
}

TEST_CASE("enrichment adds cited background") {
  const KnowledgeGraph kg = Kg();
  const Draft draft = FixtureDraft(kg);
  const Article article = Enrich(draft, kg, LinkEntities(draft, kg), Background());
  REQUIRE(article.paragraphs.size() == draft.paragraphs.size() + 3);
  CHECK(article.paragraphs[1].provenance == "kg-background");
  CHECK(article.paragraphs[1].text == "The two teams have met 2 times since 2017-10-25.");
  CHECK(article.paragraphs.back().provenance == "kg-background");
  CHECK(article.paragraphs.back().text ==
        "Joel Embiid, a leader of the Philadelphia 76ers, has 4622 career points.");
  CHECK(AuditBackground(article, kg).empty());
  for (const EntityLink &l : article.links) {
    const std::string &text = article.paragraphs.at(l.paragraph).text;
    CHECK(text.substr(l.begin, l.end - l.begin) == l.surface);
  }

  Article tampered = article;
  tampered.paragraphs[1].text = "The two teams have met 3 times since 2017-10-25.";
  CHECK_FALSE(AuditBackground(tampered, kg).empty());

  EnrichPolicy off;
  off.head_to_head = false;
  off.career_facts = false;
  CHECK(Enrich(draft, kg, LinkEntities(draft, kg), Background(), off).paragraphs.size() ==
        draft.paragraphs.size());
  EnrichPolicy bad_relation;
  bad_relation.history_relation = "MARRIED_TO";
  CHECK_THROWS_AS(Enrich(draft, kg, LinkEntities(draft, kg), Background(), bad_relation),
                  Error);
  EnrichPolicy bad_attribute;
  bad_attribute.career_attribute = "altitude";
  CHECK_THROWS_AS(Enrich(draft, kg, LinkEntities(draft, kg), Background(), bad_attribute),
                  Error);
}

TEST_CASE("numeric tokens") {
  CHECK(NumericTokens("The 76ers won 100-77 on 2018-11-04, by 23.") ==
        std::vector<std::string>{"100-77", "2018-11-04", "23"});
  CHECK(NumericTokens("no numbers here").empty());
}

TEST_CASE("neighborhood payload") {
  const KnowledgeGraph kg = Kg();
  const auto n = Neighborhood(kg, "wilson_chandler");
  REQUIRE(n["nodes"].size() == 5);
  CHECK(n["nodes"][0]["id"] == "wilson_chandler");
  CHECK(n["edges"].size() == 4);
}

TEST_CASE("exports") {
  const KnowledgeGraph kg = Kg();
  const Draft draft = FixtureDraft(kg);
  const Article article = Enrich(draft, kg, LinkEntities(draft, kg), Background());
  const std::string json_text = ExportJson(article);
  const auto j = nlohmann::json::parse(json_text);
  CHECK(j["paragraphs"].size() == article.paragraphs.size());
  CHECK(json_text.back() == '\n');
  const std::string html = ExportHtml(article);
  CHECK(html.find("class=\"kg-entity\"") != std::string::npos);
  CHECK(html.find("data-entity-id=\"joel_embiid\"") != std::string::npos);
  CHECK(html.find("<script type=\"application/json\" id=\"kg-entities\">") !=
        std::string::npos);
  CHECK(ExportHtml(article) == html);
}

}  // namespace
}  // namespace kgnews
