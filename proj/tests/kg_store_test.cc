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


#include "kgnews/kg_store.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "doctest.h"
#include "kgnews/error.h"
#include "test_util.h"

namespace kgnews {
namespace {

using nlohmann::json;

Schema SmallSchema() {
  Schema s;
  s.Declare(EntityClass::kPlayer, "name", AttributeType::kString);
  s.Declare(EntityClass::kPlayer, "status", AttributeType::kString);
  s.Declare(EntityClass::kPlayer, "career_points", AttributeType::kNumber);
  s.Declare(EntityClass::kTeam, "name", AttributeType::kString);
  s.Declare(EntityClass::kTeam, "partition", AttributeType::kString);
  s.Declare(EntityClass::kGame, "date", AttributeType::kDate);
  return s;
}

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

std::set<std::string> Ids(const std::vector<const Entity *> &entities) {
  std::set<std::string> out;
  for (const Entity *e : entities) out.insert(e->id);
  return out;
}

KnowledgeGraph Fixture() {
  return KnowledgeGraph::Load(testing::DataPath("kg/fixture_kg.json"));
}

TEST_CASE("upsert stores and replaces") {
  KnowledgeGraph kg(SmallSchema());
  kg.UpsertEntity({"lakers", EntityClass::kTeam,
                   {{"name", std::string("Los Angeles Lakers")},
                    {"partition", std::string("West")}},
                   {"Lakers"}});
  CHECK(kg.Get("lakers").DisplayName() == "Los Angeles Lakers");
  CHECK(kg.Resolve("Lakers", EntityClass::kTeam) == "lakers");
  kg.UpsertEntity({"lakers", EntityClass::kTeam, {{"name", std::string("LA")}}, {}});
  CHECK(kg.Get("lakers").DisplayName() == "LA");
  CHECK(kg.Get("lakers").Attribute("partition") == nullptr);
  CHECK_FALSE(kg.Resolve("Lakers", EntityClass::kTeam).has_value());
}

TEST_CASE("schema violations") {
  KnowledgeGraph kg(SmallSchema());
  CHECK(CodeOf([&] {
          kg.UpsertEntity({"p", EntityClass::kPlayer, {{"altitude", 3.0}}, {}});
        }) == ErrorCode::kUnknownAttribute);
  CHECK(CodeOf([&] {
          kg.UpsertEntity({"p", EntityClass::kPlayer, {{"status", std::string("active")}, {"career_points", std::string("x")}}, {}});
        }) == ErrorCode::kSchema);
  CHECK(CodeOf([&] {
          kg.UpsertEntity({"p", EntityClass::kPlayer, {{"status", std::string("benched")}}, {}});
        }) == ErrorCode::kSchema);
  kg.UpsertEntity({"a", EntityClass::kTeam, {}, {"Dup"}});
  CHECK(CodeOf([&] { kg.UpsertEntity({"b", EntityClass::kTeam, {}, {"Dup"}}); }) ==
        ErrorCode::kAliasCollision);
  // The same alias on a different class is fine.
  kg.UpsertEntity({"p", EntityClass::kPlayer, {{"status", std::string("active")}}, {"Dup"}});
  CHECK(CodeOf([&] { kg.AddTriple({"p", RelationType::kPlaysFor, "nobody"}); }) ==
        ErrorCode::kDanglingEndpoint);
  CHECK(CodeOf([&] { kg.AddTriple({"a", RelationType::kPlaysFor, "p"}); }) ==
        ErrorCode::kSignature);
  CHECK(CodeOf([&] { kg.AddRoleTag({"a", "ghost", TeamRole::kLeader}); }) ==
        ErrorCode::kUnknownEntity);
  CHECK(CodeOf([&] { kg.Get("ghost"); }) == ErrorCode::kUnknownEntity);
}

TEST_CASE("relation signatures") {
  CHECK(SignatureOf(RelationType::kPlaysFor).head == EntityClass::kPlayer);
  CHECK(SignatureOf(RelationType::kPlaysFor).tail == EntityClass::kTeam);
  CHECK(SignatureOf(RelationType::kHistoricalMatchup).head == EntityClass::kTeam);
  CHECK(SignatureOf(RelationType::kHistoricalMatchup).tail == EntityClass::kTeam);
  CHECK(SignatureOf(RelationType::kParticipatedIn).tail == EntityClass::kGame);
  CHECK(AllRelations().size() == 4);
  for (RelationType r : AllRelations()) CHECK(RelationFromName(RelationName(r)) == r);
}

TEST_CASE("fixture roster and leaders") {
  const KnowledgeGraph kg = Fixture();
  const auto roster = Ids(kg.Roster("lakers"));
  for (const char *id : {"lebron_james", "kyle_kuzma", "brandon_ingram"}) {
    CHECK(roster.count(id) == 1);
  }
  const auto leaders = kg.TeamLeaders("lakers");
  CHECK(Ids(leaders.leaders) == std::set<std::string>{"lebron_james"});
  CHECK(Ids(leaders.stars) == std::set<std::string>{"kyle_kuzma", "brandon_ingram"});
  CHECK_THROWS_AS(kg.Roster("lebron_james"), Error);
}

TEST_CASE("head to head matches a brute-force scan of the store file") {
  const KnowledgeGraph kg = Fixture();
  const json raw = json::parse(testing::ReadText(testing::DataPath("kg/fixture_kg.json")));
  // Oracle: games with a PARTICIPATED_IN edge from both teams, sorted by date.
  std::vector<std::pair<std::string, std::string>> expected;
  for (const auto &g : raw["entities"]) {
    if (g["class"] != "GAME") continue;
    bool a = false, b = false;
    for (const auto &t : raw["triples"]) {
      if (t["relation"] != "PARTICIPATED_IN" || t["tail"] != g["id"]) continue;
      a |= t["head"] == "lakers";
      b |= t["head"] == "celtics";
    }
    if (a && b) expected.push_back({g["attributes"]["date"], g["id"]});
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(expected.size() == 2);
  const auto games = kg.HeadToHead("lakers", "celtics");
  REQUIRE(games.size() == expected.size());
  for (size_t i = 0; i < games.size(); ++i) CHECK(games[i]->id == expected[i].second);
  CHECK(kg.HeadToHead("lakers", "lakers").empty());
  CHECK(kg.HeadToHead("lakers", "nuggets").empty());
}

TEST_CASE("fixture schema report") {
  const KnowledgeGraph kg = Fixture();
  CHECK(kg.schema().size() == 27);
  CHECK(kg.schema() == Schema::LoadFile(testing::DataPath("kg/schema.json")));
  const SchemaReport report = kg.ValidateSchema();
  CHECK(report.violations.empty());
  CHECK(report.classes == 3);
  CHECK(report.relations == 4);
  CHECK(report.attributes == 27);
  CHECK(report.triples == static_cast<int>(kg.triples().size()));
}

TEST_CASE("lenient load reports dangling triples") {
  json j = Fixture().ToJson();
  j["triples"].push_back({{"head", "ghost"}, {"relation", "PLAYS_FOR"}, {"tail", "lakers"}});
  CHECK_THROWS_AS(KnowledgeGraph::FromJson(j), Error);
  const KnowledgeGraph lenient = KnowledgeGraph::FromJson(j, {.verify_integrity = false});
  CHECK_FALSE(lenient.ValidateSchema().violations.empty());
}

TEST_CASE("save and load round trip") {
  const KnowledgeGraph kg = Fixture();
  const auto path = testing::ScratchDir("kg_store") / "kg.json";
  kg.Save(path.string());
  CHECK(KnowledgeGraph::Load(path.string()) == kg);
  CHECK_THROWS_AS(KnowledgeGraph::Load((path.parent_path() / "missing.json").string()), Error);
}

TEST_CASE("attribute printing") {
  CHECK(AttributeToString(33000.0) == "33000");
  CHECK(AttributeToString(2.5) == "2.5");
  CHECK(AttributeToString(std::string("West")) == "West");
}

}  // namespace
}  // namespace kgnews
