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


// Typed in-memory knowledge graph of players, teams and games, persisted as
// a single JSON document.

#ifndef KGNEWS_KG_STORE_H_
#define KGNEWS_KG_STORE_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace kgnews {

enum class EntityClass { kPlayer, kTeam, kGame };

enum class RelationType {
  kPlaysFor,           // PLAYER → TEAM, current effectiveness
  kHistoricalMatchup,  // TEAM → TEAM, historical confrontation
  kParticipatedIn,     // TEAM → GAME, participation in competitions
  kFormerTeam,         // PLAYER → TEAM
};

enum class AttributeType { kString, kNumber, kDate };

enum class TeamRole { kLeader, kStar };

std::string_view EntityClassName(EntityClass c);
std::optional<EntityClass> EntityClassFromName(std::string_view name);
std::string_view RelationName(RelationType r);
std::optional<RelationType> RelationFromName(std::string_view name);
const std::vector<RelationType> &AllRelations();
std::string_view TeamRoleName(TeamRole r);

struct RelationSignature {
  EntityClass head;
  EntityClass tail;
};
RelationSignature SignatureOf(RelationType r);

// Dates are ISO-8601 strings so that they sort lexicographically.
using AttributeValue = std::variant<std::string, double>;

std::string AttributeToString(const AttributeValue &v);
// Whole numbers serialize as JSON integers.
nlohmann::json AttributeToJson(const AttributeValue &v);

struct Entity {
  std::string id;
  EntityClass cls = EntityClass::kPlayer;
  std::map<std::string, AttributeValue> attributes;
  std::set<std::string> aliases;

  bool operator==(const Entity &) const = default;

  // The "name" attribute when present, otherwise the id.
  std::string DisplayName() const;
  const AttributeValue *Attribute(const std::string &name) const;
};

struct Triple {
  std::string head;
  RelationType relation = RelationType::kPlaysFor;
  std::string tail;

  auto operator<=>(const Triple &) const = default;
  // Stable citation id, e.g. "lebron_james|PLAYS_FOR|lakers".
  std::string Id() const;
};

struct TeamRoleTag {
  std::string team;
  std::string player;
  TeamRole role = TeamRole::kLeader;

  auto operator<=>(const TeamRoleTag &) const = default;
};

struct AttributeDecl {
  std::string name;
  AttributeType type = AttributeType::kString;

  bool operator==(const AttributeDecl &) const = default;
};

// Declared attribute names per entity class, loaded from configuration.
class Schema {
 public:
  void Declare(EntityClass cls, std::string name, AttributeType type);
  std::optional<AttributeType> Lookup(EntityClass cls, const std::string &name) const;
  const std::vector<AttributeDecl> &For(EntityClass cls) const;
  // Number of (class, attribute) declarations.
  int size() const;

  nlohmann::json ToJson() const;
  static Schema FromJson(const nlohmann::json &j);
  static Schema LoadFile(const std::string &path);

  bool operator==(const Schema &) const = default;

 private:
  std::map<EntityClass, std::vector<AttributeDecl>> decls_;
};

struct SchemaReport {
  std::map<EntityClass, int> entity_counts;
  int classes = 0;     // classes with at least one entity
  int relations = 0;   // relation types used by at least one triple
  int attributes = 0;  // declared attribute names
  int triples = 0;
  std::vector<std::string> violations;

  nlohmann::json ToJson() const;
};

struct LoadOptions {
  // When false, referential problems (dangling triples, bad signatures) are
  // kept so that ValidateSchema can report them.
  bool verify_integrity = true;
};

// Single-writer store: concurrent const access is safe, mutation needs
// exclusive access.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(Schema schema) : schema_(std::move(schema)) {}

  const Schema &schema() const { return schema_; }
  const std::map<std::string, Entity> &entities() const { return entities_; }
  const std::set<Triple> &triples() const { return triples_; }
  const std::set<TeamRoleTag> &role_tags() const { return role_tags_; }

  std::string UpsertEntity(Entity e);
  void AddTriple(const Triple &t);
  void AddRoleTag(const TeamRoleTag &tag);

  const Entity *Find(const std::string &id) const;
  const Entity &Get(const std::string &id) const;
  std::optional<std::string> ResolveAlias(std::string_view alias, EntityClass cls) const;
  // Exact match on the id or the "name" attribute.
  std::optional<std::string> ResolveExact(std::string_view text, EntityClass cls) const;
  // Exact match first, then alias.
  std::optional<std::string> Resolve(std::string_view text, EntityClass cls) const;

  std::vector<const Entity *> Roster(const std::string &team) const;

  struct Leaders {
    std::vector<const Entity *> leaders;
    std::vector<const Entity *> stars;
  };
  Leaders TeamLeaders(const std::string &team) const;

  // Games both teams took part in, ordered by date then id.
  std::vector<const Entity *> HeadToHead(const std::string &a, const std::string &b) const;

  // Triples with `id` as head or tail.
  std::vector<Triple> Incident(const std::string &id) const;

  SchemaReport ValidateSchema() const;

  nlohmann::json ToJson() const;
  static KnowledgeGraph FromJson(const nlohmann::json &j, const LoadOptions &options = {});
  void Save(const std::string &path) const;
  static KnowledgeGraph Load(const std::string &path, const LoadOptions &options = {});

  bool operator==(const KnowledgeGraph &) const = default;

 private:
  void CheckAttributes(const Entity &e) const;
  const Entity &RequireTeam(const std::string &team) const;

  Schema schema_;
  std::map<std::string, Entity> entities_;
  std::set<Triple> triples_;
  std::set<TeamRoleTag> role_tags_;
};

}  // namespace kgnews

#endif  // KGNEWS_KG_STORE_H_
