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
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "kgnews/error.h"

namespace kgnews {
namespace {

using nlohmann::json;

constexpr EntityClass kClasses[] = {EntityClass::kPlayer, EntityClass::kTeam,
                                    EntityClass::kGame};

bool IsIsoDate(const std::string &s) {
  // YYYY-MM-DD, optionally followed by a time part.
  if (s.size() < 10) return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return s[4] == '-' && s[7] == '-' && (s.size() == 10 || s[10] == 'T');
}

std::string_view AttributeTypeName(AttributeType t) {
  switch (t) {
    case AttributeType::kString: return "string";
    case AttributeType::kNumber: return "number";
    case AttributeType::kDate: return "date";
  }
  return "string";
}

AttributeType AttributeTypeFromName(const std::string &name) {
  if (name == "string") return AttributeType::kString;
  if (name == "number") return AttributeType::kNumber;
  if (name == "date") return AttributeType::kDate;
  throw Error(ErrorCode::kSchema, "unknown attribute type '" + name + "'");
}

// Returns an empty string when the value fits the declared type.
std::string TypeProblem(const AttributeValue &v, AttributeType type) {
  switch (type) {
    case AttributeType::kNumber:
      if (!std::holds_alternative<double>(v)) return "expected a number";
      if (!std::isfinite(std::get<double>(v))) return "non-finite number";
      return {};
    case AttributeType::kDate:
      if (!std::holds_alternative<std::string>(v) ||
          !IsIsoDate(std::get<std::string>(v))) {
        return "expected an ISO-8601 date";
      }
      return {};
    case AttributeType::kString:
      if (!std::holds_alternative<std::string>(v)) return "expected a string";
      return {};
  }
  return {};
}

std::string DateOf(const Entity &e) {
  const AttributeValue *v = e.Attribute("date");
  return v ? AttributeToString(*v) : std::string();
}

template <typename T>
T RequireEnum(std::optional<T> v, const std::string &what, const std::string &name) {
  if (!v) throw Error(ErrorCode::kSchema, "unknown " + what + " '" + name + "'");
  return *v;
}

}  // namespace

std::string_view EntityClassName(EntityClass c) {
  switch (c) {
    case EntityClass::kPlayer: return "PLAYER";
    case EntityClass::kTeam: return "TEAM";
    case EntityClass::kGame: return "GAME";
  }
  return "PLAYER";
}

std::optional<EntityClass> EntityClassFromName(std::string_view name) {
  for (EntityClass c : kClasses) {
    if (EntityClassName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view RelationName(RelationType r) {
  switch (r) {
    case RelationType::kPlaysFor: return "PLAYS_FOR";
    case RelationType::kHistoricalMatchup: return "HISTORICAL_MATCHUP";
    case RelationType::kParticipatedIn: return "PARTICIPATED_IN";
    case RelationType::kFormerTeam: return "FORMER_TEAM";
  }
  return "PLAYS_FOR";
}

const std::vector<RelationType> &AllRelations() {
  static const std::vector<RelationType> all = {
      RelationType::kPlaysFor, RelationType::kHistoricalMatchup,
      RelationType::kParticipatedIn, RelationType::kFormerTeam};
  return all;
}

std::optional<RelationType> RelationFromName(std::string_view name) {
  for (RelationType r : AllRelations()) {
    if (RelationName(r) == name) return r;
  }
  return std::nullopt;
}

std::string_view TeamRoleName(TeamRole r) {
  return r == TeamRole::kLeader ? "LEADER" : "STAR";
}

RelationSignature SignatureOf(RelationType r) {
  switch (r) {
    case RelationType::kPlaysFor:
    case RelationType::kFormerTeam:
      return {EntityClass::kPlayer, EntityClass::kTeam};
    case RelationType::kHistoricalMatchup:
      return {EntityClass::kTeam, EntityClass::kTeam};
    case RelationType::kParticipatedIn:
      return {EntityClass::kTeam, EntityClass::kGame};
  }
  return {EntityClass::kPlayer, EntityClass::kTeam};
}

std::string AttributeToString(const AttributeValue &v) {
  if (const auto *s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (d == std::floor(d) && std::fabs(d) < 1e15) {
    return std::to_string(static_cast<long long>(d));
  }
  std::ostringstream out;
  out.precision(17);
  out << d;
  return out.str();
}

json AttributeToJson(const AttributeValue &v) {
  if (const auto *s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (d == std::floor(d) && std::fabs(d) < 1e15) return static_cast<long long>(d);
  return d;
}

std::string Entity::DisplayName() const {
  const AttributeValue *v = Attribute("name");
  return v ? AttributeToString(*v) : id;
}

const AttributeValue *Entity::Attribute(const std::string &name) const {
  auto it = attributes.find(name);
  return it == attributes.end() ? nullptr : &it->second;
}

std::string Triple::Id() const {
  return head + "|" + std::string(RelationName(relation)) + "|" + tail;
}

// ---------------------------------------------------------------------------
// Schema

void Schema::Declare(EntityClass cls, std::string name, AttributeType type) {
  auto &list = decls_[cls];
  for (auto &d : list) {
    if (d.name == name) {
      d.type = type;
      return;
    }
  }
  list.push_back({std::move(name), type});
}

std::optional<AttributeType> Schema::Lookup(EntityClass cls, const std::string &name) const {
  auto it = decls_.find(cls);
  if (it == decls_.end()) return std::nullopt;
  for (const auto &d : it->second) {
    if (d.name == name) return d.type;
  }
  return std::nullopt;
}

const std::vector<AttributeDecl> &Schema::For(EntityClass cls) const {
  static const std::vector<AttributeDecl> kEmpty;
  auto it = decls_.find(cls);
  return it == decls_.end() ? kEmpty : it->second;
}

int Schema::size() const {
  int n = 0;
  for (const auto &[cls, list] : decls_) n += static_cast<int>(list.size());
  return n;
}

json Schema::ToJson() const {
  json j = json::object();
  for (const auto &[cls, list] : decls_) {
    json arr = json::array();
    for (const auto &d : list) {
      arr.push_back({{"name", d.name}, {"type", AttributeTypeName(d.type)}});
    }
    j[std::string(EntityClassName(cls))] = arr;
  }
  return j;
}

Schema Schema::FromJson(const json &j) {
  Schema schema;
  if (j.is_null()) return schema;
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "schema must be an object");
  for (const auto &[cls_name, arr] : j.items()) {
    const EntityClass cls = RequireEnum(EntityClassFromName(cls_name), "class", cls_name);
    if (!arr.is_array()) throw Error(ErrorCode::kSchema, "schema entry must be an array");
    for (const auto &d : arr) {
      if (!d.is_object() || !d.contains("name") || !d["name"].is_string()) {
        throw Error(ErrorCode::kSchema, "attribute declaration needs a name");
      }
      schema.Declare(cls, d["name"].get<std::string>(),
                     AttributeTypeFromName(d.value("type", std::string("string"))));
    }
  }
  return schema;
}

Schema Schema::LoadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    json j = json::parse(in);
    return FromJson(j.contains("schema") ? j["schema"] : j);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// KnowledgeGraph

void KnowledgeGraph::CheckAttributes(const Entity &e) const {
  for (const auto &[name, value] : e.attributes) {
    auto type = schema_.Lookup(e.cls, name);
    if (!type) {
      throw Error(ErrorCode::kUnknownAttribute,
                  "'" + name + "' is not declared for " +
                      std::string(EntityClassName(e.cls)));
    }
    const std::string problem = TypeProblem(value, *type);
    if (!problem.empty()) {
      throw Error(ErrorCode::kSchema, e.id + "." + name + ": " + problem);
    }
  }
  if (e.cls == EntityClass::kPlayer && schema_.Lookup(e.cls, "status")) {
    const AttributeValue *status = e.Attribute("status");
    const std::string s = status ? AttributeToString(*status) : "";
    if (s != "active" && s != "retired") {
      throw Error(ErrorCode::kSchema, e.id + ": player status must be active or retired");
    }
  }
}

std::string KnowledgeGraph::UpsertEntity(Entity e) {
  if (e.id.empty()) throw Error(ErrorCode::kInvalidArgument, "entity id is empty");
  CheckAttributes(e);
  for (const auto &[id, other] : entities_) {
    if (id == e.id || other.cls != e.cls) continue;
    for (const auto &alias : e.aliases) {
      if (other.aliases.count(alias)) {
        throw Error(ErrorCode::kAliasCollision,
                    "alias '" + alias + "' already names " + id);
      }
    }
  }
  auto it = entities_.find(e.id);
  if (it != entities_.end() && it->second.cls != e.cls && !Incident(e.id).empty()) {
    throw Error(ErrorCode::kSignature, "cannot change the class of " + e.id +
                                           " while triples reference it");
  }
  std::string id = e.id;
  entities_[id] = std::move(e);
  return id;
}

void KnowledgeGraph::AddTriple(const Triple &t) {
  const Entity *head = Find(t.head);
  const Entity *tail = Find(t.tail);
  if (!head || !tail) {
    throw Error(ErrorCode::kDanglingEndpoint,
                "triple " + t.Id() + " references a missing entity");
  }
  const RelationSignature sig = SignatureOf(t.relation);
  if (head->cls != sig.head || tail->cls != sig.tail) {
    throw Error(ErrorCode::kSignature,
                std::string(RelationName(t.relation)) + " expects " +
                    std::string(EntityClassName(sig.head)) + " -> " +
                    std::string(EntityClassName(sig.tail)) + ", got " +
                    std::string(EntityClassName(head->cls)) + " -> " +
                    std::string(EntityClassName(tail->cls)));
  }
  triples_.insert(t);
}

void KnowledgeGraph::AddRoleTag(const TeamRoleTag &tag) {
  RequireTeam(tag.team);
  const Entity *player = Find(tag.player);
  if (!player || player->cls != EntityClass::kPlayer) {
    throw Error(ErrorCode::kUnknownEntity, "no player '" + tag.player + "'");
  }
  role_tags_.insert(tag);
}

const Entity *KnowledgeGraph::Find(const std::string &id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity &KnowledgeGraph::Get(const std::string &id) const {
  const Entity *e = Find(id);
  if (!e) throw Error(ErrorCode::kUnknownEntity, "no entity '" + id + "'");
  return *e;
}

const Entity &KnowledgeGraph::RequireTeam(const std::string &team) const {
  const Entity *e = Find(team);
  if (!e || e->cls != EntityClass::kTeam) {
    throw Error(ErrorCode::kUnknownEntity, "no team '" + team + "'");
  }
  return *e;
}

std::optional<std::string> KnowledgeGraph::ResolveAlias(std::string_view alias,
                                                        EntityClass cls) const {
  for (const auto &[id, e] : entities_) {
    if (e.cls == cls && e.aliases.count(std::string(alias))) return id;
  }
  return std::nullopt;
}

std::optional<std::string> KnowledgeGraph::ResolveExact(std::string_view text,
                                                        EntityClass cls) const {
  const std::string key(text);
  if (const Entity *e = Find(key); e && e->cls == cls) return key;
  for (const auto &[id, e] : entities_) {
    if (e.cls == cls && e.DisplayName() == key) return id;
  }
  return std::nullopt;
}

std::optional<std::string> KnowledgeGraph::Resolve(std::string_view text,
                                                   EntityClass cls) const {
  if (auto id = ResolveExact(text, cls)) return id;
  return ResolveAlias(text, cls);
}

std::vector<const Entity *> KnowledgeGraph::Roster(const std::string &team) const {
  RequireTeam(team);
  std::vector<const Entity *> out;
  for (const Triple &t : triples_) {
    if (t.relation == RelationType::kPlaysFor && t.tail == team) {
      out.push_back(&Get(t.head));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Entity *a, const Entity *b) { return a->id < b->id; });
  return out;
}

KnowledgeGraph::Leaders KnowledgeGraph::TeamLeaders(const std::string &team) const {
  RequireTeam(team);
  Leaders out;
  for (const TeamRoleTag &tag : role_tags_) {
    if (tag.team != team) continue;
    const Entity *p = Find(tag.player);
    if (!p) continue;
    (tag.role == TeamRole::kLeader ? out.leaders : out.stars).push_back(p);
  }
  return out;
}

std::vector<const Entity *> KnowledgeGraph::HeadToHead(const std::string &a,
                                                       const std::string &b) const {
  RequireTeam(a);
  RequireTeam(b);
  if (a == b) return {};
  std::set<std::string> games_a, games_b, both;
  for (const Triple &t : triples_) {
    if (t.relation != RelationType::kParticipatedIn) continue;
    if (t.head == a) games_a.insert(t.tail);
    if (t.head == b) games_b.insert(t.tail);
  }
  std::set_intersection(games_a.begin(), games_a.end(), games_b.begin(), games_b.end(),
                        std::inserter(both, both.end()));
  for (const auto &[id, e] : entities_) {
    if (e.cls != EntityClass::kGame) continue;
    const AttributeValue *home = e.Attribute("home_team");
    const AttributeValue *away = e.Attribute("away_team");
    if (!home || !away) continue;
    const std::string h = AttributeToString(*home), w = AttributeToString(*away);
    if ((h == a && w == b) || (h == b && w == a)) both.insert(id);
  }
  std::vector<const Entity *> out;
  for (const auto &id : both) out.push_back(&Get(id));
  std::sort(out.begin(), out.end(), [](const Entity *x, const Entity *y) {
    const std::string dx = DateOf(*x), dy = DateOf(*y);
    return dx != dy ? dx < dy : x->id < y->id;
  });
  return out;
}

std::vector<Triple> KnowledgeGraph::Incident(const std::string &id) const {
  std::vector<Triple> out;
  for (const Triple &t : triples_) {
    if (t.head == id || t.tail == id) out.push_back(t);
  }
  return out;
}

json SchemaReport::ToJson() const {
  json counts = json::object();
  for (const auto &[cls, n] : entity_counts) {
    counts[std::string(EntityClassName(cls))] = n;
  }
  return {{"entity_counts", counts}, {"classes", classes},
          {"relations", relations},  {"attributes", attributes},
          {"triples", triples},      {"violations", violations}};
}

SchemaReport KnowledgeGraph::ValidateSchema() const {
  SchemaReport report;
  report.attributes = schema_.size();
  report.triples = static_cast<int>(triples_.size());
  for (const auto &[id, e] : entities_) {
    ++report.entity_counts[e.cls];
    try {
      CheckAttributes(e);
    } catch (const Error &err) {
      report.violations.push_back(id + ": " + err.what());
    }
  }
  report.classes = static_cast<int>(report.entity_counts.size());

  std::set<RelationType> used;
  for (const Triple &t : triples_) {
    used.insert(t.relation);
    const Entity *head = Find(t.head);
    const Entity *tail = Find(t.tail);
    if (!head || !tail) {
      report.violations.push_back("dangling triple " + t.Id());
      continue;
    }
    const RelationSignature sig = SignatureOf(t.relation);
    if (head->cls != sig.head || tail->cls != sig.tail) {
      report.violations.push_back("signature violation " + t.Id());
    }
  }
  report.relations = static_cast<int>(used.size());

  std::map<std::pair<EntityClass, std::string>, std::string> alias_owner;
  for (const auto &[id, e] : entities_) {
    for (const auto &alias : e.aliases) {
      auto [it, inserted] = alias_owner.emplace(std::make_pair(e.cls, alias), id);
      if (!inserted) {
        report.violations.push_back("alias '" + alias + "' shared by " + it->second +
                                    " and " + id);
      }
    }
  }

  std::map<std::string, std::pair<int, int>> roles;  // team → (leaders, stars)
  for (const TeamRoleTag &tag : role_tags_) {
    const Entity *team = Find(tag.team);
    const Entity *player = Find(tag.player);
    if (!team || team->cls != EntityClass::kTeam || !player ||
        player->cls != EntityClass::kPlayer) {
      report.violations.push_back("role tag " + tag.team + "/" + tag.player +
                                  " references a missing entity");
      continue;
    }
    auto &[leaders, stars] = roles[tag.team];
    (tag.role == TeamRole::kLeader ? leaders : stars)++;
  }
  for (const auto &[team, counts] : roles) {
    if (counts.first == 0) {
      report.violations.push_back("team " + team + " has role tags but no leader");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Persistence

json KnowledgeGraph::ToJson() const {
  json entities = json::array();
  for (const auto &[id, e] : entities_) {
    json attrs = json::object();
    for (const auto &[name, value] : e.attributes) attrs[name] = AttributeToJson(value);
    entities.push_back({{"id", id},
                        {"class", EntityClassName(e.cls)},
                        {"attributes", attrs},
                        {"aliases", e.aliases}});
  }
  json triples = json::array();
  for (const Triple &t : triples_) {
    triples.push_back(
        {{"head", t.head}, {"relation", RelationName(t.relation)}, {"tail", t.tail}});
  }
  json tags = json::array();
  for (const TeamRoleTag &tag : role_tags_) {
    tags.push_back(
        {{"team", tag.team}, {"player", tag.player}, {"role", TeamRoleName(tag.role)}});
  }
  return {{"schema", schema_.ToJson()},
          {"entities", entities},
          {"triples", triples},
          {"role_tags", tags}};
}

KnowledgeGraph KnowledgeGraph::FromJson(const json &j, const LoadOptions &options) {
  if (j.is_null()) return KnowledgeGraph();
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "store must be a JSON object");
  try {
    KnowledgeGraph kg(Schema::FromJson(j.value("schema", json())));
    for (const auto &ej : j.value("entities", json::array())) {
      Entity e;
      e.id = ej.at("id").get<std::string>();
      const std::string cls = ej.at("class").get<std::string>();
      e.cls = RequireEnum(EntityClassFromName(cls), "entity class", cls);
      const json attributes = ej.value("attributes", json::object());
      for (const auto &[name, value] : attributes.items()) {
        if (value.is_number()) {
          e.attributes[name] = value.get<double>();
        } else if (value.is_string()) {
          e.attributes[name] = value.get<std::string>();
        } else {
          throw Error(ErrorCode::kSchema, e.id + "." + name + ": bad attribute value");
        }
      }
      for (const auto &a : ej.value("aliases", json::array())) {
        e.aliases.insert(a.get<std::string>());
      }
      if (kg.entities_.count(e.id)) {
        throw Error(ErrorCode::kSchema, "duplicate entity id '" + e.id + "'");
      }
      if (options.verify_integrity) {
        kg.UpsertEntity(std::move(e));
      } else {
        std::string id = e.id;
        kg.entities_[id] = std::move(e);
      }
    }
    for (const auto &tj : j.value("triples", json::array())) {
      const std::string rel = tj.at("relation").get<std::string>();
      Triple t{tj.at("head").get<std::string>(),
               RequireEnum(RelationFromName(rel), "relation type", rel),
               tj.at("tail").get<std::string>()};
      if (options.verify_integrity) {
        kg.AddTriple(t);
      } else {
        kg.triples_.insert(t);
      }
    }
    for (const auto &rj : j.value("role_tags", json::array())) {
      const std::string role = rj.at("role").get<std::string>();
      TeamRoleTag tag{rj.at("team").get<std::string>(), rj.at("player").get<std::string>(),
                      TeamRole::kLeader};
      if (role == "STAR") {
        tag.role = TeamRole::kStar;
      } else if (role != "LEADER") {
        throw Error(ErrorCode::kSchema, "unknown role '" + role + "'");
      }
      if (options.verify_integrity) {
        kg.AddRoleTag(tag);
      } else {
        kg.role_tags_.insert(tag);
      }
    }
    return kg;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kSchema) throw;
    throw Error(ErrorCode::kSchema, e.what());
  }
}

void KnowledgeGraph::Save(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << ToJson().dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

KnowledgeGraph KnowledgeGraph::Load(const std::string &path, const LoadOptions &options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return KnowledgeGraph();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
  return FromJson(j, options);
}

}  // namespace kgnews
