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


// Entity linking, knowledge-graph background injection and article export.

#ifndef KGNEWS_ENRICHER_H_
#define KGNEWS_ENRICHER_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgnews/kg_store.h"
#include "kgnews/templater.h"

namespace kgnews {

enum class LinkMethod { kExact, kAlias, kSimilarity };

std::string_view LinkMethodName(LinkMethod method);

struct EntityLink {
  size_t paragraph = 0;
  size_t begin = 0;
  size_t end = 0;
  std::string surface;
  MentionKind kind = MentionKind::kTeam;
  std::string entity_id;
  double confidence = 1.0;
  LinkMethod method = LinkMethod::kExact;

  bool operator==(const EntityLink &) const = default;
};

struct Unresolved {
  size_t paragraph = 0;
  Mention mention;
  double best_similarity = 0;

  bool operator==(const Unresolved &) const = default;
};

struct LinkResult {
  std::vector<EntityLink> links;
  std::vector<Unresolved> unresolved;
};

struct MentionMatch {
  std::string entity_id;
  double confidence = 0;
  LinkMethod method = LinkMethod::kExact;
};

// Exact id/name, then alias, then the most similar name or alias of the
// mention's class if it reaches `threshold` (ties: smaller id).
std::optional<MentionMatch> MatchMention(const std::string &surface, MentionKind kind,
                                         const KnowledgeGraph &kg, double threshold,
                                         double *best_similarity = nullptr);

LinkResult LinkEntities(const Draft &draft, const KnowledgeGraph &kg, double threshold = 0.85);

struct Citation {
  enum class Kind { kAttribute, kTriple, kAggregate };
  Kind kind = Kind::kAttribute;
  std::string id;     // "entity.attribute", triple id, or aggregate name
  std::string value;  // the cited fact as printed
  std::vector<std::string> sources;  // aggregate members (entity ids)

  bool operator==(const Citation &) const = default;
};

std::string_view CitationKindName(Citation::Kind kind);

struct ArticleParagraph {
  std::string text;
  std::string provenance;  // "draft" or "kg-background"
  std::string kind;        // draft paragraph kind or background key
  int quarter = 0;
  std::vector<Mention> mentions;
  std::vector<Citation> citations;

  bool operator==(const ArticleParagraph &) const = default;
};

struct Article {
  std::string title;
  std::vector<ArticleParagraph> paragraphs;
  std::vector<EntityLink> links;  // paragraph indices refer to `paragraphs`
  std::vector<Unresolved> unresolved;
  // Per linked entity: attributes plus its 1-hop neighborhood.
  nlohmann::json payloads = nlohmann::json::object();

  bool operator==(const Article &) const = default;
};

struct EnrichPolicy {
  bool head_to_head = true;
  bool career_facts = true;
  std::string history_relation = "PARTICIPATED_IN";
  std::string career_attribute = "career_points";
};

// Background sentence keys a background template set must cover.
std::vector<std::string> BackgroundTemplateKeys();
TemplateLibrary LoadBackgroundTemplates(const std::string &path);

// Draft paragraphs are copied unchanged; a head-to-head sentence follows the
// first paragraph and one career sentence per leader of each linked team is
// appended. Throws kUnknownRelation / kUnknownAttribute for a bad policy.
Article Enrich(const Draft &draft, const KnowledgeGraph &kg, const LinkResult &links,
               const TemplateLibrary &background, const EnrichPolicy &policy = {});

// Nodes (self first, then neighbors by id) and edges incident to `id`.
nlohmann::json Neighborhood(const KnowledgeGraph &kg, const std::string &id);

nlohmann::json ArticleToJson(const Article &article);
std::string ExportJson(const Article &article);
std::string ExportHtml(const Article &article);

// Numeric tokens of `text` (digit runs joined by '.', ':', '-', ',').
std::vector<std::string> NumericTokens(const std::string &text);

// Violations of the no-fabrication rule; empty when the article is clean.
std::vector<std::string> AuditBackground(const Article &article, const KnowledgeGraph &kg);

}  // namespace kgnews

#endif  // KGNEWS_ENRICHER_H_
