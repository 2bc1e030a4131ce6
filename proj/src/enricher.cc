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

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "kgnews/error.h"
#include "kgnews/levenshtein.h"

namespace kgnews {
namespace {

using nlohmann::json;

constexpr const char *kHeadToHeadKey = "background:head_to_head";
constexpr const char *kCareerKey = "background:career";

EntityClass ClassOf(MentionKind kind) {
  return kind == MentionKind::kPlayer ? EntityClass::kPlayer : EntityClass::kTeam;
}

json MentionToJson(const Mention &m) {
  return {{"surface", m.surface},
          {"begin", m.begin},
          {"end", m.end},
          {"kind", MentionKindName(m.kind)}};
}

json AttributesToJson(const Entity &e) {
  json attrs = json::object();
  for (const auto &[k, v] : e.attributes) attrs[k] = AttributeToJson(v);
  return attrs;
}

std::string HtmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

bool IsNumericToken(std::string_view t) {
  if (t.empty() || !(t.front() >= '0' && t.front() <= '9')) return false;
  return std::all_of(t.begin(), t.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == ':' || c == '-' || c == ',';
  });
}

// Appends a background paragraph rendered from the first template of `key`.
ArticleParagraph Background(const TemplateLibrary &lib, const std::string &key,
                            const Bindings &bindings, std::vector<Citation> citations) {
  const Rendered r = RenderWithMentions(lib.For(key).front(), bindings);
  ArticleParagraph p;
  p.text = r.text;
  p.provenance = "kg-background";
  p.kind = key;
  p.mentions = r.mentions;
  p.citations = std::move(citations);
  return p;
}

}  // namespace

std::string_view LinkMethodName(LinkMethod method) {
  switch (method) {
    case LinkMethod::kExact: return "exact";
    case LinkMethod::kAlias: return "alias";
    case LinkMethod::kSimilarity: return "similarity";
  }
  return "unknown";
}

std::string_view CitationKindName(Citation::Kind kind) {
  switch (kind) {
    case Citation::Kind::kAttribute: return "attribute";
    case Citation::Kind::kTriple: return "triple";
    case Citation::Kind::kAggregate: return "aggregate";
  }
  return "unknown";
}

std::optional<MentionMatch> MatchMention(const std::string &surface, MentionKind kind,
                                         const KnowledgeGraph &kg, double threshold,
                                         double *best_similarity) {
  const EntityClass cls = ClassOf(kind);
  if (best_similarity) *best_similarity = 0;
  if (auto id = kg.ResolveExact(surface, cls)) return MentionMatch{*id, 1.0, LinkMethod::kExact};
  if (auto id = kg.ResolveAlias(surface, cls)) return MentionMatch{*id, 1.0, LinkMethod::kAlias};
  const Entity *best = nullptr;
  double best_score = -1;
  for (const auto &[id, e] : kg.entities()) {
    if (e.cls != cls) continue;
    double score = NameSimilarity(surface, e.DisplayName());
    for (const auto &alias : e.aliases) score = std::max(score, NameSimilarity(surface, alias));
    // entities() iterates by id, so strict > keeps the smaller id on ties.
    if (score > best_score) {
      best_score = score;
      best = &e;
    }
  }
  if (best_similarity) *best_similarity = std::max(best_score, 0.0);
  if (best && best_score >= threshold) {
    return MentionMatch{best->id, best_score, LinkMethod::kSimilarity};
  }
  return std::nullopt;
}

LinkResult LinkEntities(const Draft &draft, const KnowledgeGraph &kg, double threshold) {
  if (!(threshold > 0 && threshold <= 1)) {
    throw Error(ErrorCode::kConfig, "link threshold must be in (0, 1]");
  }
  LinkResult out;
  for (size_t p = 0; p < draft.paragraphs.size(); ++p) {
    for (const Mention &m : draft.paragraphs[p].mentions) {
      double best = 0;
      if (auto match = MatchMention(m.surface, m.kind, kg, threshold, &best)) {
        out.links.push_back({p, m.begin, m.end, m.surface, m.kind, match->entity_id,
                             match->confidence, match->method});
      } else {
        out.unresolved.push_back({p, m, best});
      }
    }
  }
  return out;
}

std::vector<std::string> BackgroundTemplateKeys() { return {kHeadToHeadKey, kCareerKey}; }

TemplateLibrary LoadBackgroundTemplates(const std::string &path) {
  TemplateLibrary lib = TemplateLibrary::ParseFile(path);
  lib.RequireCoverage(BackgroundTemplateKeys());
  return lib;
}

json Neighborhood(const KnowledgeGraph &kg, const std::string &id) {
  const Entity &self = kg.Get(id);
  std::set<std::string> neighbors;
  json edges = json::array();
  for (const Triple &t : kg.Incident(id)) {
    neighbors.insert(t.head == id ? t.tail : t.head);
    edges.push_back({{"id", t.Id()},
                     {"source", t.head},
                     {"relation", RelationName(t.relation)},
                     {"target", t.tail}});
  }
  neighbors.erase(id);
  auto node = [&](const Entity &e) {
    return json{{"id", e.id}, {"class", EntityClassName(e.cls)}, {"name", e.DisplayName()}};
  };
  json nodes = json::array({node(self)});
  for (const auto &n : neighbors) nodes.push_back(node(kg.Get(n)));
  return {{"nodes", nodes}, {"edges", edges}};
}

Article Enrich(const Draft &draft, const KnowledgeGraph &kg, const LinkResult &links,
               const TemplateLibrary &background, const EnrichPolicy &policy) {
  const auto relation = RelationFromName(policy.history_relation);
  if (!relation) {
    throw Error(ErrorCode::kUnknownRelation, "unknown relation " + policy.history_relation);
  }
  if (*relation != RelationType::kParticipatedIn) {
    throw Error(ErrorCode::kUnknownRelation,
                "history relation must be PARTICIPATED_IN, got " + policy.history_relation);
  }
  if (policy.career_facts && kg.schema().size() > 0 &&
      !kg.schema().Lookup(EntityClass::kPlayer, policy.career_attribute)) {
    throw Error(ErrorCode::kUnknownAttribute,
                "PLAYER has no attribute " + policy.career_attribute);
  }

  Article article;
  article.title = draft.title;
  std::vector<size_t> draft_to_article;
  for (const Paragraph &p : draft.paragraphs) {
    draft_to_article.push_back(article.paragraphs.size());
    article.paragraphs.push_back({p.text, "draft", p.kind, p.quarter, p.mentions, {}});
  }
  for (EntityLink link : links.links) {
    link.paragraph = draft_to_article.at(link.paragraph);
    article.links.push_back(std::move(link));
  }
  for (Unresolved u : links.unresolved) {
    u.paragraph = draft_to_article.at(u.paragraph);
    article.unresolved.push_back(std::move(u));
  }

  std::vector<std::string> teams;
  for (const EntityLink &l : links.links) {
    if (l.kind == MentionKind::kTeam &&
        std::find(teams.begin(), teams.end(), l.entity_id) == teams.end()) {
      teams.push_back(l.entity_id);
    }
  }

  std::vector<ArticleParagraph> appended;
  std::optional<ArticleParagraph> history;
  if (policy.head_to_head && teams.size() >= 2) {
    const auto games = kg.HeadToHead(teams[0], teams[1]);
    const Entity *first_dated = nullptr;
    for (const Entity *g : games) {
      if (g->Attribute("date")) {
        first_dated = g;
        break;
      }
    }
    if (first_dated) {
      Citation count{Citation::Kind::kAggregate, "head_to_head:" + teams[0] + "|" + teams[1],
                     std::to_string(games.size()), {}};
      for (const Entity *g : games) count.sources.push_back(g->id);
      const std::string since = AttributeToString(*first_dated->Attribute("date"));
      Citation date{Citation::Kind::kAttribute, first_dated->id + ".date", since, {}};
      Bindings b{{"Count", {count.value, std::nullopt}},
                 {"Since", {since, std::nullopt}},
                 {"Team_A", {kg.Get(teams[0]).DisplayName(), MentionKind::kTeam}},
                 {"Team_B", {kg.Get(teams[1]).DisplayName(), MentionKind::kTeam}}};
      history = Background(background, kHeadToHeadKey, b, {count, date});
    }
  }
  if (policy.career_facts) {
    for (const std::string &team : teams) {
      const Entity &team_entity = kg.Get(team);
      for (const Entity *leader : kg.TeamLeaders(team).leaders) {
        const AttributeValue *career = leader->Attribute(policy.career_attribute);
        if (!career) continue;
        const std::string value = AttributeToString(*career);
        std::vector<Citation> cites{{Citation::Kind::kAttribute,
                                     leader->id + "." + policy.career_attribute, value, {}}};
        const Triple plays{leader->id, RelationType::kPlaysFor, team};
        if (kg.triples().count(plays)) {
          cites.push_back({Citation::Kind::kTriple, plays.Id(), "", {}});
        }
        Bindings b{{"Player", {leader->DisplayName(), MentionKind::kPlayer}},
                   {"Team", {team_entity.DisplayName(), MentionKind::kTeam}},
                   {"Value", {value, std::nullopt}}};
        appended.push_back(Background(background, kCareerKey, b, std::move(cites)));
      }
    }
  }

  // Splice background paragraphs in; indices of later draft paragraphs shift.
  auto insert_at = [&](size_t pos, ArticleParagraph p) {
    article.paragraphs.insert(article.paragraphs.begin() + static_cast<long>(pos), std::move(p));
    for (auto &l : article.links) {
      if (l.paragraph >= pos) ++l.paragraph;
    }
    for (auto &u : article.unresolved) {
      if (u.paragraph >= pos) ++u.paragraph;
    }
  };
  if (history) insert_at(article.paragraphs.empty() ? 0 : 1, std::move(*history));
  for (auto &p : appended) insert_at(article.paragraphs.size(), std::move(p));

  // Background mentions name KG entities directly.
  for (size_t i = 0; i < article.paragraphs.size(); ++i) {
    const ArticleParagraph &p = article.paragraphs[i];
    if (p.provenance != "kg-background") continue;
    for (const Mention &m : p.mentions) {
      if (auto id = kg.ResolveExact(m.surface, ClassOf(m.kind))) {
        article.links.push_back({i, m.begin, m.end, m.surface, m.kind, *id, 1.0,
                                 LinkMethod::kExact});
      }
    }
  }
  std::stable_sort(article.links.begin(), article.links.end(),
                   [](const EntityLink &a, const EntityLink &b) {
                     return std::tie(a.paragraph, a.begin) < std::tie(b.paragraph, b.begin);
                   });

  std::set<std::string> linked;
  for (const auto &l : article.links) linked.insert(l.entity_id);
  for (const auto &id : linked) {
    const Entity &e = kg.Get(id);
    json payload = Neighborhood(kg, id);
    payload["id"] = id;
    payload["class"] = EntityClassName(e.cls);
    payload["name"] = e.DisplayName();
    payload["attributes"] = AttributesToJson(e);
    payload["aliases"] = e.aliases;
    article.payloads[id] = std::move(payload);
  }
  return article;
}

json ArticleToJson(const Article &article) {
  json paragraphs = json::array();
  for (const auto &p : article.paragraphs) {
    json mentions = json::array();
    for (const auto &m : p.mentions) mentions.push_back(MentionToJson(m));
    json citations = json::array();
    for (const auto &c : p.citations) {
      json cj = {{"kind", CitationKindName(c.kind)}, {"id", c.id}, {"value", c.value}};
      if (!c.sources.empty()) cj["sources"] = c.sources;
      citations.push_back(std::move(cj));
    }
    paragraphs.push_back({{"text", p.text},
                          {"provenance", p.provenance},
                          {"kind", p.kind},
                          {"quarter", p.quarter},
                          {"mentions", mentions},
                          {"citations", citations}});
  }
  json links = json::array();
  for (const auto &l : article.links) {
    links.push_back({{"paragraph", l.paragraph},
                     {"begin", l.begin},
                     {"end", l.end},
                     {"surface", l.surface},
                     {"kind", MentionKindName(l.kind)},
                     {"entity_id", l.entity_id},
                     {"confidence", l.confidence},
                     {"method", LinkMethodName(l.method)}});
  }
  json unresolved = json::array();
  for (const auto &u : article.unresolved) {
    json m = MentionToJson(u.mention);
    m["paragraph"] = u.paragraph;
    m["best_similarity"] = u.best_similarity;
    unresolved.push_back(std::move(m));
  }
  return {{"title", article.title},
          {"paragraphs", paragraphs},
          {"links", links},
          {"unresolved", unresolved},
          {"entities", article.payloads}};
}

std::string ExportJson(const Article &article) { return ArticleToJson(article).dump(2) + "\n"; }

std::string ExportHtml(const Article &article) {
  std::string html =
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" +
      HtmlEscape(article.title) + "</title>\n</head>\n<body>\n<article>\n<h1>" +
      HtmlEscape(article.title) + "</h1>\n";
  for (size_t i = 0; i < article.paragraphs.size(); ++i) {
    const auto &p = article.paragraphs[i];
    html += "<p data-provenance=\"" + p.provenance + "\">";
    size_t pos = 0;
    for (const auto &l : article.links) {
      if (l.paragraph != i || l.begin < pos) continue;
      html += HtmlEscape(std::string_view(p.text).substr(pos, l.begin - pos));
      html += "<span class=\"kg-entity\" data-entity-id=\"" + HtmlEscape(l.entity_id) +
              "\" data-kind=\"" + std::string(MentionKindName(l.kind)) + "\" data-method=\"" +
              std::string(LinkMethodName(l.method)) + "\">" +
              HtmlEscape(std::string_view(p.text).substr(l.begin, l.end - l.begin)) + "</span>";
      pos = l.end;
    }
    html += HtmlEscape(std::string_view(p.text).substr(pos)) + "</p>\n";
  }
  std::string payload = article.payloads.dump();
  for (size_t at = 0; (at = payload.find("</", at)) != std::string::npos; at += 3) {
    payload.replace(at, 2, "<\\/");
  }
  html += "</article>\n<script type=\"application/json\" id=\"kg-entities\">" + payload +
          "</script>\n</body>\n</html>\n";
  return html;
}

std::vector<std::string> NumericTokens(const std::string &text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string word = text.substr(i, j - i);
    const auto first = word.find_first_not_of("([\"'");
    const auto last = word.find_last_not_of(".,;:!?)]\"'");
    if (first != std::string::npos && last != std::string::npos && first <= last) {
      word = word.substr(first, last - first + 1);
      if (IsNumericToken(word)) out.push_back(word);
    }
    i = j;
  }
  return out;
}

std::vector<std::string> AuditBackground(const Article &article, const KnowledgeGraph &kg) {
  std::vector<std::string> violations;
  for (size_t i = 0; i < article.paragraphs.size(); ++i) {
    const auto &p = article.paragraphs[i];
    if (p.provenance != "kg-background") continue;
    const std::string where = "paragraph " + std::to_string(i) + ": ";
    if (p.citations.empty()) violations.push_back(where + "no citation");
    std::set<std::string> values;
    for (const Citation &c : p.citations) {
      switch (c.kind) {
        case Citation::Kind::kAttribute: {
          const auto dot = c.id.rfind('.');
          const Entity *e = dot == std::string::npos ? nullptr : kg.Find(c.id.substr(0, dot));
          const AttributeValue *v = e ? e->Attribute(c.id.substr(dot + 1)) : nullptr;
          if (!v) {
            violations.push_back(where + "attribute " + c.id + " not in graph");
          } else if (AttributeToString(*v) != c.value) {
            violations.push_back(where + "attribute " + c.id + " differs from graph");
          }
          break;
        }
        case Citation::Kind::kTriple: {
          const auto a = c.id.find('|');
          const auto b = c.id.rfind('|');
          const auto rel = a == b ? std::nullopt : RelationFromName(c.id.substr(a + 1, b - a - 1));
          if (!rel || !kg.triples().count({c.id.substr(0, a), *rel, c.id.substr(b + 1)})) {
            violations.push_back(where + "triple " + c.id + " not in graph");
          }
          break;
        }
        case Citation::Kind::kAggregate: {
          for (const auto &s : c.sources) {
            if (!kg.Find(s)) violations.push_back(where + "aggregate member " + s + " not in graph");
          }
          if (c.sources.empty() || std::to_string(c.sources.size()) != c.value) {
            violations.push_back(where + "aggregate " + c.id + " does not count its sources");
          }
          break;
        }
      }
      values.insert(c.value);
    }
    for (const auto &token : NumericTokens(p.text)) {
      if (!values.count(token)) violations.push_back(where + "uncited number " + token);
    }
  }
  return violations;
}

}  // namespace kgnews
