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


// Slot templates and draft composition.
//
// A template is text with markers of the form [#Name], Name in
// [A-Za-z0-9_]+. Template files are sectioned plain text:
//
//   # comment
//   [trend:STALEMATE]
//   text: [#Team_A] and [#Team_B] are locked in a tight battle.
//   source: original wording, kept for reference
//
// Each "text:" line starts a new template in the current section.

#ifndef KGNEWS_TEMPLATER_H_
#define KGNEWS_TEMPLATER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgnews/broadcast.h"
#include "kgnews/kee.h"

namespace kgnews {

class KnowledgeGraph;

struct Template {
  std::string id;
  std::string applies_to;  // section key, e.g. "trend:STALEMATE"
  std::string text;
  std::set<std::string> required_slots;
  std::string source;  // optional verbatim original

  bool operator==(const Template &) const = default;
};

// Parses the markers of `text`. Throws kMalformedMarker.
std::set<std::string> ParseSlots(const std::string &text);

Template MakeTemplate(std::string id, std::string applies_to, std::string text);

enum class MentionKind { kPlayer, kTeam };

std::string_view MentionKindName(MentionKind kind);

struct Mention {
  std::string surface;
  size_t begin = 0;  // byte offsets into the paragraph text
  size_t end = 0;
  MentionKind kind = MentionKind::kTeam;

  bool operator==(const Mention &) const = default;
};

struct Binding {
  std::string value;
  std::optional<MentionKind> mention;
};

using Bindings = std::map<std::string, Binding>;

struct Rendered {
  std::string text;
  std::vector<Mention> mentions;
};

// Replaces every marker. Throws kMissingSlot naming the first unbound slot;
// extra bindings are ignored.
std::string Render(const Template &t, const std::map<std::string, std::string> &bindings);
Rendered RenderWithMentions(const Template &t, const Bindings &bindings);

class TemplateLibrary {
 public:
  void Add(Template t);
  const std::vector<Template> &For(const std::string &key) const;
  bool Has(const std::string &key) const;
  std::vector<std::string> Keys() const;
  size_t size() const;

  // Throws kCoverage listing the missing keys.
  void RequireCoverage(const std::vector<std::string> &keys) const;

  // Parses without coverage checks. Throws kIo, kSchema, kMalformedMarker.
  static TemplateLibrary Parse(std::istream &in, const std::string &name = "templates");
  static TemplateLibrary ParseFile(const std::string &path);

  bool operator==(const TemplateLibrary &) const = default;

 private:
  std::map<std::string, std::vector<Template>> by_key_;
};

std::string TrendKey(TrendLabel label);
std::string EventKey(KeyEventKind kind);
inline constexpr const char *kClosingKey = "closing";
inline constexpr const char *kClosingTiedKey = "closing_tied";

// Keys a news template library must cover.
std::vector<std::string> NewsTemplateKeys();

// Parses and checks news coverage.
TemplateLibrary LoadTemplates(const std::string &path);

struct Paragraph {
  std::string text;
  std::string kind;  // "quarter", "game" or "player_summary"
  int quarter = 0;
  std::vector<Mention> mentions;

  bool operator==(const Paragraph &) const = default;
};

struct Draft {
  std::string title;
  std::vector<Paragraph> paragraphs;

  bool operator==(const Draft &) const = default;

  std::string Text() const;  // paragraphs separated by blank lines
  nlohmann::json ToJson() const;
  static Draft FromJson(const nlohmann::json &j);
};

struct ComposeOptions {
  int events_per_segment = 2;
  uint64_t seed = 0;
};

// "first quarter", ..., "first overtime"; "game" for the whole-game scope.
std::string PeriodName(int quarter);

// One paragraph per scope: trend sentence, up to N key events per segment
// (the segment's top scorer first, the rest drawn uniformly), and a closing
// score sentence.
Draft ComposeDraft(const GameLog &log, const std::vector<ScopeAnalysis> &analysis,
                   const TemplateLibrary &library, const ComposeOptions &options);

struct PlayerLine {
  std::string name;
  int points = 0;
  int rebounds = 0;
  int assists = 0;

  bool operator==(const PlayerLine &) const = default;
};

// Points, rebounds and assists credited to `name` in the log.
PlayerLine CountPlayer(const GameLog &log, const std::string &name);

// Leader then star players of `team` (a log team name or KG id) with their
// box-score line; empty text when none of them appear. Throws kUnknownTeam.
Paragraph PlayerSummary(const GameLog &log, const KnowledgeGraph &kg,
                        const std::string &team);

}  // namespace kgnews

#endif  // KGNEWS_TEMPLATER_H_
