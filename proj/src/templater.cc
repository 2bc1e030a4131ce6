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

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "kgnews/error.h"
#include "kgnews/kg_store.h"
#include "kgnews/random.h"

namespace kgnews {
namespace {

using nlohmann::json;

bool IsSlotChar(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_';
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

struct Marker {
  size_t begin;
  size_t end;  // one past ']'
  std::string name;
};

std::vector<Marker> Markers(const std::string &text) {
  std::vector<Marker> out;
  size_t pos = 0;
  while ((pos = text.find("[#", pos)) != std::string::npos) {
    size_t i = pos + 2;
    while (i < text.size() && IsSlotChar(text[i])) ++i;
    if (i == pos + 2 || i >= text.size() || text[i] != ']') {
      throw Error(ErrorCode::kMalformedMarker,
                  "bad slot marker at offset " + std::to_string(pos) + " in \"" + text + "\"");
    }
    out.push_back({pos, i + 1, text.substr(pos + 2, i - pos - 2)});
    pos = i + 1;
  }
  return out;
}

std::string Plural(int n, std::string_view noun) {
  return std::to_string(n) + " " + std::string(noun) + (n == 1 ? "" : "s");
}

std::string ScoreText(int home, int away) {
  return std::to_string(home) + ":" + std::to_string(away);
}

// Accumulates sentences into one paragraph, shifting mention offsets.
class ParagraphBuilder {
 public:
  void Append(const Rendered &r) {
    if (r.text.empty()) return;
    if (!p_.text.empty()) p_.text += ' ';
    const size_t offset = p_.text.size();
    p_.text += r.text;
    for (Mention m : r.mentions) {
      m.begin += offset;
      m.end += offset;
      p_.mentions.push_back(std::move(m));
    }
  }
  Paragraph Take(std::string kind, int quarter) {
    p_.kind = std::move(kind);
    p_.quarter = quarter;
    return std::move(p_);
  }

 private:
  Paragraph p_;
};

template <typename T>
const T &Pick(const std::vector<T> &items, Rng &rng) {
  return items[UniformIndex(rng, items.size())];
}

Bindings TeamBindings(const GameLog &log, const std::string &period) {
  return {{"Team_A", {log.home_team, MentionKind::kTeam}},
          {"Team_B", {log.away_team, MentionKind::kTeam}},
          {"Period", {period, std::nullopt}}};
}

Bindings TrendBindings(const GameLog &log, const ScopeAnalysis &a) {
  const auto &s = a.series.samples;
  const auto &raw = a.segmentation.raw;
  const PlayEvent &last = log.events[s.back().event];
  Bindings b = TeamBindings(log, PeriodName(a.series.quarter));
  const int lead = std::max(s[raw.max_index].dif, 0);
  const int deficit = std::max(-s[raw.min_index].dif, 0);
  b["Max_Lead"] = {std::to_string(lead), std::nullopt};
  b["Max_Lead_Points"] = {Plural(lead, "point"), std::nullopt};
  b["Max_Deficit"] = {std::to_string(deficit), std::nullopt};
  b["Max_Deficit_Points"] = {Plural(deficit, "point"), std::nullopt};
  b["Swing_Points"] = {Plural(s[raw.max_index].dif - s[raw.min_index].dif, "point"),
                       std::nullopt};
  b["Final_Margin"] = {std::to_string(std::abs(s.back().dif)), std::nullopt};
  b["Score"] = {ScoreText(last.score_home, last.score_away), std::nullopt};
  return b;
}

Bindings EventBindings(const GameLog &log, const KeyEvent &e) {
  Bindings b = TeamBindings(log, PeriodName(e.quarter));
  if (!e.player.empty()) b["Player"] = {e.player, MentionKind::kPlayer};
  b["Team"] = {e.team, MentionKind::kTeam};
  b["Opponent"] = {e.team == log.home_team ? log.away_team : log.home_team,
                   MentionKind::kTeam};
  b["Scores"] = {Plural(e.result, "point"), std::nullopt};
  b["Points"] = b["Scores"];
  b["Count"] = {std::to_string(e.result), std::nullopt};
  b["Times"] = {e.result == 1   ? "once"
                : e.result == 2 ? "twice"
                                : std::to_string(e.result) + " times",
                std::nullopt};
  b["Score"] = {ScoreText(e.score_home, e.score_away), std::nullopt};
  return b;
}

Rendered Closing(const GameLog &log, const ScopeAnalysis &a, const TemplateLibrary &library,
                 Rng &rng) {
  const PlayEvent &last = log.events[a.series.samples.back().event];
  const int dif = last.score_home - last.score_away;
  Bindings b = TeamBindings(log, PeriodName(a.series.quarter));
  b["Score"] = {ScoreText(last.score_home, last.score_away), std::nullopt};
  if (dif == 0) return RenderWithMentions(Pick(library.For(kClosingTiedKey), rng), b);
  b["Leader"] = {dif > 0 ? log.home_team : log.away_team, MentionKind::kTeam};
  b["Trailer"] = {dif > 0 ? log.away_team : log.home_team, MentionKind::kTeam};
  b["Margin"] = {std::to_string(std::abs(dif)), std::nullopt};
  b["Margin_Points"] = {Plural(std::abs(dif), "point"), std::nullopt};
  return RenderWithMentions(Pick(library.For(kClosingKey), rng), b);
}

// The segment's top scorer first, then up to n-1 further events drawn
// uniformly without replacement, kept in time order.
std::vector<const KeyEvent *> SelectEvents(const std::vector<const KeyEvent *> &candidates,
                                           int n, Rng &rng) {
  std::vector<const KeyEvent *> out;
  std::vector<const KeyEvent *> rest;
  for (const KeyEvent *e : candidates) {
    if (out.empty() && n > 0 && e->kind == KeyEventKind::kHighestScore) {
      out.push_back(e);
    } else {
      rest.push_back(e);
    }
  }
  const size_t want = std::min(rest.size(), static_cast<size_t>(std::max(n, 0)) - out.size());
  for (size_t i = 0; i < want; ++i) {
    std::swap(rest[i], rest[i + UniformIndex(rng, rest.size() - i)]);
  }
  rest.resize(want);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](const KeyEvent *a, const KeyEvent *b) {
                     return (a - candidates.front()) < (b - candidates.front());
                   });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::string JoinList(const std::vector<std::string> &parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += i + 1 == parts.size() ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::set<std::string> ParseSlots(const std::string &text) {
  std::set<std::string> slots;
  for (const Marker &m : Markers(text)) slots.insert(m.name);
  return slots;
}

Template MakeTemplate(std::string id, std::string applies_to, std::string text) {
  Template t{std::move(id), std::move(applies_to), std::move(text), {}, {}};
  t.required_slots = ParseSlots(t.text);
  return t;
}

std::string_view MentionKindName(MentionKind kind) {
  return kind == MentionKind::kPlayer ? "player" : "team";
}

Rendered RenderWithMentions(const Template &t, const Bindings &bindings) {
  Rendered out;
  size_t pos = 0;
  for (const Marker &m : Markers(t.text)) {
    auto it = bindings.find(m.name);
    if (it == bindings.end()) {
      throw Error(ErrorCode::kMissingSlot, m.name + " (template " + t.id + ")");
    }
    // Values are inserted verbatim, so one carrying a marker would leak it.
    if (it->second.value.find("[#") != std::string::npos) {
      throw Error(ErrorCode::kMalformedMarker, "value bound to " + m.name + " contains \"[#\"");
    }
    out.text.append(t.text, pos, m.begin - pos);
    if (it->second.mention) {
      out.mentions.push_back({it->second.value, out.text.size(),
                              out.text.size() + it->second.value.size(),
                              *it->second.mention});
    }
    out.text += it->second.value;
    pos = m.end;
  }
  out.text.append(t.text, pos);
  return out;
}

std::string Render(const Template &t, const std::map<std::string, std::string> &bindings) {
  Bindings b;
  for (const auto &[k, v] : bindings) b[k] = {v, std::nullopt};
  return RenderWithMentions(t, b).text;
}

void TemplateLibrary::Add(Template t) {
  t.required_slots = ParseSlots(t.text);
  by_key_[t.applies_to].push_back(std::move(t));
}

const std::vector<Template> &TemplateLibrary::For(const std::string &key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end() || it->second.empty()) {
    throw Error(ErrorCode::kCoverage, "no template for " + key);
  }
  return it->second;
}

bool TemplateLibrary::Has(const std::string &key) const {
  auto it = by_key_.find(key);
  return it != by_key_.end() && !it->second.empty();
}

std::vector<std::string> TemplateLibrary::Keys() const {
  std::vector<std::string> keys;
  for (const auto &[k, v] : by_key_) {
    if (!v.empty()) keys.push_back(k);
  }
  return keys;
}

size_t TemplateLibrary::size() const {
  size_t n = 0;
  for (const auto &[_, v] : by_key_) n += v.size();
  return n;
}

void TemplateLibrary::RequireCoverage(const std::vector<std::string> &keys) const {
  std::string missing;
  for (const auto &k : keys) {
    if (!Has(k)) missing += (missing.empty() ? "" : ", ") + k;
  }
  if (!missing.empty()) throw Error(ErrorCode::kCoverage, "no template for " + missing);
}

TemplateLibrary TemplateLibrary::Parse(std::istream &in, const std::string &name) {
  TemplateLibrary lib;
  std::string section;
  std::string line;
  int lineno = 0;
  Template *current = nullptr;
  auto where = [&] { return name + ":" + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']' && t.find("[#") != 0) {
      section = t.substr(1, t.size() - 2);
      const auto colon = section.find(':');
      const std::string kind = section.substr(0, colon);
      const std::string arg = colon == std::string::npos ? "" : section.substr(colon + 1);
      const bool ok = (kind == "trend" && TrendLabelFromName(arg)) ||
                      (kind == "event" && KeyEventKindFromName(arg)) ||
                      (kind == "background" && !arg.empty()) ||
                      section == kClosingKey || section == kClosingTiedKey;
      if (!ok) throw Error(ErrorCode::kSchema, where() + "unknown section [" + section + "]");
      current = nullptr;
      continue;
    }
    const auto colon = t.find(':');
    const std::string key = colon == std::string::npos ? "" : Trim(t.substr(0, colon));
    const std::string value = colon == std::string::npos ? "" : Trim(t.substr(colon + 1));
    if (key == "text") {
      if (section.empty()) throw Error(ErrorCode::kSchema, where() + "text outside a section");
      try {
        auto &list = lib.by_key_[section];
        list.push_back(MakeTemplate(section + "#" + std::to_string(list.size() + 1), section,
                                    value));
        current = &list.back();
      } catch (const Error &e) {
        throw Error(e.code(), where() + e.what());
      }
    } else if (key == "source") {
      if (!current) throw Error(ErrorCode::kSchema, where() + "source without a template");
      current->source = value;
    } else {
      throw Error(ErrorCode::kSchema, where() + "expected 'text:' or 'source:'");
    }
  }
  return lib;
}

TemplateLibrary TemplateLibrary::ParseFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return Parse(in, path);
}

std::string TrendKey(TrendLabel label) { return "trend:" + std::string(TrendLabelName(label)); }
std::string EventKey(KeyEventKind kind) { return "event:" + std::string(KeyEventKindName(kind)); }

std::vector<std::string> NewsTemplateKeys() {
  std::vector<std::string> keys;
  for (TrendLabel l : AllTrendLabels()) keys.push_back(TrendKey(l));
  for (KeyEventKind k : EmittedKeyEventKinds()) keys.push_back(EventKey(k));
  keys.push_back(kClosingKey);
  keys.push_back(kClosingTiedKey);
  return keys;
}

TemplateLibrary LoadTemplates(const std::string &path) {
  TemplateLibrary lib = TemplateLibrary::ParseFile(path);
  lib.RequireCoverage(NewsTemplateKeys());
  return lib;
}

std::string Draft::Text() const {
  std::string out;
  for (const auto &p : paragraphs) {
    if (!out.empty()) out += "\n\n";
    out += p.text;
  }
  return out;
}

json Draft::ToJson() const {
  json paragraphs_json = json::array();
  for (const auto &p : paragraphs) {
    json mentions = json::array();
    for (const auto &m : p.mentions) {
      mentions.push_back({{"surface", m.surface},
                          {"begin", m.begin},
                          {"end", m.end},
                          {"kind", MentionKindName(m.kind)}});
    }
    paragraphs_json.push_back(
        {{"kind", p.kind}, {"quarter", p.quarter}, {"text", p.text}, {"mentions", mentions}});
  }
  return {{"title", title}, {"paragraphs", paragraphs_json}};
}

Draft Draft::FromJson(const json &j) {
  try {
    Draft d;
    d.title = j.value("title", "");
    for (const auto &p : j.at("paragraphs")) {
      Paragraph para;
      para.kind = p.value("kind", "quarter");
      para.quarter = p.value("quarter", 0);
      para.text = p.at("text").get<std::string>();
      for (const auto &m : p.value("mentions", json::array())) {
        const std::string kind = m.at("kind").get<std::string>();
        if (kind != "player" && kind != "team") {
          throw Error(ErrorCode::kSchema, "unknown mention kind " + kind);
        }
        Mention mention{m.at("surface").get<std::string>(), m.at("begin").get<size_t>(),
                        m.at("end").get<size_t>(),
                        kind == "player" ? MentionKind::kPlayer : MentionKind::kTeam};
        if (mention.end > para.text.size() || mention.begin > mention.end ||
            para.text.compare(mention.begin, mention.end - mention.begin, mention.surface) != 0) {
          throw Error(ErrorCode::kSchema, "mention span does not match its text");
        }
        para.mentions.push_back(std::move(mention));
      }
      d.paragraphs.push_back(std::move(para));
    }
    return d;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, std::string("draft: ") + e.what());
  }
}

std::string PeriodName(int quarter) {
  static const char *kOrdinals[] = {"first", "second", "third", "fourth",
                                    "fifth", "sixth",  "seventh"};
  if (quarter <= 0) return "game";
  if (quarter <= 4) return std::string(kOrdinals[quarter - 1]) + " quarter";
  const int ot = quarter - 4;
  if (ot <= 7) return std::string(kOrdinals[ot - 1]) + " overtime";
  return "overtime " + std::to_string(ot);
}

Draft ComposeDraft(const GameLog &log, const std::vector<ScopeAnalysis> &analysis,
                   const TemplateLibrary &library, const ComposeOptions &options) {
  if (options.events_per_segment < 0) {
    throw Error(ErrorCode::kConfig, "events per segment must be >= 0");
  }
  Rng rng(SubstreamSeed(options.seed, "templater"));
  Draft draft;
  if (!log.events.empty()) {
    const PlayEvent &last = log.events.back();
    draft.title = log.home_team + " " + std::to_string(last.score_home) + ", " +
                  log.away_team + " " + std::to_string(last.score_away);
  }
  for (const ScopeAnalysis &a : analysis) {
    ParagraphBuilder paragraph;
    const TrendLabel label = a.segmentation.segments.front().label;
    paragraph.Append(
        RenderWithMentions(Pick(library.For(TrendKey(label)), rng), TrendBindings(log, a)));
    for (size_t s = 0; s < a.segmentation.segments.size(); ++s) {
      std::vector<const KeyEvent *> candidates;
      for (const KeyEvent &e : a.events) {
        if (e.segment == s) candidates.push_back(&e);
      }
      if (candidates.empty()) continue;
      for (const KeyEvent *e : SelectEvents(candidates, options.events_per_segment, rng)) {
        paragraph.Append(RenderWithMentions(Pick(library.For(EventKey(e->kind)), rng),
                                            EventBindings(log, *e)));
      }
    }
    paragraph.Append(Closing(log, a, library, rng));
    draft.paragraphs.push_back(
        paragraph.Take(a.series.quarter > 0 ? "quarter" : "game", a.series.quarter));
  }
  return draft;
}

PlayerLine CountPlayer(const GameLog &log, const std::string &name) {
  PlayerLine line{name, 0, 0, 0};
  for (const PlayEvent &e : log.events) {
    if (e.actor != name) continue;
    if (IsScoring(e.code)) line.points += e.points;
    if (IsRebound(e.code)) ++line.rebounds;
    if (e.code == EventCode::kAssist) ++line.assists;
  }
  return line;
}

Paragraph PlayerSummary(const GameLog &log, const KnowledgeGraph &kg, const std::string &team) {
  const auto team_id = kg.Resolve(team, EntityClass::kTeam);
  if (!team_id) throw Error(ErrorCode::kUnknownTeam, team + " is not in the knowledge graph");
  const auto leaders = kg.TeamLeaders(*team_id);

  auto lines_for = [&](const std::vector<const Entity *> &players) {
    std::vector<PlayerLine> lines;
    for (const Entity *p : players) {
      PlayerLine line = CountPlayer(log, p->DisplayName());
      for (const auto &alias : p->aliases) {
        const PlayerLine extra = CountPlayer(log, alias);
        line.points += extra.points;
        line.rebounds += extra.rebounds;
        line.assists += extra.assists;
      }
      if (line.points + line.rebounds + line.assists > 0) lines.push_back(line);
    }
    std::stable_sort(lines.begin(), lines.end(), [](const auto &a, const auto &b) {
      return a.points != b.points ? a.points > b.points : a.name < b.name;
    });
    return lines;
  };
  const auto leader_lines = lines_for(leaders.leaders);
  const auto star_lines = lines_for(leaders.stars);
  if (leader_lines.empty() && star_lines.empty()) return {"", "player_summary", 0, {}};

  Paragraph p;
  p.kind = "player_summary";
  p.text = "On the ";
  p.mentions.push_back({team, p.text.size(), p.text.size() + team.size(), MentionKind::kTeam});
  p.text += team + " side, ";
  const size_t total = leader_lines.size() + star_lines.size();
  size_t index = 0;
  auto clause = [&](const PlayerLine &line, std::string_view role) {
    if (index > 0) p.text += index + 1 == total ? ", and " : ", ";
    p.text += role;
    p.mentions.push_back(
        {line.name, p.text.size(), p.text.size() + line.name.size(), MentionKind::kPlayer});
    std::vector<std::string> stats;
    if (line.points) stats.push_back(Plural(line.points, "point"));
    if (line.rebounds) stats.push_back(Plural(line.rebounds, "rebound"));
    if (line.assists) stats.push_back(Plural(line.assists, "assist"));
    p.text += line.name + " had " + JoinList(stats);
    ++index;
  };
  for (const auto &line : leader_lines) clause(line, "leader ");
  for (size_t i = 0; i < star_lines.size(); ++i) clause(star_lines[i], i == 0 ? "star player " : "");
  p.text += ", which helped the team immensely.";
  return p;
}

}  // namespace kgnews
