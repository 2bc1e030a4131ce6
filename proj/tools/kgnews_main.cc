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


// kgnews command-line entry point.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kgnews/broadcast.h"
#include "kgnews/enricher.h"
#include "kgnews/error.h"
#include "kgnews/kee.h"
#include "kgnews/kg_store.h"
#include "kgnews/kgc_train.h"
#include "kgnews/pipeline.h"
#include "kgnews/random.h"
#include "kgnews/rouge.h"
#include "kgnews/templater.h"

namespace {

using kgnews::Error;
using kgnews::ErrorCode;
using nlohmann::json;

void Emit(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
}

std::string ReadText(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json ReadJson(const std::string &path) {
  try {
    return json::parse(ReadText(path));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
}

// Options shared by every subcommand that reads a game log.
struct GameFlags {
  std::string log;
  std::string home;
  std::string away;
  std::string game_id;
  double quarter_length = 720;

  void Register(CLI::App *app, bool required = true) {
    auto *opt = app->add_option("--log", log, "play-by-play file (.csv or .jsonl)");
    if (required) opt->required();
    app->add_option("--home", home, "home team as written in the log")->required(required);
    app->add_option("--away", away, "away team (default: the other team in the log)");
    app->add_option("--game-id", game_id, "game id (default: file stem)");
    app->add_option("--quarter-length", quarter_length, "seconds per quarter")
        ->capture_default_str();
  }
  kgnews::GameLog Read() const {
    return kgnews::ReadBroadcastFile(log, {home, away, game_id, quarter_length});
  }
};

// Defaults < --config file < explicit flags.
struct ConfigFlags {
  std::string config;
  std::map<std::string, std::string> overrides;

  void Register(CLI::App *app) {
    app->add_option("--config", config, "INI config file")->check(CLI::ExistingFile);
  }
  kgnews::PipelineConfig Resolve() const {
    kgnews::PipelineConfig c;
    if (!config.empty()) c.Apply(kgnews::PipelineConfig::ReadIni(config));
    c.Apply(overrides);
    c.Validate();
    return c;
  }
};

template <typename T>
void Override(CLI::Option *opt, std::map<std::string, std::string> &into, const std::string &key,
              const T &value) {
  if (opt->count() == 0) return;
  std::ostringstream ss;
  if constexpr (std::is_same_v<T, bool>) {
    ss << (value ? "true" : "false");
  } else {
    ss << value;
  }
  into[key] = ss.str();
}

kgnews::EntityClass ParseClass(const std::string &name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
  auto cls = kgnews::EntityClassFromName(upper);
  if (!cls) throw Error(ErrorCode::kInvalidArgument, "unknown entity class " + name);
  return *cls;
}

std::vector<kgnews::kgc::EntityPair> ParsePairs(const std::vector<std::string> &items) {
  std::vector<kgnews::kgc::EntityPair> out;
  for (const auto &item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "support pair must be head:tail, got " + item);
    }
    out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
  }
  return out;
}

std::vector<kgnews::kgc::EntityPair> RelationPairs(const kgnews::KnowledgeGraph &kg,
                                                   const std::string &relation) {
  const auto rel = kgnews::RelationFromName(relation);
  if (!rel) throw Error(ErrorCode::kUnknownRelation, "unknown relation " + relation);
  std::vector<kgnews::kgc::EntityPair> pairs;
  for (const auto &t : kg.triples()) {
    if (t.relation == *rel) pairs.emplace_back(t.head, t.tail);
  }
  return pairs;
}

json LossCurve(const std::vector<double> &loss) {
  return {{"epochs", loss.size()},
          {"first", loss.empty() ? 0.0 : loss.front()},
          {"last", loss.empty() ? 0.0 : loss.back()}};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knowledge-graph assisted sports news writing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kgnews 1.0.0");

  // ingest
  auto *ingest = app.add_subcommand("ingest", "parse and validate a play-by-play log");
  GameFlags ingest_game;
  std::string ingest_format = "jsonl", ingest_out;
  ingest_game.Register(ingest);
  ingest->add_option("--format", ingest_format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  ingest->add_option("--out", ingest_out, "output file (default stdout)");

  // kg
  auto *kg_cmd = app.add_subcommand("kg", "knowledge graph store");
  kg_cmd->require_subcommand(1);
  auto *kg_build = kg_cmd->add_subcommand("build", "validate a graph source and write the store");
  std::string build_input, build_schema, build_out;
  kg_build->add_option("--input", build_input, "graph source JSON")->required();
  kg_build->add_option("--schema", build_schema, "schema JSON replacing the source's schema");
  kg_build->add_option("--out", build_out, "store file")->required();
  auto *kg_validate = kg_cmd->add_subcommand("validate", "report schema statistics and violations");
  std::string validate_kg;
  kg_validate->add_option("--kg", validate_kg, "store file")->required();
  auto *kg_query = kg_cmd->add_subcommand("query", "look up entities and relations");
  std::string query_kg, query_entity, query_roster, query_leaders, query_resolve,
      query_class = "player";
  std::vector<std::string> query_h2h;
  kg_query->add_option("--kg", query_kg, "store file")->required();
  auto *q_entity = kg_query->add_option("--entity", query_entity, "entity id");
  auto *q_roster = kg_query->add_option("--roster", query_roster, "team id");
  auto *q_leaders = kg_query->add_option("--leaders", query_leaders, "team id");
  auto *q_h2h = kg_query->add_option("--h2h", query_h2h, "two team ids")->expected(2);
  auto *q_resolve = kg_query->add_option("--resolve", query_resolve, "name or alias");
  kg_query->add_option("--class", query_class, "class for --resolve")->capture_default_str();
  q_entity->excludes(q_roster, q_leaders, q_h2h, q_resolve);
  q_roster->excludes(q_leaders, q_h2h, q_resolve);
  q_leaders->excludes(q_h2h, q_resolve);
  q_h2h->excludes(q_resolve);

  // kgc
  auto *kgc_cmd = app.add_subcommand("kgc", "few-shot knowledge graph completion");
  kgc_cmd->require_subcommand(1);
  auto *kgc_train = kgc_cmd->add_subcommand("train", "meta-train on a relation or the cycle benchmark");
  ConfigFlags train_config;
  train_config.Register(kgc_train);
  std::string train_kg, train_relation, train_out;
  bool train_cycle = false, train_inductive = false;
  uint64_t train_seed = 0;
  int train_epochs = 0, train_k = 0, train_dim = 0, train_tasks = 8, train_queries = 6;
  double train_lr = 0;
  kgc_train->add_option("--kg", train_kg, "store file");
  kgc_train->add_option("--relation", train_relation, "relation to learn");
  kgc_train->add_flag("--cycle", train_cycle, "use the 20-entity successor ring");
  kgc_train->add_flag("--inductive", train_inductive,
                      "cycle: remove the evaluation edges from training");
  auto *o_seed = kgc_train->add_option("--seed", train_seed, "global seed");
  auto *o_epochs = kgc_train->add_option("--epochs", train_epochs, "training epochs");
  auto *o_k = kgc_train->add_option("--k", train_k, "support size K");
  auto *o_dim = kgc_train->add_option("--dim", train_dim, "embedding width d");
  auto *o_lr = kgc_train->add_option("--lr", train_lr, "learning rate");
  kgc_train->add_option("--tasks", train_tasks, "tasks sampled for training")->capture_default_str();
  kgc_train->add_option("--queries", train_queries, "queries per task")->capture_default_str();
  kgc_train->add_option("--out", train_out, "checkpoint file");

  auto *kgc_predict = kgc_cmd->add_subcommand("predict", "rank tail candidates");
  std::string predict_ckpt, predict_head, predict_kg, predict_relation;
  std::vector<std::string> predict_support;
  int predict_top = 5, predict_k = 3;
  kgc_predict->add_option("--checkpoint", predict_ckpt, "checkpoint file")->required();
  kgc_predict->add_option("--head", predict_head, "head entity id")->required();
  kgc_predict->add_option("--support", predict_support, "support pairs head:tail");
  kgc_predict->add_option("--kg", predict_kg, "take support pairs from this store");
  kgc_predict->add_option("--relation", predict_relation, "relation for --kg support");
  kgc_predict->add_option("--k", predict_k, "support pairs taken from --kg")->capture_default_str();
  kgc_predict->add_option("--top", predict_top, "candidates to print")->capture_default_str();

  auto *kgc_gradcheck = kgc_cmd->add_subcommand("gradcheck", "compare gradients to finite differences");
  double gc_eps = 1e-5, gc_tol = 1e-4;
  int gc_dim = 4, gc_k = 1, gc_layers = 1, gc_queries = 2;
  uint64_t gc_seed = 0;
  kgc_gradcheck->add_option("--epsilon", gc_eps, "finite-difference step")->capture_default_str();
  kgc_gradcheck->add_option("--tolerance", gc_tol, "max relative error")->capture_default_str();
  kgc_gradcheck->add_option("--dim", gc_dim, "embedding width")->capture_default_str();
  kgc_gradcheck->add_option("--k", gc_k, "support size")->capture_default_str();
  kgc_gradcheck->add_option("--layers", gc_layers, "encoder layers")->capture_default_str();
  kgc_gradcheck->add_option("--queries", gc_queries, "queries")->capture_default_str();
  kgc_gradcheck->add_option("--seed", gc_seed, "seed")->capture_default_str();

  // kee
  auto *kee_cmd = app.add_subcommand("kee", "key event extraction");
  kee_cmd->require_subcommand(1);
  auto *kee_segment = kee_cmd->add_subcommand("segment", "trend segmentation per quarter");
  auto *kee_events = kee_cmd->add_subcommand("events", "segments plus key events");
  GameFlags seg_game, ev_game;
  ConfigFlags seg_config, ev_config;
  bool seg_whole = false, ev_whole = false;
  std::string ev_kg, seg_out, ev_out;
  seg_game.Register(kee_segment);
  seg_config.Register(kee_segment);
  auto *o_seg_whole = kee_segment->add_flag("--whole-game", seg_whole, "one scope for the game");
  kee_segment->add_option("--out", seg_out, "output file (default stdout)");
  ev_game.Register(kee_events);
  ev_config.Register(kee_events);
  auto *o_ev_whole = kee_events->add_flag("--whole-game", ev_whole, "one scope for the game");
  kee_events->add_option("--kg", ev_kg, "drop events inconsistent with this roster");
  kee_events->add_option("--out", ev_out, "output file (default stdout)");

  // write
  auto *write = app.add_subcommand("write", "compose a news draft");
  GameFlags write_game;
  ConfigFlags write_config;
  std::string write_kg, write_templates, write_out;
  uint64_t write_seed = 0;
  int write_n = 2;
  write_game.Register(write);
  write_config.Register(write);
  write->add_option("--kg", write_kg, "store for roster checks and player summaries");
  auto *o_w_templates = write->add_option("--templates", write_templates, "template file");
  auto *o_w_seed = write->add_option("--seed", write_seed, "global seed");
  auto *o_w_n = write->add_option("--events-per-segment", write_n, "key events per segment");
  write->add_option("--out", write_out, "draft JSON (default stdout)");

  // enrich
  auto *enrich = app.add_subcommand("enrich", "link entities and add background facts");
  ConfigFlags enrich_config;
  std::string enrich_draft, enrich_kg, enrich_out, enrich_background, enrich_format;
  double enrich_threshold = 0.85;
  enrich_config.Register(enrich);
  enrich->add_option("--draft", enrich_draft, "draft JSON")->required();
  enrich->add_option("--kg", enrich_kg, "store file")->required();
  auto *o_e_bg = enrich->add_option("--background", enrich_background, "background templates");
  auto *o_e_thr = enrich->add_option("--threshold", enrich_threshold, "similarity threshold");
  enrich->add_option("--format", enrich_format, "json or html (default: from --out)")
      ->check(CLI::IsMember({"json", "html"}));
  enrich->add_option("--out", enrich_out, "article file (default stdout)");

  // rouge
  auto *rouge = app.add_subcommand("rouge", "ROUGE F1 of candidates against references");
  std::string rouge_cand, rouge_ref, rouge_metrics = "1,2,L", rouge_json, rouge_method = "candidate";
  rouge->add_option("--cand", rouge_cand, "candidate directory")->required();
  rouge->add_option("--ref", rouge_ref, "reference directory")->required();
  rouge->add_option("--metrics", rouge_metrics, "comma-separated: 1,2,L")->capture_default_str();
  rouge->add_option("--method", rouge_method, "row label in the table")->capture_default_str();
  rouge->add_option("--json", rouge_json, "also write JSON here");

  // run
  auto *run = app.add_subcommand("run", "full pipeline");
  ConfigFlags run_config;
  std::string run_log, run_kg, run_home, run_away, run_templates, run_out;
  uint64_t run_seed = 0;
  run_config.Register(run);
  auto *o_r_log = run->add_option("--log", run_log, "play-by-play file");
  auto *o_r_kg = run->add_option("--kg", run_kg, "store file");
  auto *o_r_home = run->add_option("--home", run_home, "home team");
  auto *o_r_away = run->add_option("--away", run_away, "away team");
  auto *o_r_tpl = run->add_option("--templates", run_templates, "template file");
  auto *o_r_out = run->add_option("--out-dir", run_out, "output directory");
  auto *o_r_seed = run->add_option("--seed", run_seed, "global seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const kgnews::GameLog log = ingest_game.Read();
      std::ostringstream out;
      kgnews::WriteBroadcast(log, out,
                             ingest_format == "csv" ? kgnews::BroadcastFormat::kCsv
                                                    : kgnews::BroadcastFormat::kJsonLines);
      Emit(ingest_out, out.str());
      std::cerr << "ingested " << log.events.size() << " events, " << log.home_team << " vs "
                << log.away_team << "\n";
    } else if (*kg_build) {
      json source = ReadJson(build_input);
      if (!build_schema.empty()) {
        json schema = ReadJson(build_schema);
        source["schema"] = schema.contains("schema") ? schema["schema"] : schema;
      }
      const auto kg = kgnews::KnowledgeGraph::FromJson(source);
      kg.Save(build_out);
      std::cout << kg.ValidateSchema().ToJson().dump(2) << "\n";
    } else if (*kg_validate) {
      const auto kg = kgnews::KnowledgeGraph::Load(validate_kg, {.verify_integrity = false});
      const auto report = kg.ValidateSchema();
      std::cout << report.ToJson().dump(2) << "\n";
      return report.violations.empty() ? 0 : 1;
    } else if (*kg_query) {
      const auto kg = kgnews::KnowledgeGraph::Load(query_kg);
      json out;
      auto ids = [](const std::vector<const kgnews::Entity *> &es) {
        json a = json::array();
        for (const auto *e : es) a.push_back(e->id);
        return a;
      };
      if (!query_entity.empty()) {
        const auto &e = kg.Get(query_entity);
        out = kgnews::Neighborhood(kg, e.id);
        out["id"] = e.id;
        out["class"] = kgnews::EntityClassName(e.cls);
        json attrs = json::object();
        for (const auto &[k, v] : e.attributes) attrs[k] = kgnews::AttributeToString(v);
        out["attributes"] = attrs;
        out["aliases"] = e.aliases;
      } else if (!query_roster.empty()) {
        out = ids(kg.Roster(query_roster));
      } else if (!query_leaders.empty()) {
        const auto l = kg.TeamLeaders(query_leaders);
        out = {{"leaders", ids(l.leaders)}, {"stars", ids(l.stars)}};
      } else if (query_h2h.size() == 2) {
        out = ids(kg.HeadToHead(query_h2h[0], query_h2h[1]));
      } else if (!query_resolve.empty()) {
        const auto id = kg.Resolve(query_resolve, ParseClass(query_class));
        out = id ? json(*id) : json(nullptr);
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "one of --entity, --roster, --leaders, --h2h, --resolve is required");
      }
      std::cout << out.dump(2) << "\n";
    } else if (*kgc_train) {
      auto &ov = train_config.overrides;
      Override(o_seed, ov, "seed", train_seed);
      Override(o_epochs, ov, "kgc.epochs", train_epochs);
      Override(o_k, ov, "kgc.support_size", train_k);
      Override(o_dim, ov, "kgc.dim", train_dim);
      Override(o_lr, ov, "kgc.learning_rate", train_lr);
      const kgnews::PipelineConfig config = train_config.Resolve();
      kgnews::kgc::TrainOptions options;
      options.learning_rate = config.learning_rate;
      options.epochs = config.epochs;
      options.seed = config.seed;
      kgnews::kgc::Checkpoint ckpt;
      ckpt.seed = config.seed;
      json report;
      if (train_cycle) {
        kgnews::kgc::CycleOptions cycle;
        cycle.k = config.support_size;
        cycle.model = config.model;
        cycle.train = options;
        cycle.inductive = train_inductive;
        cycle.tasks_per_epoch = train_tasks;
        cycle.queries_per_task = train_queries;
        auto r = kgnews::kgc::RunCycleBenchmark(cycle);
        report = {{"hits_at_1", r.hits_at_1},
                  {"random_baseline", r.random_baseline},
                  {"queries", r.eval_queries.size()},
                  {"inductive", train_inductive},
                  {"loss", LossCurve(r.train_loss)}};
        ckpt.params = std::move(r.trained.params);
        ckpt.embeddings = std::move(r.trained.embeddings);
      } else {
        if (train_kg.empty() || train_relation.empty()) {
          throw Error(ErrorCode::kInvalidArgument, "--kg and --relation are required without --cycle");
        }
        const auto kg = kgnews::KnowledgeGraph::Load(train_kg);
        const auto pairs = RelationPairs(kg, train_relation);
        std::vector<std::string> entities;
        for (const auto &[id, _] : kg.entities()) entities.push_back(id);
        kgnews::Rng init(kgnews::SubstreamSeed(config.seed, "kgc.init"));
        auto params = kgnews::kgc::ModelParams::Init(config.model, init);
        auto emb = kgnews::kgc::EmbeddingTable::Init(entities, config.model.dim, init);
        kgnews::Rng task_rng(kgnews::SubstreamSeed(config.seed, "kgc.tasks"));
        std::vector<kgnews::kgc::FewShotTask> tasks;
        for (int i = 0; i < train_tasks; ++i) {
          tasks.push_back(kgnews::kgc::SampleTask(train_relation, pairs, config.support_size,
                                                  train_queries, entities, task_rng));
        }
        options.negative_pool = entities;
        options.seed = kgnews::SubstreamSeed(config.seed, "kgc.train");
        auto r = kgnews::kgc::Train(tasks, std::move(params), std::move(emb), options);
        report = {{"relation", train_relation}, {"pairs", pairs.size()},
                  {"loss", LossCurve(r.train_loss)}};
        ckpt.params = std::move(r.params);
        ckpt.embeddings = std::move(r.embeddings);
      }
      if (!train_out.empty()) kgnews::kgc::SaveCheckpoint(train_out, ckpt);
      std::cout << report.dump(2) << "\n";
    } else if (*kgc_predict) {
      const auto ckpt = kgnews::kgc::LoadCheckpoint(predict_ckpt);
      auto support = ParsePairs(predict_support);
      if (support.empty()) {
        if (predict_kg.empty() || predict_relation.empty()) {
          throw Error(ErrorCode::kInvalidArgument, "give --support or --kg with --relation");
        }
        const auto pairs = RelationPairs(kgnews::KnowledgeGraph::Load(predict_kg), predict_relation);
        for (const auto &p : pairs) {
          if (static_cast<int>(support.size()) == predict_k) break;
          if (p.first != predict_head) support.push_back(p);
        }
      }
      std::vector<std::string> candidates;
      for (const auto &id : ckpt.embeddings.Ids()) {
        if (id != predict_head) candidates.push_back(id);
      }
      const auto ranked = kgnews::kgc::RankTails(predict_head, support, candidates,
                                                 ckpt.params, ckpt.embeddings);
      json out = json::array();
      for (size_t i = 0; i < ranked.size() && static_cast<int>(i) < predict_top; ++i) {
        out.push_back({{"rank", i + 1}, {"id", ranked[i].id}, {"score", ranked[i].score}});
      }
      std::cout << out.dump(2) << "\n";
    } else if (*kgc_gradcheck) {
      kgnews::kgc::ModelConfig model;
      model.dim = gc_dim;
      model.layers = gc_layers;
      model.conv_channels = 2;
      kgnews::Rng rng(kgnews::SubstreamSeed(gc_seed, "kgc.gradcheck"));
      auto params = kgnews::kgc::ModelParams::Init(model, rng);
      std::vector<std::string> ids;
      for (int i = 0; i < 2 * (gc_k + 2 * gc_queries); ++i) ids.push_back("x" + std::to_string(i));
      auto emb = kgnews::kgc::EmbeddingTable::Init(ids, gc_dim, rng);
      kgnews::kgc::FewShotTask task;
      task.relation = "r";
      size_t next = 0;
      for (int i = 0; i < gc_k; ++i, next += 2) task.support.emplace_back(ids[next], ids[next + 1]);
      for (int i = 0; i < gc_queries; ++i, next += 3) {
        task.queries.emplace_back(ids[next], ids[next + 1]);
        task.negatives.emplace_back(ids[next], ids[next + 2]);
      }
      const auto r = kgnews::kgc::GradCheck(params, emb, {task}, gc_eps);
      std::cout << json{{"max_relative_error", r.max_relative_error},
                        {"worst", r.worst},
                        {"coordinates", r.coordinates},
                        {"tolerance", gc_tol}}
                       .dump(2)
                << "\n";
      return r.max_relative_error <= gc_tol ? 0 : 1;
    } else if (*kee_segment || *kee_events) {
      const bool events = kee_events->parsed();
      auto &cfg = events ? ev_config : seg_config;
      Override(events ? o_ev_whole : o_seg_whole, cfg.overrides, "kee.whole_game",
               events ? ev_whole : seg_whole);
      const auto config = cfg.Resolve();
      const auto log = (events ? ev_game : seg_game).Read();
      std::optional<kgnews::KnowledgeGraph> kg;
      if (events && !ev_kg.empty()) kg = kgnews::KnowledgeGraph::Load(ev_kg);
      const auto analysis = kgnews::AnalyzeGame(log, config.kee, config.whole_game,
                                                kg ? &*kg : nullptr);
      Emit(events ? ev_out : seg_out, kgnews::ToJson(analysis, events).dump(2) + "\n");
    } else if (*write) {
      auto &ov = write_config.overrides;
      Override(o_w_templates, ov, "paths.templates", write_templates);
      Override(o_w_seed, ov, "seed", write_seed);
      Override(o_w_n, ov, "templater.events_per_segment", write_n);
      const auto config = write_config.Resolve();
      const auto log = write_game.Read();
      std::optional<kgnews::KnowledgeGraph> kg;
      if (!write_kg.empty()) kg = kgnews::KnowledgeGraph::Load(write_kg);
      const auto analysis = kgnews::AnalyzeGame(log, config.kee, config.whole_game,
                                                kg ? &*kg : nullptr);
      const auto library = kgnews::LoadTemplates(config.ToJson()["paths"]["templates"]);
      auto draft = kgnews::ComposeDraft(log, analysis, library,
                                        {config.events_per_segment, config.seed});
      if (kg) {
        for (const auto &team : {log.home_team, log.away_team}) {
          auto summary = kgnews::PlayerSummary(log, *kg, team);
          if (!summary.text.empty()) draft.paragraphs.push_back(std::move(summary));
        }
      }
      Emit(write_out, draft.ToJson().dump(2) + "\n");
    } else if (*enrich) {
      auto &ov = enrich_config.overrides;
      Override(o_e_bg, ov, "paths.background", enrich_background);
      Override(o_e_thr, ov, "enricher.link_threshold", enrich_threshold);
      const auto config = enrich_config.Resolve();
      const auto draft = kgnews::Draft::FromJson(ReadJson(enrich_draft));
      const auto kg = kgnews::KnowledgeGraph::Load(enrich_kg);
      const auto background =
          kgnews::LoadBackgroundTemplates(config.ToJson()["paths"]["background"]);
      const auto links = kgnews::LinkEntities(draft, kg, config.link_threshold);
      const auto article = kgnews::Enrich(draft, kg, links, background, config.policy);
      std::string format = enrich_format;
      if (format.empty()) {
        format = std::filesystem::path(enrich_out).extension() == ".html" ? "html" : "json";
      }
      Emit(enrich_out, format == "html" ? kgnews::ExportHtml(article) : kgnews::ExportJson(article));
      for (const auto &u : links.unresolved) {
        std::cerr << "unresolved mention '" << u.mention.surface << "' in paragraph "
                  << u.paragraph << "\n";
      }
    } else if (*rouge) {
      const auto result = kgnews::EvaluateCorpus(kgnews::ReadCorpusDirs(rouge_cand, rouge_ref),
                                                 kgnews::ParseMetrics(rouge_metrics));
      for (const auto &w : result.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << result.Table(rouge_method);
      if (!rouge_json.empty()) Emit(rouge_json, result.ToJson().dump(2) + "\n");
    } else if (*run) {
      auto &ov = run_config.overrides;
      Override(o_r_log, ov, "paths.log", run_log);
      Override(o_r_kg, ov, "paths.kg", run_kg);
      Override(o_r_home, ov, "game.home", run_home);
      Override(o_r_away, ov, "game.away", run_away);
      Override(o_r_tpl, ov, "paths.templates", run_templates);
      Override(o_r_out, ov, "paths.output_dir", run_out);
      Override(o_r_seed, ov, "seed", run_seed);
      const auto report = kgnews::RunPipeline(run_config.Resolve());
      for (const auto &t : report.timings) {
        std::cerr << t.stage << ": " << t.milliseconds << " ms\n";
      }
      std::cout << report.ToJson()["summary"].dump(2) << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
