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


#include "kgnews/kgc_train.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "kgnews/error.h"

namespace kgnews::kgc {
namespace {

using nlohmann::json;

constexpr double kRelativeErrorFloor = 1e-8;

template <typename T>
void Shuffle(std::vector<T> &v, Rng &rng) {
  // Fisher-Yates through UniformIndex so the order is toolchain-independent.
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[UniformIndex(rng, i)]);
}

void SgdStep(ModelParams &params, EmbeddingTable &embeddings, Gradients &grads,
             double lr) {
  std::vector<Matrix *> dst;
  params.ForEachTensor([&](const std::string &, Matrix &m) { dst.push_back(&m); });
  size_t i = 0;
  grads.params.ForEachTensor([&](const std::string &, Matrix &g) { *dst[i++] -= lr * g; });
  for (const auto &[id, g] : grads.embeddings) embeddings.mutable_at(id) -= lr * g;
}

json MatrixToJson(const Matrix &m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  }
  return {{"shape", {m.rows(), m.cols()}}, {"data", data}};
}

Matrix MatrixFromJson(const json &j, const std::string &name) {
  const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (shape.size() != 2 || static_cast<Eigen::Index>(data.size()) != shape[0] * shape[1]) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint tensor " + name + " is malformed");
  }
  Matrix m(shape[0], shape[1]);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[r * m.cols() + c];
  }
  return m;
}

}  // namespace

std::vector<EntityPair> NegativeSample(const std::vector<EntityPair> &queries,
                                       const std::vector<std::string> &pool, Rng &rng) {
  const std::set<std::string> distinct(pool.begin(), pool.end());
  if (distinct.size() < 2) {
    throw Error(ErrorCode::kPoolTooSmall, "negative sampling needs at least 2 entities");
  }
  const std::vector<std::string> ordered(distinct.begin(), distinct.end());
  std::vector<EntityPair> out;
  out.reserve(queries.size());
  for (const auto &[head, tail] : queries) {
    std::vector<const std::string *> choices;
    for (const auto &e : ordered) {
      if (e != tail) choices.push_back(&e);
    }
    out.emplace_back(head, *choices[UniformIndex(rng, choices.size())]);
  }
  return out;
}

FewShotTask SampleTask(const std::string &relation, const std::vector<EntityPair> &pairs,
                       int k, int max_queries, const std::vector<std::string> &pool,
                       Rng &rng) {
  if (k < 1 || static_cast<int>(pairs.size()) <= k) {
    throw Error(ErrorCode::kInvalidArgument,
                "relation " + relation + " needs more than " + std::to_string(k) +
                    " known pairs");
  }
  std::vector<EntityPair> shuffled = pairs;
  Shuffle(shuffled, rng);
  FewShotTask task;
  task.relation = relation;
  task.support.assign(shuffled.begin(), shuffled.begin() + k);
  const size_t end = std::min(shuffled.size(), static_cast<size_t>(k + max_queries));
  task.queries.assign(shuffled.begin() + k, shuffled.begin() + end);
  task.negatives = NegativeSample(task.queries, pool, rng);
  return task;
}

TrainResult Train(const std::vector<FewShotTask> &tasks, ModelParams params,
                  EmbeddingTable embeddings, const TrainOptions &options) {
  if (options.epochs < 0 || options.learning_rate < 0) {
    throw Error(ErrorCode::kInvalidArgument, "epochs and learning rate must be >= 0");
  }
  params.Validate();
  for (const auto &task : tasks) ValidateTask(task, embeddings);

  Rng rng(options.seed);
  std::vector<FewShotTask> work = tasks;
  TrainResult result;
  Gradients grads;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    if (!options.negative_pool.empty()) {
      for (auto &task : work) task.negatives = NegativeSample(task.queries, options.negative_pool, rng);
    }
    std::vector<size_t> order(work.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Shuffle(order, rng);
    double epoch_loss = 0;
    for (size_t i : order) {
      const double loss = LossAndGradient({work[i]}, params, embeddings, &grads);
      if (!std::isfinite(loss)) {
        throw Error(ErrorCode::kDivergence, "loss became non-finite in epoch " +
                                                std::to_string(epoch));
      }
      epoch_loss += loss;
      SgdStep(params, embeddings, grads, options.learning_rate);
    }
    if (!params.AllFinite() || !embeddings.AllFinite()) {
      throw Error(ErrorCode::kDivergence,
                  "parameters became non-finite in epoch " + std::to_string(epoch));
    }
    result.train_loss.push_back(epoch_loss);
    if (options.validation) {
      result.validation_loss.push_back(TaskLoss(*options.validation, params, embeddings));
    }
  }
  result.params = std::move(params);
  result.embeddings = std::move(embeddings);
  return result;
}

std::vector<RankedCandidate> RankTails(const std::string &head,
                                       const std::vector<EntityPair> &support,
                                       const std::vector<std::string> &candidates,
                                       const ModelParams &params,
                                       const EmbeddingTable &embeddings) {
  embeddings.at(head);
  ModelGraph g(params, embeddings);
  const Tape::Id rs = g.RelationMeta(support);
  const Tape::Id r0 = g.InitialRelation(support);
  std::vector<RankedCandidate> out;
  for (const auto &c : candidates) {
    const Tape::Id s = g.PairScore({head, c}, rs, r0);
    out.push_back({c, g.tape().value(s)(0, 0)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.score != b.score ? a.score < b.score : a.id < b.id;
  });
  return out;
}

double HitsAtOne(const std::vector<EntityPair> &queries,
                 const std::vector<EntityPair> &support,
                 const std::vector<std::string> &entities, const ModelParams &params,
                 const EmbeddingTable &embeddings) {
  if (queries.empty()) return 0;
  int hits = 0;
  for (const auto &[head, tail] : queries) {
    std::vector<std::string> candidates;
    for (const auto &e : entities) {
      if (e != head) candidates.push_back(e);
    }
    const auto ranked = RankTails(head, support, candidates, params, embeddings);
    if (!ranked.empty() && ranked.front().id == tail) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(queries.size());
}

GradCheckResult GradCheck(const ModelParams &params, const EmbeddingTable &embeddings,
                          const std::vector<FewShotTask> &tasks, double epsilon) {
  if (!(epsilon > 0) || epsilon > 1e-2) {
    throw Error(ErrorCode::kInvalidEpsilon, "epsilon must be in (0, 1e-2]");
  }
  Gradients analytic;
  LossAndGradient(tasks, params, embeddings, &analytic);

  GradCheckResult result;
  auto compare = [&](double a, double n, const std::string &where) {
    const double denom = std::max({std::fabs(a), std::fabs(n), kRelativeErrorFloor});
    const double err = std::fabs(a - n) / denom;
    ++result.coordinates;
    if (err > result.max_relative_error || result.worst.empty()) {
      if (err >= result.max_relative_error) {
        result.max_relative_error = err;
        result.worst = where;
      }
    }
  };

  ModelParams probe = params;
  std::vector<Matrix *> probe_tensors;
  std::vector<std::string> names;
  probe.ForEachTensor([&](const std::string &name, Matrix &m) {
    probe_tensors.push_back(&m);
    names.push_back(name);
  });
  std::vector<const Matrix *> grad_tensors;
  analytic.params.ForEachTensor(
      [&](const std::string &, const Matrix &m) { grad_tensors.push_back(&m); });

  for (size_t t = 0; t < probe_tensors.size(); ++t) {
    Matrix &m = *probe_tensors[t];
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double saved = m.data()[i];
      m.data()[i] = saved + epsilon;
      const double up = Loss(tasks, probe, embeddings);
      m.data()[i] = saved - epsilon;
      const double down = Loss(tasks, probe, embeddings);
      m.data()[i] = saved;
      compare(grad_tensors[t]->data()[i], (up - down) / (2 * epsilon), names[t]);
    }
  }

  std::set<std::string> touched;
  for (const auto &task : tasks) {
    for (const auto *set : {&task.support, &task.queries, &task.negatives}) {
      for (const auto &[h, tl] : *set) {
        touched.insert(h);
        touched.insert(tl);
      }
    }
  }
  EmbeddingTable probe_emb = embeddings;
  for (const auto &id : touched) {
    Matrix &v = probe_emb.mutable_at(id);
    auto it = analytic.embeddings.find(id);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double saved = v.data()[i];
      v.data()[i] = saved + epsilon;
      const double up = Loss(tasks, params, probe_emb);
      v.data()[i] = saved - epsilon;
      const double down = Loss(tasks, params, probe_emb);
      v.data()[i] = saved;
      const double a = it == analytic.embeddings.end() ? 0.0 : it->second.data()[i];
      compare(a, (up - down) / (2 * epsilon), "embedding:" + id);
    }
  }
  return result;
}

json CheckpointToJson(const Checkpoint &checkpoint) {
  json tensors = json::object();
  checkpoint.params.ForEachTensor(
      [&](const std::string &name, const Matrix &m) { tensors[name] = MatrixToJson(m); });
  json embeddings = json::object();
  for (const auto &[id, v] : checkpoint.embeddings.vectors()) {
    embeddings[id] = std::vector<double>(v.data(), v.data() + v.size());
  }
  return {{"config", checkpoint.params.config.ToJson()},
          {"seed", checkpoint.seed},
          {"embedding_dim", checkpoint.embeddings.dim()},
          {"tensors", tensors},
          {"embeddings", embeddings}};
}

Checkpoint CheckpointFromJson(const json &j) {
  try {
    Checkpoint c;
    c.seed = j.at("seed").get<uint64_t>();
    const ModelConfig config = ModelConfig::FromJson(j.at("config"));
    Rng scratch(0);
    c.params = ModelParams::Init(config, scratch);
    const json &tensors = j.at("tensors");
    c.params.ForEachTensor([&](const std::string &name, Matrix &m) {
      m = MatrixFromJson(tensors.at(name), name);
    });
    c.params.Validate();
    c.embeddings = EmbeddingTable(j.at("embedding_dim").get<int>());
    for (const auto &[id, values] : j.at("embeddings").items()) {
      const auto data = values.get<std::vector<double>>();
      Matrix row(1, static_cast<Eigen::Index>(data.size()));
      for (size_t i = 0; i < data.size(); ++i) row(0, static_cast<Eigen::Index>(i)) = data[i];
      c.embeddings.Set(id, std::move(row));
    }
    return c;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, std::string("checkpoint: ") + e.what());
  }
}

void SaveCheckpoint(const std::string &path, const Checkpoint &checkpoint) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << CheckpointToJson(checkpoint).dump() << '\n';
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
  return CheckpointFromJson(j);
}

CycleBenchmark MakeCycle(int n, int held_out, uint64_t seed) {
  if (n < 3 || held_out < 0 || held_out >= n - 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad cycle size");
  }
  CycleBenchmark b;
  for (int i = 0; i < n; ++i) {
    b.entities.push_back((i < 10 ? "e0" : "e") + std::to_string(i));
  }
  std::vector<EntityPair> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(b.entities[i], b.entities[(i + 1) % n]);
  Rng rng(seed);
  Shuffle(pairs, rng);
  b.held_out.assign(pairs.begin(), pairs.begin() + held_out);
  b.train_pairs.assign(pairs.begin() + held_out, pairs.end());
  std::sort(b.held_out.begin(), b.held_out.end());
  std::sort(b.train_pairs.begin(), b.train_pairs.end());
  return b;
}

CycleReport RunCycleBenchmark(const CycleOptions &options) {
  const uint64_t seed = options.train.seed;
  const CycleBenchmark cycle =
      MakeCycle(options.entities, options.held_out, SubstreamSeed(seed, "kgc.split"));
  Rng init_rng(SubstreamSeed(seed, "kgc.init"));
  ModelParams params = ModelParams::Init(options.model, init_rng);
  EmbeddingTable embeddings =
      EmbeddingTable::Init(cycle.entities, options.model.dim, init_rng);

  std::vector<EntityPair> train_pairs = cycle.train_pairs;
  if (!options.inductive) {
    train_pairs.insert(train_pairs.end(), cycle.held_out.begin(), cycle.held_out.end());
    std::sort(train_pairs.begin(), train_pairs.end());
  }
  Rng task_rng(SubstreamSeed(seed, "kgc.tasks"));
  std::vector<FewShotTask> tasks;
  for (int i = 0; i < options.tasks_per_epoch; ++i) {
    tasks.push_back(SampleTask("successor", train_pairs, options.k, options.queries_per_task,
                               cycle.entities, task_rng));
  }
  TrainOptions train = options.train;
  train.seed = SubstreamSeed(seed, "kgc.train");
  if (train.negative_pool.empty()) train.negative_pool = cycle.entities;

  CycleReport report;
  report.trained = Train(tasks, std::move(params), std::move(embeddings), train);
  report.train_loss = report.trained.train_loss;
  report.eval_support.assign(cycle.train_pairs.begin(),
                             cycle.train_pairs.begin() + options.k);
  if (options.inductive) {
    report.eval_queries = cycle.held_out;
  } else {
    for (const auto &p : train_pairs) {
      if (std::find(report.eval_support.begin(), report.eval_support.end(), p) ==
          report.eval_support.end()) {
        report.eval_queries.push_back(p);
      }
    }
  }
  report.hits_at_1 = HitsAtOne(report.eval_queries, report.eval_support, cycle.entities,
                               report.trained.params, report.trained.embeddings);
  report.random_baseline = 1.0 / static_cast<double>(options.entities - 1);
  return report;
}

}  // namespace kgnews::kgc
