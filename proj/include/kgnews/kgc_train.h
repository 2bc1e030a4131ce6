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


#ifndef KGNEWS_KGC_TRAIN_H_
#define KGNEWS_KGC_TRAIN_H_

#include <optional>
#include <string>
#include <vector>

#include "kgnews/kgc_model.h"

namespace kgnews::kgc {

// Replaces the tail of every query with a different entity drawn uniformly
// from `pool`. Throws kPoolTooSmall when the pool has fewer than two
// distinct entities.
std::vector<EntityPair> NegativeSample(const std::vector<EntityPair> &queries,
                                       const std::vector<std::string> &pool, Rng &rng);

// Draws a few-shot task from the known pairs of one relation: `k` support
// pairs, up to `max_queries` query pairs from the rest, one negative each.
FewShotTask SampleTask(const std::string &relation, const std::vector<EntityPair> &pairs,
                       int k, int max_queries, const std::vector<std::string> &pool,
                       Rng &rng);

struct TrainOptions {
  double learning_rate = 0.05;
  int epochs = 50;
  uint64_t seed = 0;
  // When non-empty, negatives are redrawn from this pool every epoch.
  std::vector<std::string> negative_pool;
  std::optional<FewShotTask> validation;
};

struct TrainResult {
  ModelParams params;
  EmbeddingTable embeddings;
  std::vector<double> train_loss;       // summed over tasks, per epoch
  std::vector<double> validation_loss;  // empty without a validation task
};

// Plain SGD on the margin loss, one update per task, tasks visited in a
// seeded shuffled order. Entity vectors are updated together with the
// model. Throws kDivergence (naming the epoch) on non-finite loss or
// parameters.
TrainResult Train(const std::vector<FewShotTask> &tasks, ModelParams params,
                  EmbeddingTable embeddings, const TrainOptions &options);

struct RankedCandidate {
  std::string id;
  double score = 0;
};

// Candidates ordered by ascending score, ties broken by id.
std::vector<RankedCandidate> RankTails(const std::string &head,
                                       const std::vector<EntityPair> &support,
                                       const std::vector<std::string> &candidates,
                                       const ModelParams &params,
                                       const EmbeddingTable &embeddings);

// Fraction of queries whose true tail ranks first among all entities other
// than the query head.
double HitsAtOne(const std::vector<EntityPair> &queries,
                 const std::vector<EntityPair> &support,
                 const std::vector<std::string> &entities, const ModelParams &params,
                 const EmbeddingTable &embeddings);

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst;  // tensor or entity name of the worst coordinate
  int coordinates = 0;
};

// Central differences against the analytic gradient for every parameter
// coordinate and every embedding coordinate the tasks touch. The relative
// error of one coordinate is |a − n| / max(|a|, |n|, 1e-8).
GradCheckResult GradCheck(const ModelParams &params, const EmbeddingTable &embeddings,
                          const std::vector<FewShotTask> &tasks, double epsilon);

struct Checkpoint {
  ModelParams params;
  EmbeddingTable embeddings;
  uint64_t seed = 0;
};

nlohmann::json CheckpointToJson(const Checkpoint &checkpoint);
Checkpoint CheckpointFromJson(const nlohmann::json &j);
void SaveCheckpoint(const std::string &path, const Checkpoint &checkpoint);
Checkpoint LoadCheckpoint(const std::string &path);

// Ring of n entities "e00", "e01", ... with the relation e_i → e_{i+1 mod n}.
struct CycleBenchmark {
  std::vector<std::string> entities;
  std::vector<EntityPair> train_pairs;
  std::vector<EntityPair> held_out;
};
CycleBenchmark MakeCycle(int n, int held_out, uint64_t seed);

struct CycleOptions {
  int entities = 20;
  int held_out = 5;
  // Inductive: the held-out edges are removed from training. Otherwise every
  // edge is trainable and the queries are the edges outside the evaluation
  // support set.
  bool inductive = false;
  int k = 3;
  int tasks_per_epoch = 8;
  int queries_per_task = 6;
  ModelConfig model;
  TrainOptions train;
};

struct CycleReport {
  double hits_at_1 = 0;
  double random_baseline = 0;  // 1 / (entities − 1)
  std::vector<double> train_loss;
  TrainResult trained;
  std::vector<EntityPair> eval_support;
  std::vector<EntityPair> eval_queries;
};

// Trains on the ring's training pairs and reports Hits@1 on the held-out
// pairs. Everything is derived from options.train.seed.
CycleReport RunCycleBenchmark(const CycleOptions &options);

}  // namespace kgnews::kgc

#endif  // KGNEWS_KGC_TRAIN_H_
