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


// Few-shot knowledge graph completion: a convolutional relation
// meta-learner, a transformer encoder over (head, relation, tail) token
// triples, and a translation-style matching score trained with a margin
// loss.

#ifndef KGNEWS_KGC_MODEL_H_
#define KGNEWS_KGC_MODEL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kgnews/kgc_tape.h"
#include "kgnews/random.h"

namespace kgnews::kgc {

struct ModelConfig {
  int dim = 16;
  int conv_channels = 4;
  int kernel_width = 3;
  int pool_window = 2;
  int layers = 1;
  int heads = 2;
  int ff_multiplier = 4;
  double margin = 1.0;
  double layer_norm_eps = 1e-5;

  int PooledWidth() const { return conv_channels * (dim / pool_window); }
  // Throws kShapeMismatch / kInvalidArgument when the pieces cannot compose.
  void Validate() const;

  nlohmann::json ToJson() const;
  static ModelConfig FromJson(const nlohmann::json &j);
  bool operator==(const ModelConfig &) const = default;
};

// One post-norm encoder layer: self-attention and a ReLU feed-forward block,
// each wrapped in a residual connection followed by layer normalisation.
struct LayerParams {
  Matrix wq, wk, wv, wo;  // d × d
  Matrix bq, bk, bv, bo;  // 1 × d
  Matrix norm1_gain, norm1_bias;
  Matrix ff_w1, ff_b1;  // d × f, 1 × f
  Matrix ff_w2, ff_b2;  // f × d, 1 × d
  Matrix norm2_gain, norm2_bias;
};

struct ModelParams {
  ModelConfig config;
  Matrix conv_filter;  // channels × (2·kernel_width), no bias
  Matrix linear_w;     // pooled × d
  Matrix linear_b;     // 1 × d
  std::vector<LayerParams> layers;
  Matrix pos_head, pos_relation, pos_tail;  // 1 × d each

  // Seeded initialisation: uniform in ±0.5/√fan_in for weights, zero
  // biases, unit norm gains, small positional vectors.
  static ModelParams Init(const ModelConfig &config, Rng &rng);
  // Same shapes, all zeros; used as a gradient accumulator.
  static ModelParams ZerosLike(const ModelParams &other);

  // Visits every tensor with a stable name, in a fixed order.
  template <typename Fn>
  void ForEachTensor(Fn &&fn);
  template <typename Fn>
  void ForEachTensor(Fn &&fn) const;

  void Validate() const;
  bool AllFinite() const;
};

using EntityPair = std::pair<std::string, std::string>;

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dim) : dim_(dim) {}

  // Uniform in ±0.5/√d for every id, drawn in id order.
  static EmbeddingTable Init(const std::vector<std::string> &ids, int dim, Rng &rng);

  int dim() const { return dim_; }
  bool Contains(const std::string &id) const { return vectors_.count(id) != 0; }
  // 1 × d row; throws kUnknownEntity.
  const Matrix &at(const std::string &id) const;
  Matrix &mutable_at(const std::string &id);
  void Set(const std::string &id, Matrix row);
  const std::map<std::string, Matrix> &vectors() const { return vectors_; }
  std::vector<std::string> Ids() const;
  bool AllFinite() const;

  bool operator==(const EmbeddingTable &other) const;

 private:
  int dim_ = 0;
  std::map<std::string, Matrix> vectors_;
};

struct FewShotTask {
  std::string relation;
  std::vector<EntityPair> support;
  std::vector<EntityPair> queries;
  std::vector<EntityPair> negatives;  // negatives[i] corrupts queries[i]
};

struct EncodedTriple {
  Matrix hidden;              // 3 × d: rows are head, relation, tail
  std::vector<Matrix> layers; // output of every layer, layers.back() == hidden

  Matrix Head() const { return hidden.row(0); }
  Matrix Relation() const { return hidden.row(1); }
  Matrix Tail() const { return hidden.row(2); }
};

// Gradients with the same layout as the model.
struct Gradients {
  ModelParams params;
  std::map<std::string, Matrix> embeddings;
};

// Builds the computation for one evaluation. With sinks present, parameter
// and embedding leaves accumulate gradients into them on Backward().
class ModelGraph {
 public:
  ModelGraph(const ModelParams &params, const EmbeddingTable &embeddings,
             Gradients *sinks = nullptr);

  Tape &tape() { return tape_; }

  Tape::Id Entity(const std::string &id);
  Tape::Id PairRelation(const EntityPair &pair);                  // R_s^i
  Tape::Id RelationMeta(const std::vector<EntityPair> &support);  // R_s
  Tape::Id InitialRelation(const std::vector<EntityPair> &support);
  std::pair<Tape::Id, Tape::Id> FusePosition(Tape::Id head, Tape::Id tail);
  // Returns the 3 × d output of every layer.
  std::vector<Tape::Id> Encode(Tape::Id head, Tape::Id relation, Tape::Id tail);
  Tape::Id Score(Tape::Id head, Tape::Id relation_meta, Tape::Id tail);
  // Score of one candidate pair given the task's R_s and R_0.
  Tape::Id PairScore(const EntityPair &pair, Tape::Id relation_meta,
                     Tape::Id initial_relation);
  // Σ_q [score(q) − score(q⁻) + γ]_+ for one task.
  Tape::Id TaskLoss(const FewShotTask &task);

 private:
  Tape::Id Param(const Matrix &value);
  Tape::Id EncoderLayer(size_t index, Tape::Id x);

  const ModelParams &params_;
  const EmbeddingTable &embeddings_;
  Gradients *sinks_;
  Tape tape_;
  std::map<std::string, Tape::Id> entity_ids_;
  std::map<const Matrix *, Tape::Id> param_ids_;
  std::map<const Matrix *, Matrix *> sink_for_;
};

// Straight-through functional forms of the individual steps.
Matrix RelationMeta(const std::vector<EntityPair> &support, const ModelParams &params,
                    const EmbeddingTable &embeddings);
Matrix PairRelation(const EntityPair &pair, const ModelParams &params,
                    const EmbeddingTable &embeddings);
Matrix InitialRelation(const std::vector<EntityPair> &support,
                       const EmbeddingTable &embeddings);
std::pair<Matrix, Matrix> FusePosition(const Matrix &head, const Matrix &tail,
                                       const ModelParams &params);
EncodedTriple EncodeTriple(const Matrix &head, const Matrix &relation,
                           const Matrix &tail, const ModelParams &params);
// ‖head + relation − tail‖₂; lower is more plausible.
double Score(const Matrix &head, const Matrix &relation, const Matrix &tail);
double TaskLoss(const FewShotTask &task, const ModelParams &params,
                const EmbeddingTable &embeddings);
// Sum of TaskLoss over tasks.
double Loss(const std::vector<FewShotTask> &tasks, const ModelParams &params,
            const EmbeddingTable &embeddings);
// Checks pairing and entity presence; throws kUnpairedNegatives /
// kUnknownEntity.
void ValidateTask(const FewShotTask &task, const EmbeddingTable &embeddings);

// Loss and its gradient with respect to every parameter and every entity
// vector that the tasks touch.
double LossAndGradient(const std::vector<FewShotTask> &tasks, const ModelParams &params,
                       const EmbeddingTable &embeddings, Gradients *grads);

// ---------------------------------------------------------------------------

template <typename Fn>
void ModelParams::ForEachTensor(Fn &&fn) {
  fn("conv_filter", conv_filter);
  fn("linear_w", linear_w);
  fn("linear_b", linear_b);
  for (size_t i = 0; i < layers.size(); ++i) {
    LayerParams &l = layers[i];
    const std::string p = "layer" + std::to_string(i) + ".";
    fn(p + "wq", l.wq);
    fn(p + "wk", l.wk);
    fn(p + "wv", l.wv);
    fn(p + "wo", l.wo);
    fn(p + "bq", l.bq);
    fn(p + "bk", l.bk);
    fn(p + "bv", l.bv);
    fn(p + "bo", l.bo);
    fn(p + "norm1_gain", l.norm1_gain);
    fn(p + "norm1_bias", l.norm1_bias);
    fn(p + "ff_w1", l.ff_w1);
    fn(p + "ff_b1", l.ff_b1);
    fn(p + "ff_w2", l.ff_w2);
    fn(p + "ff_b2", l.ff_b2);
    fn(p + "norm2_gain", l.norm2_gain);
    fn(p + "norm2_bias", l.norm2_bias);
  }
  fn("pos_head", pos_head);
  fn("pos_relation", pos_relation);
  fn("pos_tail", pos_tail);
}

template <typename Fn>
void ModelParams::ForEachTensor(Fn &&fn) const {
  const_cast<ModelParams *>(this)->ForEachTensor(
      [&](const std::string &name, Matrix &m) { fn(name, static_cast<const Matrix &>(m)); });
}

}  // namespace kgnews::kgc

#endif  // KGNEWS_KGC_MODEL_H_
