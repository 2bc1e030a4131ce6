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


#include "kgnews/kgc_model.h"

#include <cmath>

#include "kgnews/error.h"

namespace kgnews::kgc {
namespace {

Matrix Uniform(Eigen::Index rows, Eigen::Index cols, double bound, Rng &rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = UniformReal(rng, -bound, bound);
  }
  return m;
}

void RequireShape(const Matrix &m, Eigen::Index rows, Eigen::Index cols,
                  const std::string &name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::kShapeMismatch,
                name + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

void ModelConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kShapeMismatch, "model config: " + what);
  };
  if (dim < 1) fail("dim must be positive");
  if (heads < 1 || dim % heads != 0) fail("dim must be divisible by heads");
  if (kernel_width < 1 || kernel_width % 2 == 0) fail("kernel_width must be odd");
  if (pool_window < 1 || pool_window > dim) fail("pool_window must be in [1, dim]");
  if (conv_channels < 1) fail("conv_channels must be positive");
  if (layers < 1) fail("at least one encoder layer is required");
  if (ff_multiplier < 1) fail("ff_multiplier must be positive");
  if (!(margin > 0)) throw Error(ErrorCode::kInvalidArgument, "margin must be positive");
  if (!(layer_norm_eps > 0)) fail("layer_norm_eps must be positive");
}

nlohmann::json ModelConfig::ToJson() const {
  return {{"dim", dim},
          {"conv_channels", conv_channels},
          {"kernel_width", kernel_width},
          {"pool_window", pool_window},
          {"layers", layers},
          {"heads", heads},
          {"ff_multiplier", ff_multiplier},
          {"margin", margin},
          {"layer_norm_eps", layer_norm_eps}};
}

ModelConfig ModelConfig::FromJson(const nlohmann::json &j) {
  ModelConfig c;
  c.dim = j.value("dim", c.dim);
  c.conv_channels = j.value("conv_channels", c.conv_channels);
  c.kernel_width = j.value("kernel_width", c.kernel_width);
  c.pool_window = j.value("pool_window", c.pool_window);
  c.layers = j.value("layers", c.layers);
  c.heads = j.value("heads", c.heads);
  c.ff_multiplier = j.value("ff_multiplier", c.ff_multiplier);
  c.margin = j.value("margin", c.margin);
  c.layer_norm_eps = j.value("layer_norm_eps", c.layer_norm_eps);
  return c;
}

// ---------------------------------------------------------------------------
// Parameters

ModelParams ModelParams::Init(const ModelConfig &config, Rng &rng) {
  config.Validate();
  const int d = config.dim;
  const int f = d * config.ff_multiplier;
  const int patch = 2 * config.kernel_width;
  ModelParams p;
  p.config = config;
  p.conv_filter = Uniform(config.conv_channels, patch, 1.0 / std::sqrt(patch), rng);
  p.linear_w = Uniform(config.PooledWidth(), d, 1.0 / std::sqrt(config.PooledWidth()), rng);
  p.linear_b = Matrix::Zero(1, d);
  const double wd = 1.0 / std::sqrt(d);
  for (int i = 0; i < config.layers; ++i) {
    LayerParams l;
    l.wq = Uniform(d, d, wd, rng);
    l.wk = Uniform(d, d, wd, rng);
    l.wv = Uniform(d, d, wd, rng);
    l.wo = Uniform(d, d, wd, rng);
    l.bq = l.bk = l.bv = l.bo = Matrix::Zero(1, d);
    l.norm1_gain = l.norm2_gain = Matrix::Ones(1, d);
    l.norm1_bias = l.norm2_bias = Matrix::Zero(1, d);
    l.ff_w1 = Uniform(d, f, wd, rng);
    l.ff_b1 = Matrix::Zero(1, f);
    l.ff_w2 = Uniform(f, d, 1.0 / std::sqrt(f), rng);
    l.ff_b2 = Matrix::Zero(1, d);
    p.layers.push_back(std::move(l));
  }
  const double pos = 0.5 / std::sqrt(d);
  p.pos_head = Uniform(1, d, pos, rng);
  p.pos_relation = Uniform(1, d, pos, rng);
  p.pos_tail = Uniform(1, d, pos, rng);
  return p;
}

ModelParams ModelParams::ZerosLike(const ModelParams &other) {
  ModelParams z = other;
  z.ForEachTensor([](const std::string &, Matrix &m) { m.setZero(); });
  return z;
}

void ModelParams::Validate() const {
  config.Validate();
  const int d = config.dim;
  const int f = d * config.ff_multiplier;
  RequireShape(conv_filter, config.conv_channels, 2 * config.kernel_width, "conv_filter");
  RequireShape(linear_w, config.PooledWidth(), d, "linear_w");
  RequireShape(linear_b, 1, d, "linear_b");
  if (static_cast<int>(layers.size()) != config.layers) {
    throw Error(ErrorCode::kShapeMismatch, "layer count does not match config");
  }
  for (size_t i = 0; i < layers.size(); ++i) {
    const LayerParams &l = layers[i];
    const std::string p = "layer" + std::to_string(i) + ".";
    for (auto [m, n] : {std::pair{&l.wq, "wq"}, {&l.wk, "wk"}, {&l.wv, "wv"}, {&l.wo, "wo"}}) {
      RequireShape(*m, d, d, p + n);
    }
    for (auto [m, n] : {std::pair{&l.bq, "bq"}, {&l.bk, "bk"}, {&l.bv, "bv"}, {&l.bo, "bo"},
                        {&l.norm1_gain, "norm1_gain"}, {&l.norm1_bias, "norm1_bias"},
                        {&l.ff_b2, "ff_b2"}, {&l.norm2_gain, "norm2_gain"},
                        {&l.norm2_bias, "norm2_bias"}}) {
      RequireShape(*m, 1, d, p + n);
    }
    RequireShape(l.ff_w1, d, f, p + "ff_w1");
    RequireShape(l.ff_b1, 1, f, p + "ff_b1");
    RequireShape(l.ff_w2, f, d, p + "ff_w2");
  }
  RequireShape(pos_head, 1, d, "pos_head");
  RequireShape(pos_relation, 1, d, "pos_relation");
  RequireShape(pos_tail, 1, d, "pos_tail");
}

bool ModelParams::AllFinite() const {
  bool ok = true;
  ForEachTensor([&](const std::string &, const Matrix &m) { ok = ok && m.allFinite(); });
  return ok;
}

// ---------------------------------------------------------------------------
// Embeddings

EmbeddingTable EmbeddingTable::Init(const std::vector<std::string> &ids, int dim, Rng &rng) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "embedding dim must be positive");
  EmbeddingTable table(dim);
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const double bound = 0.5 / std::sqrt(dim);
  for (const auto &id : sorted) table.vectors_[id] = Uniform(1, dim, bound, rng);
  return table;
}

const Matrix &EmbeddingTable::at(const std::string &id) const {
  auto it = vectors_.find(id);
  if (it == vectors_.end()) {
    throw Error(ErrorCode::kUnknownEntity, "no embedding for '" + id + "'");
  }
  return it->second;
}

Matrix &EmbeddingTable::mutable_at(const std::string &id) {
  return const_cast<Matrix &>(static_cast<const EmbeddingTable *>(this)->at(id));
}

void EmbeddingTable::Set(const std::string &id, Matrix row) {
  RequireShape(row, 1, dim_, "embedding '" + id + "'");
  vectors_[id] = std::move(row);
}

std::vector<std::string> EmbeddingTable::Ids() const {
  std::vector<std::string> ids;
  for (const auto &[id, v] : vectors_) ids.push_back(id);
  return ids;
}

bool EmbeddingTable::AllFinite() const {
  for (const auto &[id, v] : vectors_) {
    if (!v.allFinite()) return false;
  }
  return true;
}

bool EmbeddingTable::operator==(const EmbeddingTable &other) const {
  if (dim_ != other.dim_ || vectors_.size() != other.vectors_.size()) return false;
  for (const auto &[id, v] : vectors_) {
    auto it = other.vectors_.find(id);
    if (it == other.vectors_.end() || it->second != v) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Graph construction

ModelGraph::ModelGraph(const ModelParams &params, const EmbeddingTable &embeddings,
                       Gradients *sinks)
    : params_(params), embeddings_(embeddings), sinks_(sinks) {
  params_.Validate();
  if (embeddings_.dim() != params_.config.dim) {
    throw Error(ErrorCode::kShapeMismatch, "embedding dim differs from model dim");
  }
  if (sinks_) {
    std::vector<const Matrix *> src;
    params_.ForEachTensor([&](const std::string &, const Matrix &m) { src.push_back(&m); });
    size_t i = 0;
    sinks_->params.ForEachTensor([&](const std::string &, Matrix &m) {
      if (i < src.size()) sink_for_[src[i++]] = &m;
    });
  }
}

Tape::Id ModelGraph::Param(const Matrix &value) {
  auto it = param_ids_.find(&value);
  if (it != param_ids_.end()) return it->second;
  auto sink = sink_for_.find(&value);
  const Tape::Id id =
      tape_.Parameter(value, sink == sink_for_.end() ? nullptr : sink->second);
  param_ids_[&value] = id;
  return id;
}

Tape::Id ModelGraph::Entity(const std::string &id) {
  auto it = entity_ids_.find(id);
  if (it != entity_ids_.end()) return it->second;
  const Matrix &value = embeddings_.at(id);
  Matrix *sink = nullptr;
  if (sinks_) {
    auto [slot, inserted] = sinks_->embeddings.try_emplace(id);
    if (inserted) slot->second = Matrix::Zero(1, embeddings_.dim());
    sink = &slot->second;
  }
  const Tape::Id node = tape_.Parameter(value, sink);
  entity_ids_[id] = node;
  return node;
}

#define KGC_PARAM(field) Param(field)

Tape::Id ModelGraph::PairRelation(const EntityPair &pair) {
  const ModelConfig &c = params_.config;
  const Tape::Id image = tape_.ConcatRows({Entity(pair.first), Entity(pair.second)});
  const Tape::Id patches = tape_.Im2Col(image, c.kernel_width);
  const Tape::Id conv =
      tape_.MatMul(patches, tape_.Transpose(KGC_PARAM(params_.conv_filter)));
  const Tape::Id pooled = tape_.MaxPoolRows(tape_.Relu(conv), c.pool_window);
  const Tape::Id flat = tape_.Flatten(pooled);
  return tape_.AddRow(tape_.MatMul(flat, KGC_PARAM(params_.linear_w)),
                      KGC_PARAM(params_.linear_b));
}

Tape::Id ModelGraph::RelationMeta(const std::vector<EntityPair> &support) {
  if (support.empty()) throw Error(ErrorCode::kInvalidArgument, "empty support set");
  std::vector<Tape::Id> parts;
  for (const auto &pair : support) parts.push_back(PairRelation(pair));
  return tape_.Mean(parts);
}

Tape::Id ModelGraph::InitialRelation(const std::vector<EntityPair> &support) {
  if (support.empty()) throw Error(ErrorCode::kInvalidArgument, "empty support set");
  std::vector<Tape::Id> parts;
  for (const auto &[head, tail] : support) {
    parts.push_back(tape_.Sub(Entity(tail), Entity(head)));
  }
  return tape_.Mean(parts);
}

std::pair<Tape::Id, Tape::Id> ModelGraph::FusePosition(Tape::Id head, Tape::Id tail) {
  return {tape_.Add(head, KGC_PARAM(params_.pos_head)),
          tape_.Add(tail, KGC_PARAM(params_.pos_tail))};
}

Tape::Id ModelGraph::EncoderLayer(size_t index, Tape::Id x) {
  const LayerParams &l = params_.layers[index];
  const ModelConfig &c = params_.config;
  const int head_dim = c.dim / c.heads;
  const Tape::Id q = tape_.AddRow(tape_.MatMul(x, KGC_PARAM(l.wq)), KGC_PARAM(l.bq));
  const Tape::Id k = tape_.AddRow(tape_.MatMul(x, KGC_PARAM(l.wk)), KGC_PARAM(l.bk));
  const Tape::Id v = tape_.AddRow(tape_.MatMul(x, KGC_PARAM(l.wv)), KGC_PARAM(l.bv));
  std::vector<Tape::Id> heads;
  for (int h = 0; h < c.heads; ++h) {
    const Tape::Id qh = tape_.Cols(q, h * head_dim, head_dim);
    const Tape::Id kh = tape_.Cols(k, h * head_dim, head_dim);
    const Tape::Id vh = tape_.Cols(v, h * head_dim, head_dim);
    const Tape::Id logits =
        tape_.Scale(tape_.MatMul(qh, tape_.Transpose(kh)), 1.0 / std::sqrt(head_dim));
    heads.push_back(tape_.MatMul(tape_.SoftmaxRows(logits), vh));
  }
  const Tape::Id attn =
      tape_.AddRow(tape_.MatMul(tape_.ConcatCols(heads), KGC_PARAM(l.wo)), KGC_PARAM(l.bo));
  const Tape::Id x1 = tape_.LayerNormRows(tape_.Add(x, attn), KGC_PARAM(l.norm1_gain),
                                          KGC_PARAM(l.norm1_bias), c.layer_norm_eps);
  const Tape::Id hidden =
      tape_.Relu(tape_.AddRow(tape_.MatMul(x1, KGC_PARAM(l.ff_w1)), KGC_PARAM(l.ff_b1)));
  const Tape::Id ff =
      tape_.AddRow(tape_.MatMul(hidden, KGC_PARAM(l.ff_w2)), KGC_PARAM(l.ff_b2));
  return tape_.LayerNormRows(tape_.Add(x1, ff), KGC_PARAM(l.norm2_gain),
                             KGC_PARAM(l.norm2_bias), c.layer_norm_eps);
}

std::vector<Tape::Id> ModelGraph::Encode(Tape::Id head, Tape::Id relation, Tape::Id tail) {
  std::vector<Tape::Id> outputs;
  Tape::Id x = tape_.ConcatRows({head, relation, tail});
  for (size_t i = 0; i < params_.layers.size(); ++i) {
    x = EncoderLayer(i, x);
    if (!tape_.value(x).allFinite()) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite activation after encoder layer " + std::to_string(i + 1));
    }
    outputs.push_back(x);
  }
  return outputs;
}

#undef KGC_PARAM

Tape::Id ModelGraph::Score(Tape::Id head, Tape::Id relation_meta, Tape::Id tail) {
  return tape_.Norm(tape_.Sub(tape_.Add(head, relation_meta), tail));
}

Tape::Id ModelGraph::PairScore(const EntityPair &pair, Tape::Id relation_meta,
                               Tape::Id initial_relation) {
  auto [head, tail] = FusePosition(Entity(pair.first), Entity(pair.second));
  const Tape::Id relation = tape_.Add(
      initial_relation, Param(params_.pos_relation));
  const Tape::Id encoded = Encode(head, relation, tail).back();
  return Score(tape_.Row(encoded, 0), relation_meta, tape_.Row(encoded, 2));
}

Tape::Id ModelGraph::TaskLoss(const FewShotTask &task) {
  ValidateTask(task, embeddings_);
  const Tape::Id rs = RelationMeta(task.support);
  const Tape::Id r0 = InitialRelation(task.support);
  Matrix margin(1, 1);
  margin(0, 0) = params_.config.margin;
  const Tape::Id gamma = tape_.Constant(margin);
  std::vector<Tape::Id> terms;
  for (size_t i = 0; i < task.queries.size(); ++i) {
    const Tape::Id pos = PairScore(task.queries[i], rs, r0);
    const Tape::Id neg = PairScore(task.negatives[i], rs, r0);
    terms.push_back(tape_.Relu(tape_.Add(tape_.Sub(pos, neg), gamma)));
  }
  if (terms.empty()) return tape_.Constant(Matrix::Zero(1, 1));
  return tape_.Sum(terms);
}

// ---------------------------------------------------------------------------
// Functional forms

void ValidateTask(const FewShotTask &task, const EmbeddingTable &embeddings) {
  if (task.queries.size() != task.negatives.size()) {
    throw Error(ErrorCode::kUnpairedNegatives,
                std::to_string(task.queries.size()) + " queries but " +
                    std::to_string(task.negatives.size()) + " negatives");
  }
  auto check = [&](const std::vector<EntityPair> &pairs) {
    for (const auto &[h, t] : pairs) {
      embeddings.at(h);
      embeddings.at(t);
    }
  };
  check(task.support);
  check(task.queries);
  check(task.negatives);
}

Matrix RelationMeta(const std::vector<EntityPair> &support, const ModelParams &params,
                    const EmbeddingTable &embeddings) {
  ModelGraph g(params, embeddings);
  return g.tape().value(g.RelationMeta(support));
}

Matrix PairRelation(const EntityPair &pair, const ModelParams &params,
                    const EmbeddingTable &embeddings) {
  ModelGraph g(params, embeddings);
  return g.tape().value(g.PairRelation(pair));
}

Matrix InitialRelation(const std::vector<EntityPair> &support,
                       const EmbeddingTable &embeddings) {
  if (support.empty()) throw Error(ErrorCode::kInvalidArgument, "empty support set");
  Matrix sum = Matrix::Zero(1, embeddings.dim());
  for (const auto &[head, tail] : support) sum += embeddings.at(tail) - embeddings.at(head);
  return sum / static_cast<double>(support.size());
}

std::pair<Matrix, Matrix> FusePosition(const Matrix &head, const Matrix &tail,
                                       const ModelParams &params) {
  RequireShape(head, 1, params.config.dim, "head embedding");
  RequireShape(tail, 1, params.config.dim, "tail embedding");
  return {head + params.pos_head, tail + params.pos_tail};
}

EncodedTriple EncodeTriple(const Matrix &head, const Matrix &relation, const Matrix &tail,
                           const ModelParams &params) {
  const int d = params.config.dim;
  RequireShape(head, 1, d, "head");
  RequireShape(relation, 1, d, "relation");
  RequireShape(tail, 1, d, "tail");
  EmbeddingTable none(d);
  ModelGraph g(params, none);
  Tape &t = g.tape();
  EncodedTriple out;
  for (Tape::Id id : g.Encode(t.Constant(head), t.Constant(relation), t.Constant(tail))) {
    out.layers.push_back(t.value(id));
  }
  out.hidden = out.layers.back();
  return out;
}

double Score(const Matrix &head, const Matrix &relation, const Matrix &tail) {
  if (head.size() != relation.size() || head.size() != tail.size()) {
    throw Error(ErrorCode::kShapeMismatch, "score: dimension mismatch");
  }
  return (head + relation - tail).norm();
}

double TaskLoss(const FewShotTask &task, const ModelParams &params,
                const EmbeddingTable &embeddings) {
  ModelGraph g(params, embeddings);
  return g.tape().value(g.TaskLoss(task))(0, 0);
}

double Loss(const std::vector<FewShotTask> &tasks, const ModelParams &params,
            const EmbeddingTable &embeddings) {
  double total = 0;
  for (const auto &task : tasks) total += TaskLoss(task, params, embeddings);
  return total;
}

double LossAndGradient(const std::vector<FewShotTask> &tasks, const ModelParams &params,
                       const EmbeddingTable &embeddings, Gradients *grads) {
  grads->params = ModelParams::ZerosLike(params);
  grads->embeddings.clear();
  ModelGraph g(params, embeddings, grads);
  std::vector<Tape::Id> losses;
  for (const auto &task : tasks) losses.push_back(g.TaskLoss(task));
  if (losses.empty()) return 0.0;
  const Tape::Id total = g.tape().Sum(losses);
  g.tape().Backward(total);
  return g.tape().value(total)(0, 0);
}

}  // namespace kgnews::kgc
