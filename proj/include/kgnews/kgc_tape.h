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


// Minimal reverse-mode differentiation over dense matrices. Nodes are
// appended in evaluation order, so a reverse sweep over the node list is a
// valid topological order for back-propagation.

#ifndef KGNEWS_KGC_TAPE_H_
#define KGNEWS_KGC_TAPE_H_

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace kgnews::kgc {

using Matrix = Eigen::MatrixXd;

class Tape {
 public:
  using Id = int;

  Id Constant(const Matrix &value);
  // A leaf whose gradient is added to *grad_sink by Backward(). A null sink
  // makes it behave like a constant.
  Id Parameter(const Matrix &value, Matrix *grad_sink);

  const Matrix &value(Id id) const { return nodes_[id].value; }
  const Matrix &grad(Id id) const { return nodes_[id].grad; }
  size_t size() const { return nodes_.size(); }

  Id MatMul(Id a, Id b);
  Id Add(Id a, Id b);
  Id Sub(Id a, Id b);
  // Adds a 1×n row to every row of a.
  Id AddRow(Id a, Id row);
  Id Scale(Id a, double s);
  Id Relu(Id a);
  Id Transpose(Id a);
  Id Cols(Id a, int start, int count);
  Id Row(Id a, int r);
  Id ConcatCols(const std::vector<Id> &parts);
  Id ConcatRows(const std::vector<Id> &parts);
  Id SoftmaxRows(Id a);
  Id LayerNormRows(Id x, Id gain, Id bias, double eps);
  // Patches of a 2×d image for a 2×k kernel with zero "same" padding along
  // the width: returns d × 2k, one row per output position.
  Id Im2Col(Id image, int kernel_width);
  // Non-overlapping max over windows of rows; trailing rows that do not fill
  // a window are dropped.
  Id MaxPoolRows(Id a, int window);
  // Row-major flatten into a 1 × (rows·cols) row vector.
  Id Flatten(Id a);
  Id Mean(const std::vector<Id> &parts);
  Id Sum(const std::vector<Id> &parts);
  // Euclidean norm of all entries, 1×1. The gradient at zero is taken as 0.
  Id Norm(Id a);

  // Seeds d(root)/d(root) = 1 for a 1×1 root and propagates to every node,
  // then adds parameter gradients into their sinks.
  void Backward(Id root);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    std::function<void(Tape &, Id)> backward;
    Matrix *sink = nullptr;
  };

  Id Push(Matrix value, std::function<void(Tape &, Id)> backward);
  Matrix &G(Id id);

  std::vector<Node> nodes_;
};

}  // namespace kgnews::kgc

#endif  // KGNEWS_KGC_TAPE_H_
