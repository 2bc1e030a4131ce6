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


#include "kgnews/kgc_tape.h"

#include <cmath>

#include "kgnews/error.h"

namespace kgnews::kgc {
namespace {

void RequireSameShape(const Matrix &a, const Matrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

}  // namespace

Tape::Id Tape::Push(Matrix value, std::function<void(Tape &, Id)> backward) {
  nodes_.push_back({std::move(value), Matrix(), std::move(backward), nullptr});
  return static_cast<Id>(nodes_.size() - 1);
}

Matrix &Tape::G(Id id) {
  Node &n = nodes_[id];
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

Tape::Id Tape::Constant(const Matrix &value) { return Push(value, nullptr); }

Tape::Id Tape::Parameter(const Matrix &value, Matrix *grad_sink) {
  Id id = Push(value, nullptr);
  nodes_[id].sink = grad_sink;
  return id;
}

Tape::Id Tape::MatMul(Id a, Id b) {
  if (value(a).cols() != value(b).rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "matmul inner dimensions " + std::to_string(value(a).cols()) +
                    " vs " + std::to_string(value(b).rows()));
  }
  return Push(value(a) * value(b), [a, b](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    t.G(a) += g * t.value(b).transpose();
    t.G(b) += t.value(a).transpose() * g;
  });
}

Tape::Id Tape::Add(Id a, Id b) {
  RequireSameShape(value(a), value(b), "add");
  return Push(value(a) + value(b), [a, b](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    t.G(a) += g;
    t.G(b) += g;
  });
}

Tape::Id Tape::Sub(Id a, Id b) {
  RequireSameShape(value(a), value(b), "sub");
  return Push(value(a) - value(b), [a, b](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    t.G(a) += g;
    t.G(b) -= g;
  });
}

Tape::Id Tape::AddRow(Id a, Id row) {
  if (value(row).rows() != 1 || value(row).cols() != value(a).cols()) {
    throw Error(ErrorCode::kShapeMismatch, "add_row: bias width mismatch");
  }
  Matrix out = value(a);
  out.rowwise() += value(row).row(0);
  return Push(std::move(out), [a, row](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    t.G(a) += g;
    t.G(row) += g.colwise().sum();
  });
}

Tape::Id Tape::Scale(Id a, double s) {
  return Push(value(a) * s, [a, s](Tape &t, Id self) {
    t.G(a) += t.nodes_[self].grad * s;
  });
}

Tape::Id Tape::Relu(Id a) {
  return Push(value(a).cwiseMax(0.0), [a](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    const Matrix &x = t.value(a);
    t.G(a) += (x.array() > 0.0).cast<double>().matrix().cwiseProduct(g);
  });
}

Tape::Id Tape::Transpose(Id a) {
  return Push(value(a).transpose(), [a](Tape &t, Id self) {
    t.G(a) += t.nodes_[self].grad.transpose();
  });
}

Tape::Id Tape::Cols(Id a, int start, int count) {
  if (start < 0 || count < 0 || start + count > value(a).cols()) {
    throw Error(ErrorCode::kShapeMismatch, "column slice out of range");
  }
  return Push(value(a).middleCols(start, count), [a, start, count](Tape &t, Id self) {
    t.G(a).middleCols(start, count) += t.nodes_[self].grad;
  });
}

Tape::Id Tape::Row(Id a, int r) {
  if (r < 0 || r >= value(a).rows()) {
    throw Error(ErrorCode::kShapeMismatch, "row index out of range");
  }
  return Push(value(a).row(r), [a, r](Tape &t, Id self) {
    t.G(a).row(r) += t.nodes_[self].grad;
  });
}

Tape::Id Tape::ConcatCols(const std::vector<Id> &parts) {
  const Eigen::Index rows = value(parts.at(0)).rows();
  Eigen::Index cols = 0;
  for (Id p : parts) {
    if (value(p).rows() != rows) {
      throw Error(ErrorCode::kShapeMismatch, "concat_cols: row mismatch");
    }
    cols += value(p).cols();
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (Id p : parts) {
    out.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  return Push(std::move(out), [parts](Tape &t, Id self) {
    Eigen::Index at = 0;
    for (Id p : parts) {
      const Eigen::Index w = t.value(p).cols();
      t.G(p) += t.nodes_[self].grad.middleCols(at, w);
      at += w;
    }
  });
}

Tape::Id Tape::ConcatRows(const std::vector<Id> &parts) {
  const Eigen::Index cols = value(parts.at(0)).cols();
  Eigen::Index rows = 0;
  for (Id p : parts) {
    if (value(p).cols() != cols) {
      throw Error(ErrorCode::kShapeMismatch, "concat_rows: column mismatch");
    }
    rows += value(p).rows();
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (Id p : parts) {
    out.middleRows(at, value(p).rows()) = value(p);
    at += value(p).rows();
  }
  return Push(std::move(out), [parts](Tape &t, Id self) {
    Eigen::Index at = 0;
    for (Id p : parts) {
      const Eigen::Index h = t.value(p).rows();
      t.G(p) += t.nodes_[self].grad.middleRows(at, h);
      at += h;
    }
  });
}

Tape::Id Tape::SoftmaxRows(Id a) {
  const Matrix &x = value(a);
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double m = x.row(r).maxCoeff();
    y.row(r) = (x.row(r).array() - m).exp().matrix();
    y.row(r) /= y.row(r).sum();
  }
  return Push(std::move(y), [a](Tape &t, Id self) {
    const Matrix &y = t.nodes_[self].value;
    const Matrix &g = t.nodes_[self].grad;
    Matrix &ga = t.G(a);
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const double dot = y.row(r).dot(g.row(r));
      ga.row(r).array() += y.row(r).array() * (g.row(r).array() - dot);
    }
  });
}

Tape::Id Tape::LayerNormRows(Id x, Id gain, Id bias, double eps) {
  const Matrix &in = value(x);
  const Eigen::Index n = in.cols();
  if (value(gain).rows() != 1 || value(gain).cols() != n || value(bias).rows() != 1 ||
      value(bias).cols() != n) {
    throw Error(ErrorCode::kShapeMismatch, "layer_norm: gain/bias width mismatch");
  }
  Matrix normed(in.rows(), n);
  Eigen::VectorXd inv_std(in.rows());
  for (Eigen::Index r = 0; r < in.rows(); ++r) {
    const double mean = in.row(r).mean();
    const double var = (in.row(r).array() - mean).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    normed.row(r) = (in.row(r).array() - mean) * inv_std(r);
  }
  Matrix out = normed.array().rowwise() * value(gain).row(0).array();
  out.rowwise() += value(bias).row(0);
  return Push(std::move(out), [x, gain, bias, normed, inv_std](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    t.G(gain) += (g.array() * normed.array()).colwise().sum().matrix();
    t.G(bias) += g.colwise().sum();
    const Eigen::RowVectorXd gamma = t.value(gain).row(0);
    Matrix &gx = t.G(x);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const Eigen::RowVectorXd dxhat = g.row(r).cwiseProduct(gamma);
      const double mean_d = dxhat.mean();
      const double mean_dx = dxhat.cwiseProduct(normed.row(r)).mean();
      gx.row(r) += inv_std(r) *
                   (dxhat.array() - mean_d - normed.row(r).array() * mean_dx).matrix();
    }
  });
}

Tape::Id Tape::Im2Col(Id image, int kernel_width) {
  const Matrix &x = value(image);
  if (x.rows() != 2 || kernel_width < 1 || kernel_width % 2 == 0) {
    throw Error(ErrorCode::kShapeMismatch, "im2col expects a 2×d image and odd kernel");
  }
  const int d = static_cast<int>(x.cols());
  const int pad = kernel_width / 2;
  Matrix out = Matrix::Zero(d, 2 * kernel_width);
  for (int j = 0; j < d; ++j) {
    for (int r = 0; r < 2; ++r) {
      for (int k = 0; k < kernel_width; ++k) {
        const int src = j + k - pad;
        if (src >= 0 && src < d) out(j, r * kernel_width + k) = x(r, src);
      }
    }
  }
  return Push(std::move(out), [image, kernel_width, d, pad](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    Matrix &gx = t.G(image);
    for (int j = 0; j < d; ++j) {
      for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < kernel_width; ++k) {
          const int src = j + k - pad;
          if (src >= 0 && src < d) gx(r, src) += g(j, r * kernel_width + k);
        }
      }
    }
  });
}

Tape::Id Tape::MaxPoolRows(Id a, int window) {
  const Matrix &x = value(a);
  if (window < 1 || x.rows() < window) {
    throw Error(ErrorCode::kShapeMismatch, "max-pool window larger than input");
  }
  const Eigen::Index out_rows = x.rows() / window;
  Matrix out(out_rows, x.cols());
  Eigen::MatrixXi arg(out_rows, x.cols());
  for (Eigen::Index r = 0; r < out_rows; ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      Eigen::Index best = r * window;
      for (Eigen::Index k = 1; k < window; ++k) {
        if (x(r * window + k, c) > x(best, c)) best = r * window + k;
      }
      out(r, c) = x(best, c);
      arg(r, c) = static_cast<int>(best);
    }
  }
  return Push(std::move(out), [a, arg](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    Matrix &ga = t.G(a);
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) ga(arg(r, c), c) += g(r, c);
    }
  });
}

Tape::Id Tape::Flatten(Id a) {
  const Matrix &x = value(a);
  Matrix out(1, x.size());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) out(0, r * x.cols() + c) = x(r, c);
  }
  return Push(std::move(out), [a](Tape &t, Id self) {
    const Matrix &g = t.nodes_[self].grad;
    Matrix &ga = t.G(a);
    const Eigen::Index cols = ga.cols();
    for (Eigen::Index i = 0; i < g.cols(); ++i) ga(i / cols, i % cols) += g(0, i);
  });
}

Tape::Id Tape::Mean(const std::vector<Id> &parts) {
  if (parts.empty()) throw Error(ErrorCode::kShapeMismatch, "mean of nothing");
  Id s = Sum(parts);
  return Scale(s, 1.0 / static_cast<double>(parts.size()));
}

Tape::Id Tape::Sum(const std::vector<Id> &parts) {
  if (parts.empty()) throw Error(ErrorCode::kShapeMismatch, "sum of nothing");
  Matrix out = value(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) {
    RequireSameShape(out, value(parts[i]), "sum");
    out += value(parts[i]);
  }
  return Push(std::move(out), [parts](Tape &t, Id self) {
    for (Id p : parts) t.G(p) += t.nodes_[self].grad;
  });
}

Tape::Id Tape::Norm(Id a) {
  Matrix out(1, 1);
  out(0, 0) = value(a).norm();
  return Push(std::move(out), [a](Tape &t, Id self) {
    const double n = t.nodes_[self].value(0, 0);
    if (n == 0.0) return;
    t.G(a) += t.value(a) * (t.nodes_[self].grad(0, 0) / n);
  });
}

void Tape::Backward(Id root) {
  if (value(root).size() != 1) {
    throw Error(ErrorCode::kShapeMismatch, "backward root must be a scalar");
  }
  G(root)(0, 0) += 1.0;
  for (Id id = root; id >= 0; --id) {
    Node &n = nodes_[id];
    if (n.grad.size() == 0) continue;
    if (n.backward) n.backward(*this, id);
  }
  for (Node &n : nodes_) {
    if (n.sink && n.grad.size() != 0) *n.sink += n.grad;
  }
}

}  // namespace kgnews::kgc
