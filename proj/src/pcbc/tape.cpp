// Copyright 2026 The lw Authors
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

#include "lw/pcbc/tape.hpp"

#include "lw/common/error.hpp"

namespace lw::pcbc::ad {

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::constant(Matrix value) {
  Node n{Op::kConstant};
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::parameter(const Matrix& value, Matrix* grad) {
  Node n{Op::kParameter};
  n.value = value;
  n.sink = grad;
  return push(std::move(n));
}

Var Tape::matmul(Var a, Var b) {
  if (value(a).cols() != value(b).rows()) throw InvalidArgument("matmul: shape mismatch");
  Node n{Op::kMatmul, a.id, b.id};
  n.value.noalias() = value(a) * value(b);
  return push(std::move(n));
}

Var Tape::add_bias(Var x, Var bias) {
  if (value(bias).cols() != 1 || value(bias).rows() != value(x).rows()) {
    throw InvalidArgument("add_bias: shape mismatch");
  }
  Node n{Op::kAddBias, x.id, bias.id};
  n.value = value(x).colwise() + value(bias).col(0);
  return push(std::move(n));
}

Var Tape::tanh(Var x) {
  Node n{Op::kTanh, x.id};
  n.value = value(x).array().tanh().matrix();
  return push(std::move(n));
}

Var Tape::vconcat(Var top, Var bottom) {
  if (value(top).cols() != value(bottom).cols()) throw InvalidArgument("vconcat: column mismatch");
  Node n{Op::kVconcat, top.id, bottom.id};
  n.value.resize(value(top).rows() + value(bottom).rows(), value(top).cols());
  n.value << value(top), value(bottom);
  return push(std::move(n));
}

Var Tape::mean_squared_error(Var pred, const Matrix& target) {
  if (value(pred).rows() != target.rows() || value(pred).cols() != target.cols()) {
    throw InvalidArgument("mean_squared_error: shape mismatch");
  }
  Node n{Op::kMse, pred.id};
  n.aux = target;
  n.value = Matrix::Constant(1, 1, (value(pred) - target).squaredNorm() /
                                        static_cast<double>(target.size()));
  return push(std::move(n));
}

void Tape::backward(Var scalar) {
  if (value(scalar).size() != 1) throw InvalidArgument("backward: loss must be a scalar");
  for (auto& n : nodes_) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  at(scalar).grad(0, 0) = 1.0;

  for (int i = scalar.id; i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.op) {
      case Op::kConstant:
        break;
      case Op::kParameter:
        if (n.sink != nullptr) *n.sink += n.grad;
        break;
      case Op::kMatmul: {
        Node& a = nodes_[static_cast<std::size_t>(n.a)];
        Node& b = nodes_[static_cast<std::size_t>(n.b)];
        if (a.op != Op::kConstant) a.grad.noalias() += n.grad * b.value.transpose();
        if (b.op != Op::kConstant) b.grad.noalias() += a.value.transpose() * n.grad;
        break;
      }
      case Op::kAddBias:
        nodes_[static_cast<std::size_t>(n.a)].grad += n.grad;
        nodes_[static_cast<std::size_t>(n.b)].grad += n.grad.rowwise().sum();
        break;
      case Op::kTanh:
        nodes_[static_cast<std::size_t>(n.a)].grad.array() +=
            n.grad.array() * (1.0 - n.value.array().square());
        break;
      case Op::kVconcat: {
        Node& top = nodes_[static_cast<std::size_t>(n.a)];
        Node& bottom = nodes_[static_cast<std::size_t>(n.b)];
        top.grad += n.grad.topRows(top.value.rows());
        bottom.grad += n.grad.bottomRows(bottom.value.rows());
        break;
      }
      case Op::kMse: {
        Node& p = nodes_[static_cast<std::size_t>(n.a)];
        p.grad += (2.0 * n.grad(0, 0) / static_cast<double>(n.aux.size())) * (p.value - n.aux);
        break;
      }
    }
  }
}

}  // namespace lw::pcbc::ad
