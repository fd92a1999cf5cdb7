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

#pragma once

#include <vector>

#include <Eigen/Core>

namespace lw::pcbc::ad {

using Matrix = Eigen::MatrixXd;

// Handle to a node on a Tape.
struct Var {
  int id = -1;
};

// Minimal reverse-mode differentiation over dense matrices. Nodes are
// appended in evaluation order, so reverse insertion order is a valid
// topological order for the backward sweep. Batches are laid out one
// sample per column.
class Tape {
 public:
  Var constant(Matrix value);
  // A leaf whose gradient is accumulated into *grad by backward().
  Var parameter(const Matrix& value, Matrix* grad);

  Var matmul(Var a, Var b);
  // x + bias * 1^T for a column-vector bias.
  Var add_bias(Var x, Var bias);
  Var tanh(Var x);
  // Stacks `top` above `bottom`; column counts must match.
  Var vconcat(Var top, Var bottom);
  // Mean over all entries of (pred - target)^2; a 1x1 node.
  Var mean_squared_error(Var pred, const Matrix& target);

  void backward(Var scalar);

  const Matrix& value(Var v) const { return nodes_[static_cast<std::size_t>(v.id)].value; }
  const Matrix& grad(Var v) const { return nodes_[static_cast<std::size_t>(v.id)].grad; }
  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op { kConstant, kParameter, kMatmul, kAddBias, kTanh, kVconcat, kMse };

  struct Node {
    explicit Node(Op o, int x = -1, int y = -1) : op(o), a(x), b(y) {}
    Op op;
    int a;
    int b;
    Matrix value;
    Matrix grad;
    Matrix aux;              // MSE target
    Matrix* sink = nullptr;  // parameter gradient destination
  };

  Var push(Node node);
  Node& at(Var v) { return nodes_[static_cast<std::size_t>(v.id)]; }

  std::vector<Node> nodes_;
};

}  // namespace lw::pcbc::ad
