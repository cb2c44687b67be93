// Copyright 2026 The lietext Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lietext {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;
using Shape = std::vector<Index>;

Index shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

template <typename Scalar>
class Tensor;

namespace detail {

template <typename Scalar>
struct Node {
  using Backward = std::function<void(const Matrix<Scalar>& grad_out)>;

  Matrix<Scalar> value;
  Matrix<Scalar> grad;  // empty until a gradient arrives
  Shape shape;
  bool requires_grad = false;
  bool consumed = false;  // set once a backward pass has run through this node
  std::string op;         // "leaf" for parameters and constants
  std::vector<std::shared_ptr<Node>> inputs;
  Backward backward;

  void accumulate(const Matrix<Scalar>& delta);
  // Gradient buffer, zero-initialized to the value's size on first use.
  Matrix<Scalar>& grad_buffer();
};

}  // namespace detail

// Dense tensor participating in a reverse-mode gradient tape.
//
// Storage is a row-major Eigen matrix. A tensor of shape {d0, d1, ..., dk}
// is held as a d0 x (d1*...*dk) matrix; rank-1 tensors are 1 x n rows and
// rank-0 tensors are 1 x 1. Copies share the underlying node.
template <typename Scalar>
class Tensor {
 public:
  using Node = detail::Node<Scalar>;
  using MatrixType = Matrix<Scalar>;

  Tensor() = default;

  static Tensor constant(MatrixType value);
  static Tensor constant(MatrixType value, Shape shape);
  static Tensor parameter(MatrixType value);
  static Tensor parameter(MatrixType value, Shape shape);
  static Tensor scalar(Scalar v) { return constant(MatrixType::Constant(1, 1, v), Shape{}); }

  bool defined() const noexcept { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  Index rank() const { return static_cast<Index>(node_->shape.size()); }
  Index rows() const { return node_->value.rows(); }
  Index cols() const { return node_->value.cols(); }
  Index size() const { return node_->value.size(); }

  const MatrixType& value() const { return node_->value; }
  // Direct write access, for optimizers and initializers. Does not touch the tape.
  MatrixType& mutable_value() { return node_->value; }
  Scalar item() const;

  bool requires_grad() const { return node_->requires_grad; }
  bool has_grad() const { return node_->grad.size() != 0; }
  const MatrixType& grad() const { return node_->grad; }
  MatrixType& mutable_grad() { return node_->grad; }
  void zero_grad() { node_->grad.resize(0, 0); }

  const std::string& op() const { return node_->op; }
  bool is_leaf() const { return node_->op == "leaf"; }

  const std::shared_ptr<Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.node_ == b.node_; }

 private:
  std::shared_ptr<Node> node_;
};

// Builds the result of a primitive op. Rejects non-finite values. When no
// input requires a gradient the inputs and backward closure are dropped, so
// inference builds no tape.
template <typename Scalar>
Tensor<Scalar> make_op(std::string op, Matrix<Scalar> value, Shape shape,
                       std::vector<Tensor<Scalar>> inputs,
                       typename detail::Node<Scalar>::Backward backward);

// Ordered record of the primitive ops reachable from a root.
template <typename Scalar>
class GradTape {
 public:
  using NodePtr = std::shared_ptr<detail::Node<Scalar>>;

  // Collects ops in topological order: every op appears after its inputs.
  static GradTape record(const Tensor<Scalar>& root);

  const std::vector<NodePtr>& ops() const { return ops_; }

  // Seeds d(root)/d(root) = 1, propagates in reverse order, then clears
  // the tape (closures and input links of recorded ops are released).
  void backward();

 private:
  NodePtr root_;
  std::vector<NodePtr> ops_;
  bool done_ = false;
};

// loss must hold exactly one element.
template <typename Scalar>
void backward(const Tensor<Scalar>& loss);

template <typename Scalar>
void zero_grad(std::vector<Tensor<Scalar>>& params) {
  for (auto& p : params) p.zero_grad();
}

}  // namespace lietext
