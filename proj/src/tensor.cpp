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

#include "lietext/tensor.hpp"

#include <sstream>
#include <unordered_set>

#include "lietext/errors.hpp"

namespace lietext {

Index shape_size(const Shape& shape) {
  Index n = 1;
  for (Index d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
  os << ']';
  return os.str();
}

namespace {

template <typename Scalar>
Matrix<Scalar> canonical_layout(Matrix<Scalar> value, const Shape& shape) {
  for (Index d : shape) {
    if (d < 0) throw DimensionError("negative dimension in shape " + shape_string(shape));
  }
  const Index n = shape_size(shape);
  if (n != value.size()) {
    std::ostringstream os;
    os << "shape " << shape_string(shape) << " holds " << n << " values, data holds "
       << value.size();
    throw DimensionError(os.str());
  }
  const Index rows = shape.size() >= 2 ? shape[0] : 1;
  const Index cols = rows == 0 ? 0 : n / rows;
  if (value.rows() != rows || value.cols() != cols) {
    Matrix<Scalar> out(rows, cols);
    std::copy(value.data(), value.data() + n, out.data());
    return out;
  }
  return value;
}

template <typename Scalar>
std::shared_ptr<detail::Node<Scalar>> leaf(Matrix<Scalar> value, Shape shape, bool requires_grad) {
  auto node = std::make_shared<detail::Node<Scalar>>();
  node->value = canonical_layout(std::move(value), shape);
  node->shape = std::move(shape);
  node->requires_grad = requires_grad;
  node->op = "leaf";
  return node;
}

}  // namespace

template <typename Scalar>
void detail::Node<Scalar>::accumulate(const Matrix<Scalar>& delta) {
  if (grad.size() == 0) {
    grad = delta;
  } else {
    grad += delta;
  }
}

template <typename Scalar>
Matrix<Scalar>& detail::Node<Scalar>::grad_buffer() {
  if (grad.size() == 0) grad = Matrix<Scalar>::Zero(value.rows(), value.cols());
  return grad;
}

template <typename Scalar>
Tensor<Scalar> Tensor<Scalar>::constant(MatrixType value) {
  Shape shape{value.rows(), value.cols()};
  return Tensor(leaf(std::move(value), std::move(shape), false));
}

template <typename Scalar>
Tensor<Scalar> Tensor<Scalar>::constant(MatrixType value, Shape shape) {
  return Tensor(leaf(std::move(value), std::move(shape), false));
}

template <typename Scalar>
Tensor<Scalar> Tensor<Scalar>::parameter(MatrixType value) {
  Shape shape{value.rows(), value.cols()};
  return Tensor(leaf(std::move(value), std::move(shape), true));
}

template <typename Scalar>
Tensor<Scalar> Tensor<Scalar>::parameter(MatrixType value, Shape shape) {
  return Tensor(leaf(std::move(value), std::move(shape), true));
}

template <typename Scalar>
Scalar Tensor<Scalar>::item() const {
  if (size() != 1) {
    throw DimensionError("item() on tensor of shape " + shape_string(shape()));
  }
  return node_->value(0, 0);
}

template <typename Scalar>
Tensor<Scalar> make_op(std::string op, Matrix<Scalar> value, Shape shape,
                       std::vector<Tensor<Scalar>> inputs,
                       typename detail::Node<Scalar>::Backward backward) {
  if (!value.allFinite()) {
    throw NumericError(op + " produced a non-finite value");
  }
  auto node = std::make_shared<detail::Node<Scalar>>();
  node->value = canonical_layout(std::move(value), shape);
  node->shape = std::move(shape);
  node->op = std::move(op);
  for (const auto& in : inputs) {
    if (in.requires_grad()) node->requires_grad = true;
  }
  if (node->requires_grad) {
    node->inputs.reserve(inputs.size());
    for (const auto& in : inputs) node->inputs.push_back(in.node());
    node->backward = std::move(backward);
  }
  return Tensor<Scalar>(std::move(node));
}

template <typename Scalar>
GradTape<Scalar> GradTape<Scalar>::record(const Tensor<Scalar>& root) {
  GradTape tape;
  tape.root_ = root.node();
  if (tape.root_->consumed) {
    throw PreconditionError("backward already ran through this graph; run a new forward pass");
  }
  // Iterative post-order DFS.
  std::unordered_set<const detail::Node<Scalar>*> visited;
  std::vector<std::pair<NodePtr, std::size_t>> stack;
  stack.emplace_back(tape.root_, 0);
  visited.insert(tape.root_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      NodePtr child = node->inputs[next++];
      if (child->consumed && child->op != "leaf") {
        throw PreconditionError("graph reuses a " + child->op +
                                " result whose tape was already replayed");
      }
      if (child->requires_grad && !child->inputs.empty() &&
          visited.insert(child.get()).second) {
        stack.emplace_back(std::move(child), 0);
      }
      continue;
    }
    if (node->backward) tape.ops_.push_back(node);
    stack.pop_back();
  }
  return tape;
}

template <typename Scalar>
void GradTape<Scalar>::backward() {
  if (done_) throw PreconditionError("tape already replayed");
  if (root_->value.size() != 1) {
    throw DimensionError("backward needs a scalar root, got " + shape_string(root_->shape));
  }
  if (root_->requires_grad) {
    root_->accumulate(Matrix<Scalar>::Ones(1, 1));
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
      auto& node = **it;
      if (node.grad.size() != 0) node.backward(node.grad);
    }
  }
  for (auto& node : ops_) {
    node->backward = nullptr;
    node->inputs.clear();
    node->consumed = true;
  }
  root_->consumed = true;
  done_ = true;
}

template <typename Scalar>
void backward(const Tensor<Scalar>& loss) {
  GradTape<Scalar>::record(loss).backward();
}

template class Tensor<float>;
template class Tensor<double>;
template class GradTape<float>;
template class GradTape<double>;
template struct detail::Node<float>;
template struct detail::Node<double>;
template Tensor<float> make_op(std::string, Matrix<float>, Shape, std::vector<Tensor<float>>,
                               detail::Node<float>::Backward);
template Tensor<double> make_op(std::string, Matrix<double>, Shape, std::vector<Tensor<double>>,
                                detail::Node<double>::Backward);
template void backward(const Tensor<float>&);
template void backward(const Tensor<double>&);

}  // namespace lietext
