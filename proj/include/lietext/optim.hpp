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

#include <vector>

#include "lietext/tensor.hpp"

namespace lietext {

struct AdadeltaOptions {
  double lr = 1.0;
  double rho = 0.95;
  double epsilon = 1e-6;
  double weight_decay = 0.0;  // decoupled
};

struct SgdMomentumOptions {
  double lr = 0.1;
  double momentum = 0.9;
  double weight_decay = 0.0;  // decoupled
};

// Adadelta with per-parameter running averages of squared gradients and
// squared updates. Accumulators start at zero and match parameter shapes.
template <typename Scalar>
class Adadelta {
 public:
  Adadelta(std::vector<Tensor<Scalar>> params, AdadeltaOptions options = {});

  // Requires every parameter to carry a gradient.
  void step();
  void zero_grad();

  AdadeltaOptions& options() { return options_; }
  const std::vector<Matrix<Scalar>>& square_grad_avg() const { return square_grad_; }
  const std::vector<Matrix<Scalar>>& square_update_avg() const { return square_update_; }

 private:
  std::vector<Tensor<Scalar>> params_;
  AdadeltaOptions options_;
  std::vector<Matrix<Scalar>> square_grad_;
  std::vector<Matrix<Scalar>> square_update_;
};

// Heavy-ball SGD: v <- momentum * v + g; p <- p - lr * v, with decoupled
// weight decay p <- p - lr * weight_decay * p applied first.
template <typename Scalar>
class SgdMomentum {
 public:
  SgdMomentum(std::vector<Tensor<Scalar>> params, SgdMomentumOptions options = {});

  void step();
  void zero_grad();

  SgdMomentumOptions& options() { return options_; }
  void set_lr(double lr) { options_.lr = lr; }
  const std::vector<Matrix<Scalar>>& velocity() const { return velocity_; }

 private:
  std::vector<Tensor<Scalar>> params_;
  SgdMomentumOptions options_;
  std::vector<Matrix<Scalar>> velocity_;
};

}  // namespace lietext
