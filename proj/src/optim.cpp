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

#include "lietext/optim.hpp"

#include <string>

#include "lietext/errors.hpp"

namespace lietext {
namespace {

template <typename Scalar>
void require_grads(const std::vector<Tensor<Scalar>>& params) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].has_grad()) {
      throw PreconditionError("optimizer step: parameter " + std::to_string(i) +
                              " has no gradient");
    }
  }
}

template <typename Scalar>
std::vector<Matrix<Scalar>> zeros_like(const std::vector<Tensor<Scalar>>& params) {
  std::vector<Matrix<Scalar>> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back(Matrix<Scalar>::Zero(p.rows(), p.cols()));
  return out;
}

}  // namespace

template <typename Scalar>
Adadelta<Scalar>::Adadelta(std::vector<Tensor<Scalar>> params, AdadeltaOptions options)
    : params_(std::move(params)),
      options_(options),
      square_grad_(zeros_like(params_)),
      square_update_(zeros_like(params_)) {}

template <typename Scalar>
void Adadelta<Scalar>::step() {
  require_grads(params_);
  const Scalar rho = static_cast<Scalar>(options_.rho);
  const Scalar eps = static_cast<Scalar>(options_.epsilon);
  const Scalar lr = static_cast<Scalar>(options_.lr);
  const Scalar decay = static_cast<Scalar>(options_.lr * options_.weight_decay);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto& p = params_[i].mutable_value();
    const auto& g = params_[i].grad();
    auto& eg2 = square_grad_[i];
    auto& edx2 = square_update_[i];
    eg2 = rho * eg2 + (Scalar(1) - rho) * g.cwiseAbs2();
    Matrix<Scalar> dx = -(((edx2.array() + eps).sqrt() / (eg2.array() + eps).sqrt()) * g.array()).matrix();
    edx2 = rho * edx2 + (Scalar(1) - rho) * dx.cwiseAbs2();
    if (decay != Scalar(0)) p -= decay * p;
    p += lr * dx;
  }
}

template <typename Scalar>
void Adadelta<Scalar>::zero_grad() {
  lietext::zero_grad(params_);
}

template <typename Scalar>
SgdMomentum<Scalar>::SgdMomentum(std::vector<Tensor<Scalar>> params, SgdMomentumOptions options)
    : params_(std::move(params)), options_(options), velocity_(zeros_like(params_)) {}

template <typename Scalar>
void SgdMomentum<Scalar>::step() {
  require_grads(params_);
  const Scalar lr = static_cast<Scalar>(options_.lr);
  const Scalar mu = static_cast<Scalar>(options_.momentum);
  const Scalar decay = static_cast<Scalar>(options_.lr * options_.weight_decay);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto& p = params_[i].mutable_value();
    auto& v = velocity_[i];
    v = mu * v + params_[i].grad();
    if (decay != Scalar(0)) p -= decay * p;
    p -= lr * v;
  }
}

template <typename Scalar>
void SgdMomentum<Scalar>::zero_grad() {
  lietext::zero_grad(params_);
}

template class Adadelta<float>;
template class Adadelta<double>;
template class SgdMomentum<float>;
template class SgdMomentum<double>;

}  // namespace lietext
