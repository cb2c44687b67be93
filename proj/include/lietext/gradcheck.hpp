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

#include <functional>
#include <vector>

#include "lietext/tensor.hpp"

namespace lietext {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t coordinates = 0;  // number of perturbed scalars
  std::size_t worst_param = 0;
  Index worst_index = 0;
};

// Compares reverse-mode gradients against central differences.
//
// `f` must rebuild its graph from `params` on every call and return a
// single-element tensor. Error per coordinate is
//   |analytic - numeric| / max(1, |analytic|)
// and the maximum is reported. Parameters are restored afterwards and their
// gradients cleared. Throws NumericError if f is non-finite anywhere probed.
template <typename Scalar>
GradCheckResult grad_check(const std::function<Tensor<Scalar>()>& f,
                           std::vector<Tensor<Scalar>> params, double eps = 1e-5);

template <typename Scalar>
double grad_check(const std::function<Tensor<Scalar>(const Tensor<Scalar>&)>& f,
                  const Tensor<Scalar>& x, double eps = 1e-5);

}  // namespace lietext
