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

#include "lietext/gradcheck.hpp"

#include <cmath>

#include "lietext/errors.hpp"

namespace lietext {

template <typename Scalar>
GradCheckResult grad_check(const std::function<Tensor<Scalar>()>& f,
                           std::vector<Tensor<Scalar>> params, double eps) {
  zero_grad(params);
  Tensor<Scalar> loss = f();
  if (!std::isfinite(static_cast<double>(loss.item()))) {
    throw NumericError("grad_check: non-finite function value");
  }
  backward(loss);

  std::vector<Matrix<Scalar>> analytic;
  analytic.reserve(params.size());
  for (const auto& p : params) {
    analytic.push_back(p.has_grad() ? p.grad() : Matrix<Scalar>::Zero(p.rows(), p.cols()));
  }

  GradCheckResult result;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    auto& value = params[pi].mutable_value();
    for (Index i = 0; i < value.size(); ++i) {
      const Scalar saved = value.data()[i];
      value.data()[i] = static_cast<Scalar>(saved + eps);
      const double up = static_cast<double>(f().item());
      value.data()[i] = static_cast<Scalar>(saved - eps);
      const double down = static_cast<double>(f().item());
      value.data()[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericError("grad_check: non-finite function value under perturbation");
      }
      const double numeric = (up - down) / (2.0 * eps);
      const double a = static_cast<double>(analytic[pi].data()[i]);
      const double err = std::abs(a - numeric) / std::max(1.0, std::abs(a));
      if (!std::isfinite(err)) throw NumericError("grad_check: non-finite gradient");
      if (err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_param = pi;
        result.worst_index = i;
      }
      ++result.coordinates;
    }
  }
  zero_grad(params);
  return result;
}

template <typename Scalar>
double grad_check(const std::function<Tensor<Scalar>(const Tensor<Scalar>&)>& f,
                  const Tensor<Scalar>& x, double eps) {
  std::function<Tensor<Scalar>()> g = [&] { return f(x); };
  return grad_check<Scalar>(g, {x}, eps).max_relative_error;
}

template GradCheckResult grad_check(const std::function<Tensor<float>()>&,
                                    std::vector<Tensor<float>>, double);
template GradCheckResult grad_check(const std::function<Tensor<double>()>&,
                                    std::vector<Tensor<double>>, double);
template double grad_check(const std::function<Tensor<float>(const Tensor<float>&)>&,
                           const Tensor<float>&, double);
template double grad_check(const std::function<Tensor<double>(const Tensor<double>&)>&,
                           const Tensor<double>&, double);

}  // namespace lietext
