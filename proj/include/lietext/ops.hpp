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

#include <cstdint>
#include <span>
#include <vector>

#include "lietext/rng.hpp"
#include "lietext/tensor.hpp"

namespace lietext {

// Primitive differentiable ops. Each returns a new tensor and, when any
// input requires a gradient, records its backward rule.

// [m x k] * [k x n]. Operands must be rank <= 2.
template <typename Scalar>
Tensor<Scalar> matmul(const Tensor<Scalar>& a, const Tensor<Scalar>& b);

// Elementwise with equal shapes, or with one operand a single element.
template <typename Scalar>
Tensor<Scalar> add(const Tensor<Scalar>& a, const Tensor<Scalar>& b);
template <typename Scalar>
Tensor<Scalar> mul(const Tensor<Scalar>& a, const Tensor<Scalar>& b);
template <typename Scalar>
Tensor<Scalar> scale(const Tensor<Scalar>& a, Scalar factor);
// relu'(0) = 0.
template <typename Scalar>
Tensor<Scalar> relu(const Tensor<Scalar>& a);

// x [r x c] + bias [c], bias broadcast over rows.
template <typename Scalar>
Tensor<Scalar> add_bias(const Tensor<Scalar>& x, const Tensor<Scalar>& bias);

template <typename Scalar>
Tensor<Scalar> sum(const Tensor<Scalar>& a);

template <typename Scalar>
Tensor<Scalar> reshape(const Tensor<Scalar>& a, Shape shape);

// Row lookup over the leading axis; output is [rows x rest]. Rows equal to
// `frozen_row` receive no gradient.
template <typename Scalar>
Tensor<Scalar> gather_rows(const Tensor<Scalar>& table, std::span<const std::int32_t> rows,
                           std::int32_t frozen_row = -1);

// Zero rows before and after.
template <typename Scalar>
Tensor<Scalar> pad_rows(const Tensor<Scalar>& x, Index before, Index after);

template <typename Scalar>
Tensor<Scalar> concat_cols(std::span<const Tensor<Scalar>> parts);
template <typename Scalar>
Tensor<Scalar> concat_rows(std::span<const Tensor<Scalar>> parts);

// input [n x d], kernel [l x d x s], bias [s] -> [(n-l+1) x s]
//   out[i][j] = sum_{t<l, c<d} input[i+t][c] * kernel[t][c][j] + bias[j]
// The (t, c) accumulation order is fixed and part of the contract.
template <typename Scalar>
Tensor<Scalar> conv1d_valid(const Tensor<Scalar>& input, const Tensor<Scalar>& kernel,
                            const Tensor<Scalar>& bias);

// Rank 1 [n]: scalar maximum. Rank 2 [n x s]: per-column maximum, shape [s].
// The gradient goes to the first maximal index only.
template <typename Scalar>
Tensor<Scalar> max_over_time(const Tensor<Scalar>& x);

// Max pooling along rows with window `size`, step `stride` and (size-1)/2
// implicit padding on each side. Output rows: (n + 2p - size) / stride + 1.
template <typename Scalar>
Tensor<Scalar> max_pool_rows(const Tensor<Scalar>& x, Index size, Index stride);

// Mean over the batch of -log softmax(logits)[label]. Max-shifted.
template <typename Scalar>
Tensor<Scalar> softmax_cross_entropy(const Tensor<Scalar>& logits,
                                     std::span<const std::int32_t> labels);

// Inverted dropout: survivors scaled by 1/(1-rate). Identity when
// !training or rate == 0.
template <typename Scalar>
Tensor<Scalar> dropout(const Tensor<Scalar>& x, double rate, bool training, Rng& rng);

}  // namespace lietext
