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

#include "lietext/gradcheck.hpp"
#include "lietext/models.hpp"

namespace lietext {

// Tiny config: embedding 8, widths {2, 3}, 4 filters or channels, no dropout.
ModelConfig tiny_model_config(Architecture a);

// End-to-end grad_check of the cross-entropy loss for a tiny model on a
// 2-sentence batch, every parameter drawn uniformly from (-0.5, 0.5).
template <typename Scalar>
GradCheckResult model_grad_check(Architecture a, std::uint64_t seed = 15);

struct ParityReport {
  Index instances = 0;
  Index exact = 0;  // instances whose outputs match bit for bit
  double max_abs_diff = 0.0;
};

// Random T(1) layers with lookup-frozen kernels against relu(conv1d_valid)
// computed from the same table and bias, in double precision.
ParityReport lookup_parity(Index instances, std::uint64_t seed = 0);

// Mean |MC - lattice| / mean |lattice| over the feature maps of a fixed
// random instance (widths {3, 5}, identity activation) for K samples.
double mc_relative_deviation(Index samples, std::uint64_t seed);

}  // namespace lietext
