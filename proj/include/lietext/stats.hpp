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

#include <span>
#include <vector>

namespace lietext {

// u.v / (|u| |v|). Throws UndefinedError if either norm is zero and
// DimensionError on a length mismatch.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

// Product-moment correlation. Needs equal lengths >= 3 (PreconditionError,
// DimensionError) and non-constant inputs (UndefinedError).
double pearson(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> xs);

// pearson over average_ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};
MeanStd mean_std(std::span<const double> xs);

}  // namespace lietext
