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

#include "doctest.h"
#include "lietext/verify.hpp"
#include "timing.hpp"

using namespace lietext;

TEST_CASE("end-to-end gradients of tiny Lie models in double precision") {
  testing::Stopwatch clock;
  for (Architecture a : {Architecture::Sclie, Architecture::Dpclie}) {
    const auto c = tiny_model_config(a);
    REQUIRE(c.embedding_dim == 8);
    REQUIRE(c.effective_channels() == 4);
    const auto r = model_grad_check<double>(a);
    MESSAGE(architecture_name(a) << ": max relative error " << r.max_relative_error << " over " << r.coordinates
                                 << " coordinates");
    CHECK(r.coordinates > 0);
    CHECK(r.max_relative_error < 1e-4);
  }
  CHECK(clock.seconds() < 60.0);
}
