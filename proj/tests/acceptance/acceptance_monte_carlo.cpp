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

using namespace lietext;

TEST_CASE("Monte Carlo quadrature with 256 samples tracks the lattice on a fixed instance") {
  const double dev = mc_relative_deviation(256, 0);
  MESSAGE("mean absolute deviation relative to the lattice output: " << dev);
  CHECK(dev < 0.05);
}
