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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lietext/liegroup.hpp"
#include "lietext/rng.hpp"

using namespace lietext;
using G = GroupElement<double>;
using A = AlgebraVector<double>;

namespace {

constexpr double kPi = std::numbers::pi;

A scalar_algebra(GroupKind g, double v) { return {g, Vector<double>::Constant(1, v)}; }

double dist(const G& a, const G& b) { return (a.coords - b.coords).lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("exp and log round trips on T(1) and SO(2)") {
  Rng rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform(-50.0, 50.0);
    const G gt = exp(scalar_algebra(GroupKind::T1, t));
    worst = std::max(worst, std::abs(log(gt).coeffs(0) - t));
    worst = std::max(worst, dist(exp(log(gt)), gt));

    const double theta = rng.uniform(-kPi, kPi);
    const G gr = exp(scalar_algebra(GroupKind::SO2, theta));
    worst = std::max(worst, std::abs(log(gr).coeffs(0) - theta));
    worst = std::max(worst, dist(exp(log(gr)), gr));
  }
  MESSAGE("worst round-trip error " << worst);
  CHECK(worst < 1e-9);
}

TEST_CASE("group axioms on T(1) and SO(2)") {
  Rng rng(2027);
  for (GroupKind g : {GroupKind::T1, GroupKind::SO2}) {
    const G e = identity<double>(g);
    auto draw = [&] { return exp(scalar_algebra(g, g == GroupKind::T1 ? rng.uniform(-10, 10) : rng.uniform(-kPi, kPi))); };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const G a = draw(), b = draw(), c = draw();
      worst = std::max(worst, dist(compose(compose(a, b), c), compose(a, compose(b, c))));
      worst = std::max(worst, dist(compose(a, e), a));
      worst = std::max(worst, dist(compose(e, a), a));
      worst = std::max(worst, dist(compose(a, inverse(a)), e));
      worst = std::max(worst, dist(compose(inverse(a), a), e));
    }
    MESSAGE(group_name(g) << " worst axiom error " << worst);
    CHECK(worst < 1e-12);
  }
}
