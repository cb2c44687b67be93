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

using namespace lietext;
using G = GroupElement<double>;
using A = AlgebraVector<double>;
using V = Vector<double>;
constexpr double kPi = std::numbers::pi;

namespace {

A alg(GroupKind g, std::initializer_list<double> c) {
  V v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v(i++) = x;
  return {g, v};
}

G random_element(GroupKind g, Rng& rng) {
  V v(algebra_dim(g));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.uniform(-kPi + 1e-9, kPi);
  if (g != GroupKind::SO2) v *= 3.0;
  return exp(A{g, v});
}

// Distance in the canonical representation.
double dist(const G& a, const G& b) { return (a.coords - b.coords).lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("exp") {
  CHECK(dist(exp(alg(GroupKind::T1, {0.0})), identity<double>(GroupKind::T1)) == 0.0);
  auto q = exp(alg(GroupKind::SO2, {kPi / 2}));
  CHECK(std::abs(q.coords(0)) < 1e-12);
  CHECK(std::abs(q.coords(1) - 1.0) < 1e-12);
  CHECK(log(exp(alg(GroupKind::T1, {0.5}))).coeffs(0) == 0.5);
  CHECK_THROWS_AS(parse_group("se3"), PreconditionError);
  CHECK(parse_group("so2") == GroupKind::SO2);
}

TEST_CASE("log") {
  for (GroupKind g : {GroupKind::T1, GroupKind::T2, GroupKind::SO2}) {
    CHECK(log(identity<double>(g)).coeffs.isZero());
  }
  CHECK(log(exp(alg(GroupKind::SO2, {3 * kPi}))).coeffs(0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(log(exp(alg(GroupKind::SO2, {-kPi}))).coeffs(0) == doctest::Approx(kPi).epsilon(1e-12));

  Rng rng(42);
  for (GroupKind g : {GroupKind::T1, GroupKind::SO2}) {
    for (int i = 0; i < 1000; ++i) {
      const double v = rng.uniform(-kPi, kPi);
      REQUIRE(std::abs(log(exp(alg(g, {v}))).coeffs(0) - v) < 1e-9);
      const G e = random_element(g, rng);
      REQUIRE(dist(exp(log(e)), e) < 1e-9);
    }
  }
}

TEST_CASE("group axioms") {
  Rng rng(7);
  for (GroupKind g : {GroupKind::T1, GroupKind::T2, GroupKind::SO2}) {
    const G e = identity<double>(g);
    for (int i = 0; i < 1000; ++i) {
      const G a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
      REQUIRE(dist(compose(compose(a, b), c), compose(a, compose(b, c))) < 1e-12);
      REQUIRE(dist(compose(a, e), a) < 1e-12);
      REQUIRE(dist(compose(e, a), a) < 1e-12);
      REQUIRE(dist(compose(a, inverse(a)), e) < 1e-12);
      REQUIRE(dist(compose(inverse(a), a), e) < 1e-12);
      if (g == GroupKind::SO2) REQUIRE(std::abs(compose(a, b).coords.squaredNorm() - 1.0) < 1e-9);
    }
  }
  CHECK(compose(exp(alg(GroupKind::T1, {2.0})), exp(alg(GroupKind::T1, {3.0}))).coords(0) == 5.0);
  CHECK_THROWS_AS(compose(identity<double>(GroupKind::T1), identity<double>(GroupKind::SO2)),
                  PreconditionError);
}

TEST_CASE("lift") {
  Eigen::MatrixXd f(3, 2);
  f << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  auto seq = lift<double>({0.0, 1.0, 2.0}, f, GroupKind::T1);
  REQUIRE(seq.elements.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(seq.elements[static_cast<std::size_t>(i)].coords(0) == i);
    CHECK(act_on_origin(seq.elements[static_cast<std::size_t>(i)])(0) == i);
  }
  CHECK(seq.features == f);

  auto empty = lift<double>({}, Eigen::MatrixXd(0, 2), GroupKind::T1);
  CHECK(empty.elements.empty());

  CHECK_THROWS_WITH_AS(lift<double>({0.0}, Eigen::MatrixXd(1, 1), GroupKind::T1, 2),
                       doctest::Contains("t1"), PreconditionError);
  CHECK_THROWS_AS(lift<double>({0.0, 1.0}, Eigen::MatrixXd(1, 1), GroupKind::T1), DimensionError);

  auto fibre = lift<double>({0.0, 4.0}, Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 1)), GroupKind::T2, 3);
  REQUIRE(fibre.elements.size() == 6);
  for (std::size_t k = 3; k < 6; ++k) CHECK(fibre.elements[k].coords(0) == 4.0);
  CHECK(fibre.elements[3].coords(1) == -0.5);
  CHECK(fibre.elements[5].coords(1) == 0.5);

  auto ring = lift<double>({0.0, 1.0}, Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 1)), GroupKind::SO2, 1, 0.5);
  CHECK(act_on_origin(ring.elements[1])(0) == doctest::Approx(0.5));
}

TEST_CASE("neighborhood quadrature") {
  const G c = identity<double>(GroupKind::T1);
  auto q = neighborhood_quadrature(c, 1.0, 3, QuadratureMode::Deterministic);
  REQUIRE(q.nodes.size() == 3);
  CHECK(q.nodes[0].coords(0) == -1.0);
  CHECK(q.nodes[1].coords(0) == 0.0);
  CHECK(q.nodes[2].coords(0) == 1.0);
  for (double w : q.weights) CHECK(w == doctest::Approx(2.0 / 3.0));

  const G c5 = exp(alg(GroupKind::T1, {5.0}));
  auto one = neighborhood_quadrature(c5, 0.5, 1, QuadratureMode::Deterministic);
  CHECK(one.nodes[0].coords(0) == 5.0);
  CHECK(one.weights[0] == 1.0);

  CHECK_THROWS_AS(neighborhood_quadrature(identity<double>(GroupKind::SO2), kPi, 4,
                                          QuadratureMode::Deterministic),
                  PreconditionError);
  CHECK_THROWS_AS(neighborhood_quadrature(c, 0.0, 4, QuadratureMode::Deterministic), PreconditionError);
  CHECK_THROWS_AS(neighborhood_quadrature(identity<double>(GroupKind::T2), 1.0, 5,
                                          QuadratureMode::Deterministic),
                  PreconditionError);

  SUBCASE("weights positive and sum to the Haar volume") {
    Rng rng(3);
    for (GroupKind g : {GroupKind::T1, GroupKind::T2, GroupKind::SO2}) {
      for (auto mode : {QuadratureMode::Deterministic, QuadratureMode::MonteCarlo}) {
        const G center = random_element(g, rng);
        const double r = 0.7;
        auto set = neighborhood_quadrature(center, r, 16, mode, &rng);
        double total = 0.0;
        for (double w : set.weights) {
          CHECK(w > 0.0);
          total += w;
        }
        CHECK(std::abs(total - set.volume) < 1e-12);
        CHECK(set.volume == doctest::Approx(std::pow(2 * r, static_cast<double>(algebra_dim(g)))));
        for (const auto& v : set.nodes) {
          CHECK(log(compose(inverse(center), v)).coeffs.lpNorm<Eigen::Infinity>() <= r + 1e-12);
        }
      }
    }
  }

  SUBCASE("Monte Carlo node mean within 3 sigma of the center") {
    Rng rng(19);
    const double r = 1.5, center = 2.0;
    const int k = 10000;
    auto set = neighborhood_quadrature(exp(alg(GroupKind::T1, {center})), r, k,
                                       QuadratureMode::MonteCarlo, &rng);
    double mean = 0.0;
    for (const auto& v : set.nodes) mean += v.coords(0);
    mean /= k;
    const double sigma = r / std::sqrt(3.0 * k);
    CHECK(std::abs(mean - center) < 3 * sigma);
  }
}
