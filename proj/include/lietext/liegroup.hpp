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

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lietext/errors.hpp"
#include "lietext/rng.hpp"

namespace lietext {

// Supported groups. T(d) is the translation group of R^d; SO(2) the planar
// rotations. All three have surjective exponential maps and are
// unimodular, so Haar measure is Lebesgue measure in algebra coordinates
// (within the injectivity radius for SO(2)).
enum class GroupKind { T1, T2, SO2 };

inline std::string_view group_name(GroupKind g) {
  switch (g) {
    case GroupKind::T1: return "t1";
    case GroupKind::T2: return "t2";
    case GroupKind::SO2: return "so2";
  }
  return "?";
}

inline GroupKind parse_group(std::string_view name) {
  if (name == "t1") return GroupKind::T1;
  if (name == "t2") return GroupKind::T2;
  if (name == "so2") return GroupKind::SO2;
  throw PreconditionError("unknown group '" + std::string(name) + "' (expected t1, t2 or so2)");
}

inline Eigen::Index algebra_dim(GroupKind g) { return g == GroupKind::T2 ? 2 : 1; }

// Canonical representation: translation vector for T(d), (cos, sin) for SO(2).
inline Eigen::Index representation_dim(GroupKind g) { return g == GroupKind::T1 ? 1 : 2; }

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct GroupElement {
  GroupKind group = GroupKind::T1;
  Vector<Scalar> coords;
};

template <typename Scalar>
struct AlgebraVector {
  GroupKind group = GroupKind::T1;
  Vector<Scalar> coeffs;
};

namespace detail {

inline void require_same_group(GroupKind a, GroupKind b) {
  if (a != b) {
    throw PreconditionError("mixed groups: " + std::string(group_name(a)) + " and " +
                            std::string(group_name(b)));
  }
}

template <typename Scalar>
void require_representation(const GroupElement<Scalar>& g) {
  if (g.coords.size() != representation_dim(g.group)) {
    throw DimensionError("malformed " + std::string(group_name(g.group)) + " element");
  }
}

// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar principal_angle(Scalar a) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Scalar r = std::remainder(a, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi_v<Scalar>) r += two_pi;
  return r;
}

}  // namespace detail

template <typename Scalar>
GroupElement<Scalar> identity(GroupKind g) {
  GroupElement<Scalar> e{g, Vector<Scalar>::Zero(representation_dim(g))};
  if (g == GroupKind::SO2) e.coords(0) = Scalar(1);
  return e;
}

template <typename Scalar>
GroupElement<Scalar> exp(const AlgebraVector<Scalar>& v) {
  if (v.coeffs.size() != algebra_dim(v.group)) {
    throw DimensionError("algebra vector of wrong dimension for " + std::string(group_name(v.group)));
  }
  if (!v.coeffs.allFinite()) throw PreconditionError("exp: non-finite algebra coefficients");
  switch (v.group) {
    case GroupKind::T1:
    case GroupKind::T2:
      return {v.group, v.coeffs};
    case GroupKind::SO2: {
      Vector<Scalar> c(2);
      c << std::cos(v.coeffs(0)), std::sin(v.coeffs(0));
      return {v.group, c};
    }
  }
  throw PreconditionError("exp: unknown group");
}

// T(d): the translation vector. SO(2): principal angle in (-pi, pi].
template <typename Scalar>
AlgebraVector<Scalar> log(const GroupElement<Scalar>& g) {
  detail::require_representation(g);
  switch (g.group) {
    case GroupKind::T1:
    case GroupKind::T2:
      return {g.group, g.coords};
    case GroupKind::SO2: {
      Vector<Scalar> a(1);
      a(0) = std::atan2(g.coords(1), g.coords(0));
      if (a(0) <= -std::numbers::pi_v<Scalar>) a(0) = std::numbers::pi_v<Scalar>;
      return {g.group, a};
    }
  }
  throw PreconditionError("log: unknown group");
}

template <typename Scalar>
GroupElement<Scalar> compose(const GroupElement<Scalar>& a, const GroupElement<Scalar>& b) {
  detail::require_same_group(a.group, b.group);
  detail::require_representation(a);
  detail::require_representation(b);
  if (a.group != GroupKind::SO2) return {a.group, a.coords + b.coords};
  // Complex multiplication, renormalized onto the unit circle.
  Vector<Scalar> c(2);
  c << a.coords(0) * b.coords(0) - a.coords(1) * b.coords(1),
      a.coords(0) * b.coords(1) + a.coords(1) * b.coords(0);
  c /= c.norm();
  return {a.group, c};
}

template <typename Scalar>
GroupElement<Scalar> inverse(const GroupElement<Scalar>& g) {
  detail::require_representation(g);
  if (g.group != GroupKind::SO2) return {g.group, -g.coords};
  Vector<Scalar> c(2);
  c << g.coords(0), -g.coords(1);
  return {g.group, c};
}

// Coordinate of g applied to the origin of the homogeneous space the group
// acts on: the translated point for T(d), the angle on the circle for SO(2).
template <typename Scalar>
Vector<Scalar> act_on_origin(const GroupElement<Scalar>& g) {
  if (g.group == GroupKind::SO2) return log(g).coeffs;
  return g.coords;
}

// Group element carrying the origin to token coordinate `position` (scaled
// into algebra units). `stabilizer` parametrizes the fibre of the lift where
// it is not unique (the second axis of T(2) for 1-D token coordinates).
template <typename Scalar>
GroupElement<Scalar> lift_position(GroupKind group, Scalar position, Scalar stabilizer = Scalar(0)) {
  AlgebraVector<Scalar> v{group, Vector<Scalar>(algebra_dim(group))};
  v.coeffs(0) = position;
  if (group == GroupKind::T2) v.coeffs(1) = stabilizer;
  return exp(v);
}

// {(x_i, f_i)} -> {(h_ik, f_i)}: K group elements per token, each mapping the
// origin (the identity element) to the token's coordinate.
template <typename Scalar, typename Features>
struct LiftedSequence {
  GroupKind group = GroupKind::T1;
  Scalar position_scale = Scalar(1);
  Eigen::Index samples_per_token = 1;
  std::vector<GroupElement<Scalar>> elements;  // element i*K + k belongs to token i
  std::vector<Eigen::Index> token;
  Features features;                           // row i is f_i
};

// Token coordinates are position * scale. The lift is unique for T(1) and
// SO(2) (K must be 1); for T(2) the K samples are evenly spaced over the
// stabilizer fibre in [-1/2, 1/2].
template <typename Scalar, typename Features>
LiftedSequence<Scalar, Features> lift(const std::vector<Scalar>& positions, Features features,
                                      GroupKind group, Eigen::Index samples = 1,
                                      Scalar position_scale = Scalar(1)) {
  if (static_cast<Eigen::Index>(positions.size()) != features.rows()) {
    throw DimensionError("lift: positions and features differ in length");
  }
  if (samples < 1) throw PreconditionError("lift: K must be >= 1");
  if (samples > 1 && group != GroupKind::T2) {
    throw PreconditionError("lift: the lift into " + std::string(group_name(group)) +
                            " is unique; K > 1 is not defined");
  }
  LiftedSequence<Scalar, Features> out;
  out.group = group;
  out.position_scale = position_scale;
  out.samples_per_token = samples;
  out.elements.reserve(positions.size() * static_cast<std::size_t>(samples));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (Eigen::Index k = 0; k < samples; ++k) {
      const Scalar fibre =
          samples == 1 ? Scalar(0) : Scalar(-0.5) + static_cast<Scalar>(k) / static_cast<Scalar>(samples - 1);
      out.elements.push_back(lift_position(group, positions[i] * position_scale, fibre));
      out.token.push_back(static_cast<Eigen::Index>(i));
    }
  }
  out.features = std::move(features);
  return out;
}

enum class QuadratureMode { Deterministic, MonteCarlo };

template <typename Scalar>
struct QuadratureSet {
  std::vector<GroupElement<Scalar>> nodes;
  std::vector<Scalar> weights;
  Scalar volume = Scalar(0);  // Haar volume of the neighborhood
};

// Nodes v with ||log(center^-1 v)||_inf <= radius. The neighborhood is the
// max-norm ball in algebra coordinates (an interval for T(1) and SO(2), a
// square for T(2)). Deterministic mode places an evenly spaced lattice with
// endpoints on the boundary (T(2) needs K = m*m); Monte Carlo mode draws
// uniformly. All weights equal volume / K.
template <typename Scalar>
QuadratureSet<Scalar> neighborhood_quadrature(const GroupElement<Scalar>& center, Scalar radius,
                                              Eigen::Index count, QuadratureMode mode,
                                              Rng* rng = nullptr) {
  if (!(radius > Scalar(0))) throw PreconditionError("neighborhood_quadrature: radius must be > 0");
  if (count < 1) throw PreconditionError("neighborhood_quadrature: K must be >= 1");
  if (center.group == GroupKind::SO2 && radius >= std::numbers::pi_v<Scalar>) {
    throw PreconditionError("neighborhood_quadrature: SO(2) radius must be < pi");
  }
  if (mode == QuadratureMode::MonteCarlo && rng == nullptr) {
    throw PreconditionError("neighborhood_quadrature: Monte Carlo mode needs a generator");
  }
  const Eigen::Index dim = algebra_dim(center.group);
  QuadratureSet<Scalar> q;
  q.volume = std::pow(Scalar(2) * radius, static_cast<Scalar>(dim));

  std::vector<Vector<Scalar>> offsets;
  if (mode == QuadratureMode::Deterministic) {
    Eigen::Index per_axis = count;
    if (dim == 2) {
      per_axis = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
      if (per_axis * per_axis != count) {
        std::ostringstream os;
        os << "neighborhood_quadrature: T(2) lattice needs a square node count, got " << count;
        throw PreconditionError(os.str());
      }
    }
    auto axis = [&](Eigen::Index k) {
      if (per_axis == 1) return Scalar(0);
      return radius * (Scalar(-1) + Scalar(2) * static_cast<Scalar>(k) / static_cast<Scalar>(per_axis - 1));
    };
    for (Eigen::Index k = 0; k < count; ++k) {
      Vector<Scalar> o(dim);
      if (dim == 1) {
        o(0) = axis(k);
      } else {
        o(0) = axis(k / per_axis);
        o(1) = axis(k % per_axis);
      }
      offsets.push_back(o);
    }
  } else {
    for (Eigen::Index k = 0; k < count; ++k) {
      Vector<Scalar> o(dim);
      for (Eigen::Index a = 0; a < dim; ++a) {
        o(a) = static_cast<Scalar>(rng->uniform(-static_cast<double>(radius), static_cast<double>(radius)));
      }
      offsets.push_back(o);
    }
  }
  for (const auto& o : offsets) {
    q.nodes.push_back(compose(center, exp(AlgebraVector<Scalar>{center.group, o})));
    q.weights.push_back(q.volume / static_cast<Scalar>(count));
  }
  return q;
}

}  // namespace lietext
