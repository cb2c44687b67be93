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

#include "lietext/verify.hpp"

#include <algorithm>
#include <memory>

#include "lietext/lieconv.hpp"
#include "lietext/ops.hpp"

namespace lietext {

namespace {

template <typename Scalar>
Matrix<Scalar> uniform_matrix(Rng& rng, Index rows, Index cols, double lo, double hi) {
  Matrix<Scalar> m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<Scalar>(rng.uniform(lo, hi));
  return m;
}

}  // namespace

ModelConfig tiny_model_config(Architecture a) {
  ModelConfig c;
  c.architecture = a;
  c.embedding_dim = 8;
  c.widths = {2, 3};
  c.filters = 4;
  c.channels = 4;
  c.lie.kernel_hidden = 3;
  c.dropout = 0.0;
  return c;
}

template <typename Scalar>
GradCheckResult model_grad_check(Architecture a, std::uint64_t seed) {
  Rng rng(seed);
  Model<Scalar> m(tiny_model_config(a), 3, uniform_matrix<Scalar>(rng, 12, 8, -0.5, 0.5), rng);
  // Random values everywhere keep ReLU pre-activations off their kink.
  for (auto& [name, t] : m.named_parameters()) {
    t.mutable_value() = uniform_matrix<Scalar>(rng, t.rows(), t.cols(), -0.5, 0.5);
    if (name == "embedding") t.mutable_value().row(kPadIndex).setZero();
  }
  // No pad tokens: the pad row is frozen and has no analytic gradient.
  TokenMatrix batch(2, 6);
  batch << 2, 5, 7, 3, 11, 10, 4, 4, 9, 1, 6, 8;
  const std::vector<std::int32_t> y{2, 0};
  std::function<Tensor<Scalar>()> f = [&] { return softmax_cross_entropy(m.forward(batch, false), y); };
  return grad_check<Scalar>(f, m.trainable_parameters());
}

ParityReport lookup_parity(Index instances, std::uint64_t seed) {
  using T = Tensor<double>;
  ParityReport r;
  r.instances = instances;
  Rng master(seed);
  for (Index i = 0; i < instances; ++i) {
    Rng rng = master.stream("instance" + std::to_string(i));
    const Index l = 1 + static_cast<Index>(rng.index(5));
    const Index d = 1 + static_cast<Index>(rng.index(6));
    const Index s = 1 + static_cast<Index>(rng.index(5));
    const Index n = l + static_cast<Index>(rng.index(10));
    LieConvOptions o;
    o.widths = {l};
    o.filters = s;
    o.kernel_hidden = 4;
    LieConvLayer<double> layer(d, o, rng);
    T table = T::constant(uniform_matrix<double>(rng, l, d * s, -1, 1), {l, d, s});
    layer.set_kernel(0, std::make_unique<OffsetLookupKernel<double>>(table, d, s));
    Matrix<double> b = uniform_matrix<double>(rng, 1, s, -1, 1);
    layer.bias(0).mutable_value() = b;
    T x = T::constant(uniform_matrix<double>(rng, n, d, -1, 1));
    const auto maps = layer.sequence(layer.lift(x));
    const T oracle = relu(conv1d_valid(x, table, T::constant(b, {s})));
    if (maps[0].shape() != oracle.shape()) {
      r.max_abs_diff = std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = (maps[0].value() - oracle.value()).cwiseAbs().maxCoeff();
    r.max_abs_diff = std::max(r.max_abs_diff, diff);
    r.exact += maps[0].value() == oracle.value();
  }
  return r;
}

double mc_relative_deviation(Index samples, std::uint64_t seed) {
  using T = Tensor<double>;
  LieConvOptions o;
  o.widths = {3, 5};
  o.filters = 4;
  o.kernel_hidden = 4;
  o.activation = Activation::Identity;
  o.samples = samples;
  Rng rng(seed);
  LieConvLayer<double> det(4, o, rng);
  o.quadrature = QuadratureMode::MonteCarlo;
  Rng same(seed);
  LieConvLayer<double> mc(4, o, same);
  const Matrix<double> x = uniform_matrix<double>(rng, 16, 4, -1, 1);
  Rng sampler(seed + 1000);
  const auto a = det.sequence(det.lift(T::constant(x)));
  const auto b = mc.sequence(mc.lift(T::constant(x)), &sampler);
  double dev = 0.0, scale = 0.0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    dev += (a[w].value() - b[w].value()).cwiseAbs().sum();
    scale += a[w].value().cwiseAbs().sum();
  }
  return dev / scale;
}

template GradCheckResult model_grad_check<float>(Architecture, std::uint64_t);
template GradCheckResult model_grad_check<double>(Architecture, std::uint64_t);

}  // namespace lietext
