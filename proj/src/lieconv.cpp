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

#include "lietext/lieconv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "lietext/errors.hpp"

namespace lietext {
namespace {

// sum over the plan's terms of coef * x[pos] . K[row], plus bias, per window.
// Accumulation runs over terms, then channels, in order; with unit
// coefficients this is the same sequence of operations as conv1d_valid.
template <typename Scalar, typename TermT>
Tensor<Scalar> lie_contract(const Tensor<Scalar>& kernels, const Tensor<Scalar>& features,
                            const Tensor<Scalar>& bias,
                            const std::vector<std::vector<TermT>>& terms) {
  const Index d = features.cols();
  const Index s = bias.cols();
  if (kernels.cols() != d * s) {
    std::ostringstream os;
    os << "lie conv: kernel rows hold " << kernels.cols() << " values, need " << d << "x" << s;
    throw DimensionError(os.str());
  }
  const auto& x = features.value();
  const auto& k = kernels.value();
  const Index windows = static_cast<Index>(terms.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(windows, s);
  for (Index w = 0; w < windows; ++w) {
    for (const auto& term : terms[static_cast<std::size_t>(w)]) {
      for (Index c = 0; c < d; ++c) {
        const Scalar v = term.coef * x(term.position, c);
        out.row(w) += v * k.row(term.kernel_row).segment(c * s, s);
      }
    }
    out.row(w) += bias.value().row(0);
  }

  auto kn = kernels.node(), xn = features.node(), bn = bias.node();
  // Regroup terms by kernel row so the backward pass runs as dense products.
  struct Use {
    Index window;
    Index position;
    Scalar coef;
  };
  std::vector<std::vector<Use>> by_row(static_cast<std::size_t>(k.rows()));
  for (Index w = 0; w < windows; ++w) {
    for (const auto& term : terms[static_cast<std::size_t>(w)]) {
      by_row[static_cast<std::size_t>(term.kernel_row)].push_back({w, term.position, term.coef});
    }
  }
  Shape shape{windows, s};
  return make_op<Scalar>(
      "lie_conv", std::move(out), std::move(shape), {kernels, features, bias},
      [kn, xn, bn, by_row = std::move(by_row), d, s](const Matrix<Scalar>& g) {
        for (std::size_t m = 0; m < by_row.size(); ++m) {
          const auto& uses = by_row[m];
          if (uses.empty()) continue;
          const Index u = static_cast<Index>(uses.size());
          Matrix<Scalar> xs(u, d), gs(u, s);
          for (Index r = 0; r < u; ++r) {
            const auto& use = uses[static_cast<std::size_t>(r)];
            xs.row(r) = use.coef * xn->value.row(use.position);
            gs.row(r) = g.row(use.window);
          }
          const Index row = static_cast<Index>(m);
          if (kn->requires_grad) {
            auto& buf = kn->grad_buffer();
            Eigen::Map<Matrix<Scalar>> dk(buf.row(row).data(), d, s);
            dk.noalias() += xs.transpose() * gs;
          }
          if (xn->requires_grad) {
            Eigen::Map<const Matrix<Scalar>> km(kn->value.row(row).data(), d, s);
            Matrix<Scalar> dxs = gs * km.transpose();
            auto& dx = xn->grad_buffer();
            for (Index r = 0; r < u; ++r) {
              const auto& use = uses[static_cast<std::size_t>(r)];
              dx.row(use.position) += use.coef * dxs.row(r);
            }
          }
        }
        if (bn->requires_grad) bn->grad_buffer() += g.colwise().sum();
      });
}

Index wrap(Index i, Index n) { return ((i % n) + n) % n; }

}  // namespace

template <typename Scalar>
Index KernelGenerator<Scalar>::count_parameters() const {
  Index n = 0;
  for (const auto& [name, t] : named_parameters()) n += t.size();
  return n;
}

template <typename Scalar>
KernelMLP<Scalar>::KernelMLP(Index algebra_dim, Index hidden, Index hidden_layers, Index in_channels,
                             Index out_channels, Rng& rng)
    : algebra_dim_(algebra_dim), in_channels_(in_channels), out_channels_(out_channels) {
  if (algebra_dim < 1 || in_channels < 1 || out_channels < 1 || hidden_layers < 0 ||
      (hidden_layers > 0 && hidden < 1)) {
    throw PreconditionError("KernelMLP: dimensions must be positive");
  }
  std::vector<Index> sizes{algebra_dim};
  for (Index i = 0; i < hidden_layers; ++i) sizes.push_back(hidden);
  sizes.push_back(in_channels * out_channels);
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const Index fan_in = sizes[i], fan_out = sizes[i + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix<Scalar> w(fan_in, fan_out);
    for (Index j = 0; j < w.size(); ++j) w.data()[j] = static_cast<Scalar>(rng.uniform(-limit, limit));
    layers_.push_back({Tensor<Scalar>::parameter(std::move(w)),
                       Tensor<Scalar>::parameter(Matrix<Scalar>::Zero(1, fan_out), {fan_out})});
  }
}

template <typename Scalar>
Tensor<Scalar> KernelMLP<Scalar>::evaluate(const Matrix<Scalar>& coords) const {
  if (coords.cols() != algebra_dim_) throw DimensionError("KernelMLP: wrong algebra dimension");
  Tensor<Scalar> h = Tensor<Scalar>::constant(coords);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    h = add_bias(matmul(h, layers_[i].weight), layers_[i].bias);
    if (i + 1 < layers_.size()) h = relu(h);
  }
  return h;
}

template <typename Scalar>
std::vector<std::pair<std::string, Tensor<Scalar>>> KernelMLP<Scalar>::named_parameters() const {
  std::vector<std::pair<std::string, Tensor<Scalar>>> out;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    out.emplace_back("mlp." + std::to_string(i) + ".weight", layers_[i].weight);
    out.emplace_back("mlp." + std::to_string(i) + ".bias", layers_[i].bias);
  }
  return out;
}

template <typename Scalar>
OffsetLookupKernel<Scalar>::OffsetLookupKernel(Tensor<Scalar> table, Index in_channels,
                                               Index out_channels, double position_scale)
    : table_(std::move(table)),
      in_channels_(in_channels),
      out_channels_(out_channels),
      position_scale_(position_scale) {
  if (table_.cols() != in_channels * out_channels) {
    throw DimensionError("OffsetLookupKernel: table rows must hold in x out values");
  }
}

template <typename Scalar>
Tensor<Scalar> OffsetLookupKernel<Scalar>::evaluate(const Matrix<Scalar>& coords) const {
  std::vector<std::int32_t> idx;
  idx.reserve(static_cast<std::size_t>(coords.rows()));
  for (Index m = 0; m < coords.rows(); ++m) {
    const double offset = static_cast<double>(coords(m, 0)) / position_scale_;
    const double k = std::round(offset);
    if (std::abs(offset - k) > 1e-9 || k < 0 || k >= static_cast<double>(table_.rows())) {
      std::ostringstream os;
      os << "OffsetLookupKernel: no table entry for offset " << offset;
      throw PreconditionError(os.str());
    }
    idx.push_back(static_cast<std::int32_t>(k));
  }
  return gather_rows(table_, idx);
}

template <typename Scalar>
std::vector<std::pair<std::string, Tensor<Scalar>>> OffsetLookupKernel<Scalar>::named_parameters() const {
  return {{"table", table_}};
}

template <typename Scalar>
Tensor<Scalar> kernel_eval(const KernelGenerator<Scalar>& kernel, const GroupElement<Scalar>& g_rel) {
  const Vector<Scalar> a = log(g_rel).coeffs;
  Matrix<Scalar> coords = a.transpose();
  return reshape(kernel.evaluate(coords), {kernel.in_channels(), kernel.out_channels()});
}

template <typename Scalar>
LieConvLayer<Scalar>::LieConvLayer(Index in_channels, LieConvOptions options, Rng& rng)
    : in_channels_(in_channels), options_(std::move(options)) {
  if (in_channels_ < 1 || options_.filters < 1) {
    throw PreconditionError("LieConvLayer: channels and filters must be >= 1");
  }
  if (options_.widths.empty()) throw PreconditionError("LieConvLayer: no filter widths");
  if (options_.samples < 0) throw PreconditionError("LieConvLayer: samples must be >= 0");
  if (!(options_.position_scale > 0.0)) throw PreconditionError("LieConvLayer: position scale must be > 0");
  for (Index l : options_.widths) {
    if (l < 1) throw PreconditionError("LieConvLayer: widths must be >= 1");
  }
  const Index widest = *std::max_element(options_.widths.begin(), options_.widths.end());
  if (options_.group == GroupKind::SO2 && options_.argument == KernelArgument::Relative &&
      static_cast<double>(widest - 1) * options_.position_scale >= std::numbers::pi) {
    throw PreconditionError(
        "LieConvLayer: SO(2) window span reaches pi; relative elements leave the principal log domain");
  }
  for (std::size_t i = 0; i < options_.widths.size(); ++i) {
    kernels_.push_back(std::make_unique<KernelMLP<Scalar>>(algebra_dim(options_.group),
                                                           options_.kernel_hidden, options_.kernel_layers,
                                                           in_channels_, options_.filters, rng));
    biases_.push_back(Tensor<Scalar>::parameter(Matrix<Scalar>::Zero(1, options_.filters), {options_.filters}));
  }
}

template <typename Scalar>
Index LieConvLayer<Scalar>::output_dim() const {
  return static_cast<Index>(options_.widths.size()) * options_.filters;
}

template <typename Scalar>
void LieConvLayer<Scalar>::set_kernel(std::size_t width_index, std::unique_ptr<KernelGenerator<Scalar>> kernel) {
  if (kernel->in_channels() != in_channels_ || kernel->out_channels() != options_.filters) {
    throw DimensionError("LieConvLayer::set_kernel: kernel channel counts do not match the layer");
  }
  kernels_.at(width_index) = std::move(kernel);
}

template <typename Scalar>
std::vector<std::pair<std::string, Tensor<Scalar>>> LieConvLayer<Scalar>::named_parameters(
    const std::string& prefix) const {
  std::vector<std::pair<std::string, Tensor<Scalar>>> out;
  for (std::size_t i = 0; i < kernels_.size(); ++i) {
    const std::string p = prefix + "width" + std::to_string(i) + ".";
    for (auto& [name, t] : kernels_[i]->named_parameters()) out.emplace_back(p + name, t);
    out.emplace_back(p + "bias", biases_[i]);
  }
  return out;
}

template <typename Scalar>
Index LieConvLayer<Scalar>::count_parameters() const {
  Index n = 0;
  for (const auto& [name, t] : named_parameters("")) n += t.size();
  return n;
}

template <typename Scalar>
LiftedFeatures<Scalar> LieConvLayer<Scalar>::lift(const Tensor<Scalar>& features) const {
  if (features.rank() != 2 || features.cols() != in_channels_) {
    throw DimensionError("LieConvLayer::lift: features must be [n x " + std::to_string(in_channels_) + "]");
  }
  std::vector<Scalar> positions(static_cast<std::size_t>(features.rows()));
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = static_cast<Scalar>(i);
  return lietext::lift(positions, features, options_.group, 1, static_cast<Scalar>(options_.position_scale));
}

template <typename Scalar>
Index LieConvLayer<Scalar>::window_count(Index n, Index width) const {
  return options_.boundary == Boundary::Circular ? n : n - width + 1;
}

template <typename Scalar>
typename LieConvLayer<Scalar>::Plan LieConvLayer<Scalar>::build_plan(Index n, Index width, Index first_window,
                                                                     Index windows, Rng* rng) const {
  // Quadrature nodes as offsets from the window anchor, in token units,
  // taken along the orbit of token positions.
  std::vector<std::pair<double, double>> nodes;
  if (options_.samples == 0 || width == 1) {
    for (Index j = 0; j < width; ++j) nodes.emplace_back(static_cast<double>(j), 1.0);
  } else {
    const double half = static_cast<double>(width - 1) / 2.0;
    auto q = neighborhood_quadrature(lift_position<double>(GroupKind::T1, half), half, options_.samples,
                                     options_.quadrature, rng);
    // Rescale so the weights total the window length, as the lattice's do.
    for (std::size_t k = 0; k < q.nodes.size(); ++k) {
      nodes.emplace_back(q.nodes[k].coords(0), q.weights[k] * static_cast<double>(width) / q.volume);
    }
  }

  const bool circular = options_.boundary == Boundary::Circular;
  const Scalar scale = static_cast<Scalar>(options_.position_scale);
  Plan plan;
  std::map<std::vector<Scalar>, Index> rows;
  std::vector<Vector<Scalar>> coords;
  plan.terms.resize(static_cast<std::size_t>(windows));
  for (Index w = first_window; w < first_window + windows; ++w) {
    const auto anchor_inv = inverse(lift_position<Scalar>(options_.group, static_cast<Scalar>(w) * scale));
    auto& terms = plan.terms[static_cast<std::size_t>(w - first_window)];
    for (const auto& [offset, weight] : nodes) {
      const double p = static_cast<double>(w) + offset;
      const double lo_d = std::floor(p);
      double frac = p - lo_d;
      Index lo = static_cast<Index>(lo_d);
      Index hi = lo + 1;
      if (circular) {
        lo = wrap(lo, n);
        hi = wrap(hi, n);
      } else if (hi >= n) {
        frac = 0.0;
      }
      GroupElement<Scalar> arg;
      if (options_.argument == KernelArgument::Relative) {
        arg = compose(anchor_inv, lift_position<Scalar>(options_.group, static_cast<Scalar>(p) * scale));
      } else {
        const double wrapped = circular ? static_cast<double>(lo) + frac : p;
        arg = lift_position<Scalar>(options_.group, static_cast<Scalar>(wrapped) * scale);
      }
      Vector<Scalar> a = lietext::log(arg).coeffs;
      std::vector<Scalar> key(a.data(), a.data() + a.size());
      auto [it, inserted] = rows.emplace(std::move(key), static_cast<Index>(coords.size()));
      if (inserted) coords.push_back(a);
      const Scalar q = static_cast<Scalar>(weight);
      terms.push_back({it->second, lo, static_cast<Scalar>(q * static_cast<Scalar>(1.0 - frac))});
      if (frac > 0.0) terms.push_back({it->second, hi, static_cast<Scalar>(q * static_cast<Scalar>(frac))});
    }
  }
  plan.coords.resize(static_cast<Index>(coords.size()), algebra_dim(options_.group));
  for (std::size_t m = 0; m < coords.size(); ++m) plan.coords.row(static_cast<Index>(m)) = coords[m].transpose();
  return plan;
}

template <typename Scalar>
Tensor<Scalar> LieConvLayer<Scalar>::apply(const Plan& plan, const Tensor<Scalar>& kernels,
                                           const Tensor<Scalar>& features, std::size_t width_index) const {
  Tensor<Scalar> out = lie_contract(kernels, features, biases_[width_index], plan.terms);
  return options_.activation == Activation::Relu ? relu(out) : out;
}

template <typename Scalar>
Tensor<Scalar> LieConvLayer<Scalar>::window(const LiftedFeatures<Scalar>& lifted, Index start,
                                            std::size_t width_index, Rng* rng) const {
  const Index n = lifted.features.rows();
  const Index l = options_.widths.at(width_index);
  const bool ok = options_.boundary == Boundary::Circular ? (start >= 0 && start < n)
                                                          : (start >= 0 && start + l <= n);
  if (!ok) {
    std::ostringstream os;
    os << "lie conv window [" << start << ", " << start + l << ") out of range for length " << n;
    throw PreconditionError(os.str());
  }
  Plan plan = build_plan(n, l, start, 1, rng);
  Tensor<Scalar> kernels = kernels_[width_index]->evaluate(plan.coords);
  return reshape(apply(plan, kernels, lifted.features, width_index), {options_.filters});
}

template <typename Scalar>
std::vector<Tensor<Scalar>> LieConvLayer<Scalar>::sequence(const LiftedFeatures<Scalar>& lifted, Rng* rng) const {
  return sequence_batch({lifted.features}, rng).front();
}

template <typename Scalar>
std::vector<std::vector<Tensor<Scalar>>> LieConvLayer<Scalar>::sequence_batch(
    const std::vector<Tensor<Scalar>>& features, Rng* rng) const {
  std::vector<std::vector<Tensor<Scalar>>> out(features.size());
  std::map<Index, std::vector<std::size_t>> by_length;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    if (f.rank() != 2 || f.cols() != in_channels_) {
      throw DimensionError("lie conv: features must be [n x " + std::to_string(in_channels_) + "], got " +
                           shape_string(f.shape()));
    }
    if (f.rows() == 0) throw PreconditionError("lie conv: empty sequence");
    by_length[f.rows()].push_back(i);
    out[i].resize(options_.widths.size());
  }
  for (const auto& [n, members] : by_length) {
    for (std::size_t wi = 0; wi < options_.widths.size(); ++wi) {
      const Index l = options_.widths[wi];
      if (options_.boundary == Boundary::Valid && n < l) {
        std::ostringstream os;
        os << "lie conv: sequence length " << n << " shorter than filter width " << l;
        throw PreconditionError(os.str());
      }
      Plan plan = build_plan(n, l, 0, window_count(n, l), rng);
      Tensor<Scalar> kernels = kernels_[wi]->evaluate(plan.coords);
      for (std::size_t i : members) out[i][wi] = apply(plan, kernels, features[i], wi);
    }
  }
  return out;
}

template <typename Scalar>
Tensor<Scalar> pool_and_concat(const std::vector<Tensor<Scalar>>& maps) {
  if (maps.empty()) throw PreconditionError("pool_and_concat: no feature maps");
  std::vector<Tensor<Scalar>> pooled;
  pooled.reserve(maps.size());
  for (const auto& m : maps) {
    if (m.size() == 0) throw PreconditionError("pool_and_concat: empty feature map");
    pooled.push_back(max_over_time(m));
  }
  return concat_cols<Scalar>(pooled);
}

#define LIETEXT_INSTANTIATE_LIECONV(S)                                                \
  template class KernelGenerator<S>;                                                  \
  template class KernelMLP<S>;                                                        \
  template class OffsetLookupKernel<S>;                                               \
  template class LieConvLayer<S>;                                                     \
  template Tensor<S> kernel_eval(const KernelGenerator<S>&, const GroupElement<S>&);  \
  template Tensor<S> pool_and_concat(const std::vector<Tensor<S>>&);

LIETEXT_INSTANTIATE_LIECONV(float)
LIETEXT_INSTANTIATE_LIECONV(double)

}  // namespace lietext
