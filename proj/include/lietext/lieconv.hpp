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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lietext/liegroup.hpp"
#include "lietext/ops.hpp"
#include "lietext/tensor.hpp"

namespace lietext {

enum class Boundary { Valid, Circular };
// Kernel argument: window-relative element g_i^-1 g_{i+j}, or g_{i+j} itself.
enum class KernelArgument { Relative, Absolute };
enum class Activation { Relu, Identity };

struct LieConvOptions {
  GroupKind group = GroupKind::T1;
  std::vector<Index> widths{3, 4, 5};
  Index filters = 100;        // per width
  Index kernel_hidden = 8;    // units per hidden layer of the kernel MLP
  Index kernel_layers = 2;    // hidden layers
  double position_scale = 1.0;
  Boundary boundary = Boundary::Valid;
  QuadratureMode quadrature = QuadratureMode::Deterministic;
  // 0 selects the window lattice: nodes at the integer offsets 0..l-1 with
  // unit weights. K > 0 integrates over the window's neighborhood with K
  // nodes (lattice or Monte Carlo) and linear feature interpolation.
  Index samples = 0;
  KernelArgument argument = KernelArgument::Relative;
  Activation activation = Activation::Relu;
};

// Produces filter slices from Lie algebra coordinates.
template <typename Scalar>
class KernelGenerator {
 public:
  virtual ~KernelGenerator() = default;
  // coords [M x algebra_dim] -> [M x (in_channels * out_channels)], row m
  // holding the in x out slice for coordinate m in row-major order.
  virtual Tensor<Scalar> evaluate(const Matrix<Scalar>& coords) const = 0;
  virtual std::vector<std::pair<std::string, Tensor<Scalar>>> named_parameters() const = 0;
  virtual Index in_channels() const = 0;
  virtual Index out_channels() const = 0;
  Index count_parameters() const;
};

// k_theta = (k o exp)_theta evaluated on log h: an MLP from algebra
// coordinates to a flattened d x s filter, ReLU between layers.
template <typename Scalar>
class KernelMLP final : public KernelGenerator<Scalar> {
 public:
  // Glorot-uniform weights, zero biases.
  KernelMLP(Index algebra_dim, Index hidden, Index hidden_layers, Index in_channels,
            Index out_channels, Rng& rng);

  Tensor<Scalar> evaluate(const Matrix<Scalar>& coords) const override;
  std::vector<std::pair<std::string, Tensor<Scalar>>> named_parameters() const override;
  Index in_channels() const override { return in_channels_; }
  Index out_channels() const override { return out_channels_; }

  struct Dense {
    Tensor<Scalar> weight;  // [fan_in x fan_out]
    Tensor<Scalar> bias;    // [fan_out]
  };
  std::vector<Dense>& layers() { return layers_; }
  const std::vector<Dense>& layers() const { return layers_; }

 private:
  std::vector<Dense> layers_;
  Index algebra_dim_;
  Index in_channels_;
  Index out_channels_;
};

// Table indexed by integer window offset (first algebra coordinate divided
// by the position scale). With T(1) and the window lattice this turns the
// Lie layer into an ordinary convolution with kernel = table.
template <typename Scalar>
class OffsetLookupKernel final : public KernelGenerator<Scalar> {
 public:
  // table: [offsets x (in * out)], or shape [l x in x out].
  OffsetLookupKernel(Tensor<Scalar> table, Index in_channels, Index out_channels,
                     double position_scale = 1.0);

  Tensor<Scalar> evaluate(const Matrix<Scalar>& coords) const override;
  std::vector<std::pair<std::string, Tensor<Scalar>>> named_parameters() const override;
  Index in_channels() const override { return in_channels_; }
  Index out_channels() const override { return out_channels_; }

 private:
  Tensor<Scalar> table_;
  Index in_channels_;
  Index out_channels_;
  double position_scale_;
};

// k_theta(g_rel) reshaped to an [in x out] filter slice.
template <typename Scalar>
Tensor<Scalar> kernel_eval(const KernelGenerator<Scalar>& kernel, const GroupElement<Scalar>& g_rel);

template <typename Scalar>
using LiftedFeatures = LiftedSequence<Scalar, Tensor<Scalar>>;

template <typename Scalar>
class LieConvLayer {
 public:
  LieConvLayer(Index in_channels, LieConvOptions options, Rng& rng);

  const LieConvOptions& options() const { return options_; }
  Index in_channels() const { return in_channels_; }
  // Length of the pooled representation: widths x filters.
  Index output_dim() const;

  KernelGenerator<Scalar>& kernel(std::size_t width_index) { return *kernels_.at(width_index); }
  void set_kernel(std::size_t width_index, std::unique_ptr<KernelGenerator<Scalar>> kernel);
  Tensor<Scalar>& bias(std::size_t width_index) { return biases_.at(width_index); }

  std::vector<std::pair<std::string, Tensor<Scalar>>> named_parameters(const std::string& prefix) const;
  Index count_parameters() const;

  // Token i lifted to the element carrying the origin to i * position_scale.
  LiftedFeatures<Scalar> lift(const Tensor<Scalar>& features) const;

  // c_i = f(sum_j k_theta(g_i^-1 g_{i+j}) . x_{i+j} + b) for one window.
  // `rng` is needed only in Monte Carlo mode.
  Tensor<Scalar> window(const LiftedFeatures<Scalar>& lifted, Index start, std::size_t width_index,
                        Rng* rng = nullptr) const;

  // Feature map per width: [(n-l+1) x s] (valid) or [n x s] (circular).
  std::vector<Tensor<Scalar>> sequence(const LiftedFeatures<Scalar>& lifted, Rng* rng = nullptr) const;

  // sequence() for several sentences. Sentences of equal length share one
  // kernel evaluation per width.
  std::vector<std::vector<Tensor<Scalar>>> sequence_batch(const std::vector<Tensor<Scalar>>& features,
                                                          Rng* rng = nullptr) const;

 private:
  struct Term {
    Index kernel_row;
    Index position;
    Scalar coef;
  };
  struct Plan {
    Matrix<Scalar> coords;                 // unique kernel arguments
    std::vector<std::vector<Term>> terms;  // per window
  };

  Plan build_plan(Index n, Index width, Index first_window, Index windows, Rng* rng) const;
  Tensor<Scalar> apply(const Plan& plan, const Tensor<Scalar>& kernels, const Tensor<Scalar>& features,
                       std::size_t width_index) const;
  Index window_count(Index n, Index width) const;

  Index in_channels_;
  LieConvOptions options_;
  std::vector<std::unique_ptr<KernelGenerator<Scalar>>> kernels_;
  std::vector<Tensor<Scalar>> biases_;
};

// Max over time per filter, concatenated across widths in order.
template <typename Scalar>
Tensor<Scalar> pool_and_concat(const std::vector<Tensor<Scalar>>& maps);

// Exact trainable-scalar count.
template <typename Scalar>
Index count_parameters(const LieConvLayer<Scalar>& layer) {
  return layer.count_parameters();
}

}  // namespace lietext
