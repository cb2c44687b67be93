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
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lietext/lieconv.hpp"
#include "lietext/ops.hpp"
#include "lietext/rng.hpp"
#include "lietext/tensor.hpp"

namespace lietext {

// Padded token indices, one sentence per row. Index 0 is the pad token.
using TokenMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr std::int32_t kPadIndex = 0;
inline constexpr std::int32_t kUnkIndex = 1;

enum class Architecture { Linear, Scnn, Sclie, Dpcnn, Dpclie };

std::string architecture_name(Architecture a);
// Throws PreconditionError for tags outside {linear, scnn, sclie, dpcnn, dpclie}.
Architecture parse_architecture(const std::string& tag);

struct ModelConfig {
  Architecture architecture = Architecture::Scnn;
  Index embedding_dim = 300;
  std::vector<Index> widths{3, 4, 5};  // scnn / sclie
  Index filters = 100;                 // per width
  Index channels = 250;                // dpcnn / dpclie, before the multiplier
  Index region_width = 3;
  Index blocks = 1;
  double dropout = 0.5;
  double channel_multiplier = 1.0;
  bool static_embeddings = false;  // embedding table excluded from training
  // Linear baseline hidden width; 0 solves for SCNN parameter parity.
  Index linear_hidden = 0;
  // Lie layer settings; widths and filters come from the fields above.
  LieConvOptions lie;

  Index effective_channels() const;
};

nlohmann::ordered_json to_json(const ModelConfig& config);
// Rejects unknown keys and bad values with ConfigError naming the JSON
// pointer below `pointer`.
ModelConfig model_config_from_json(const nlohmann::json& j, const std::string& pointer = "");

// Hidden width for the linear baseline whose non-embedding parameter count
// is closest to SCNN built from `config`.
Index linear_parity_hidden(const ModelConfig& config, Index num_classes);

template <typename Scalar>
class Model {
 public:
  // embeddings: [vocab x embedding_dim]; row kPadIndex is zeroed and frozen.
  Model(ModelConfig config, Index num_classes, Matrix<Scalar> embeddings, Rng& rng);

  const ModelConfig& config() const { return config_; }
  Index num_classes() const { return num_classes_; }
  Index vocab_size() const { return embedding_.rows(); }
  Index representation_dim() const;
  // Shortest sentence the architecture accepts without error.
  Index min_length() const;

  // Logits [batch x classes]. Dropout applies only when training, and then
  // needs `rng`.
  Tensor<Scalar> forward(const TokenMatrix& batch, bool training, Rng* rng = nullptr) const;
  // Pre-classifier vectors [batch x representation_dim], dropout disabled.
  Tensor<Scalar> represent(const TokenMatrix& batch) const;

  // Every tensor once, in a fixed order; "embedding" first.
  std::vector<std::pair<std::string, Tensor<Scalar>>> named_parameters() const;
  std::vector<Tensor<Scalar>> trainable_parameters() const;
  Index count_parameters(bool include_embeddings) const;

 private:
  struct Conv {
    Tensor<Scalar> weight;  // [l x in x out]
    Tensor<Scalar> bias;    // [out]
  };
  struct Dense {
    Tensor<Scalar> weight;  // [in x out]
    Tensor<Scalar> bias;    // [out]
  };

  std::vector<Tensor<Scalar>> embed(const TokenMatrix& batch) const;
  Tensor<Scalar> features(const TokenMatrix& batch) const;
  Tensor<Scalar> sentence_conv(const Tensor<Scalar>& x) const;
  Tensor<Scalar> pyramid(const Tensor<Scalar>& region) const;

  ModelConfig config_;
  Index num_classes_;
  Tensor<Scalar> embedding_;
  Index linear_hidden_ = 0;
  Dense hidden_;                 // linear
  std::vector<Conv> convs_;      // scnn widths; dpcnn region
  std::vector<Conv> block_convs_;  // dpcnn / dpclie, two per block
  std::unique_ptr<LieConvLayer<Scalar>> lie_;
  Dense head_;
};

// Parsed checkpoint file. Values are stored as float32, so float models
// round-trip bit-exactly and double models are rounded once.
struct Checkpoint {
  ModelConfig config;
  Index num_classes = 0;
  std::vector<std::string> vocab;
  struct Record {
    std::string name;
    Shape shape;
    std::vector<float> values;
  };
  std::vector<Record> records;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Writes atomically through a temporary sibling file.
template <typename Scalar>
void save_checkpoint(const std::filesystem::path& path, const Model<Scalar>& model,
                     const std::vector<std::string>& vocab);
Checkpoint read_checkpoint(const std::filesystem::path& path);
// Rebuilds the model and copies every record into it; names and shapes must
// match exactly.
template <typename Scalar>
Model<Scalar> model_from_checkpoint(const Checkpoint& checkpoint);

}  // namespace lietext
