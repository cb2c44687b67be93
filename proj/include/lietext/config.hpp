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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lietext/models.hpp"

namespace lietext {

enum class OptimizerKind { Adadelta, Sgd };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adadelta;
  double lr = 1.0;
  double rho = 0.95;      // adadelta
  double epsilon = 1e-6;  // adadelta
  double momentum = 0.9;  // sgd
  double weight_decay = 0.0;
  Index batch_size = 50;
  // SGD only: lr is constant for the first ceil(fraction * max_epochs)
  // epochs, then multiplied by lr_drop_factor.
  double lr_drop_fraction = 0.45;
  double lr_drop_factor = 0.1;
};

// Adadelta, batch 50 for linear / scnn / sclie. SGD with momentum 0.9,
// weight decay 1e-4 and lr 0.1 for dpcnn (batch 100) and dpclie (batch 64).
OptimizerConfig default_optimizer(Architecture a);

enum class SplitPolicy { Auto, None, Standard, Cv10 };

struct DataConfig {
  // "fixture" (shipped 64-sentence set), a manifest name (cr, mpqa, trec,
  // sstb, mr, subj) resolved under the data directory, or "files".
  std::string name = "fixture";
  std::string format = "tsv";  // for name == "files"
  std::string train;           // paths for name == "files"
  std::string dev;
  std::string test;
  SplitPolicy split = SplitPolicy::Auto;
  int fold = 0;  // cv10 fold to run; -1 runs all ten
  double dev_fraction = 0.1;
  std::string embeddings;  // word2vec binary; empty for random init
};

enum class Precision { F32, F64 };

struct RunConfig {
  ModelConfig model;
  DataConfig data;
  OptimizerConfig optimizer;
  Index max_epochs = 25;
  Index patience = 10;
  std::uint64_t seed = 1;
  // Stop as soon as training accuracy reaches this value.
  std::optional<double> stop_at_train_accuracy;
  Index eval_batch_size = 256;
  Precision precision = Precision::F32;
  // Wall time goes to the report's "metadata" member only when set.
  bool record_timing = true;
};

nlohmann::ordered_json to_json(const RunConfig& config);

// Defaults are filled per architecture before the file's optimizer block
// applies. Unknown keys and bad values raise ConfigError with a JSON pointer.
RunConfig run_config_from_json(const nlohmann::json& j);

// "a.b.c=value": value parses as JSON when it can, otherwise as a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

// An empty path starts from an empty object, so every field takes its default.
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace lietext
