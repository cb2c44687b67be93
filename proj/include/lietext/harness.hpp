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
#include "lietext/config.hpp"
#include "lietext/corpus.hpp"
#include "lietext/models.hpp"

namespace lietext {

// Dataset root: $LIETEXT_DATA_DIR, else "data" under the working directory.
std::filesystem::path data_dir();
std::filesystem::path fixture_dir();

struct PreparedData {
  Dataset dataset;
  Vocab vocab;
  std::vector<IndexedSentence> indexed;
  std::vector<Fold> folds;  // one entry unless cv10 with every fold
};

// Loads, tokenizes and splits per `config`. The vocabulary covers every
// loaded sentence. Throws IoError when files of a named dataset are missing.
PreparedData prepare_data(const DataConfig& config, std::uint64_t seed,
                          const std::filesystem::path& root = data_dir());

struct EvalResult {
  double accuracy = 0.0;
  std::vector<std::vector<std::int64_t>> confusion;  // [true][predicted]
  std::size_t count = 0;
};

template <typename Scalar>
EvalResult evaluate(const Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                    const std::vector<std::int32_t>& labels, const std::vector<std::size_t>& indices,
                    Index batch_size = 256);

struct EpochRecord {
  Index epoch = 0;  // 1-based
  double lr = 0.0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  std::optional<double> dev_accuracy;
};

struct TrainResult {
  std::vector<EpochRecord> epochs;
  Index best_epoch = 0;
  double best_metric = 0.0;  // dev accuracy, or train accuracy without dev data
  bool stopped_early = false;
};

// Learning rate in effect during `epoch` (1-based).
double scheduled_lr(const OptimizerConfig& opt, Index epoch, Index max_epochs);

// Mini-batch training with a seeded shuffle per epoch. Early stopping counts
// consecutive epochs without improvement of the selection metric and stops
// once the count exceeds `patience`. The best parameters are restored before
// returning. Non-finite losses raise DivergenceError.
template <typename Scalar>
TrainResult train(const RunConfig& config, Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                  const std::vector<std::int32_t>& labels, const Fold& fold, Rng& rng);

nlohmann::ordered_json to_json(const TrainResult& r);
nlohmann::ordered_json to_json(const EvalResult& r);

template <typename Scalar>
struct Experiment {
  nlohmann::ordered_json report;
  std::optional<Model<Scalar>> model;  // last fold's trained model
  Vocab vocab;
};

// Full run: data, embeddings, model, training, test evaluation.
template <typename Scalar>
Experiment<Scalar> run_experiment(const RunConfig& config, const std::filesystem::path& root = data_dir());

struct ProbeReport {
  std::vector<double> similarities;
  std::vector<int> scores;
  std::optional<double> pearson;       // similarity vs negated score
  std::optional<double> spearman;      // similarity vs negated score
  std::optional<double> pearson_raw;   // similarity vs score
  std::optional<double> spearman_raw;  // similarity vs score
  std::string condition;               // why a correlation is missing
  std::size_t pairs = 0;
};

nlohmann::ordered_json to_json(const ProbeReport& r);

// Cosine similarity of paired representations correlated with the scores.
// A positive correlation means more symmetric pairs sit closer together.
template <typename Scalar>
ProbeReport symmetry_probe(const Model<Scalar>& model, const Vocab& vocab, const SentencePairSet& pairs);

// Correlates given similarities with scores; the arithmetic core of the probe.
ProbeReport correlate_similarities(std::vector<double> similarities, std::vector<int> scores);

// CSV "id,label,v_0,...,v_{r-1}" with rows scaled to unit L2 norm and
// values printed as %.9g. All-zero rows stay zero. Written atomically.
template <typename Scalar>
void export_representations(const Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                            const std::vector<std::int32_t>& labels, const std::vector<std::size_t>& indices,
                            const std::filesystem::path& path);

// Non-embedding parameter counts for dpclie at multiplier 1 and dpcnn over
// the multiplier grid, with the closest dpcnn match.
nlohmann::ordered_json parameter_parity(const ModelConfig& base, Index num_classes,
                                        const std::vector<double>& grid = {1.5, 2.0, 2.5});

// parameter_parity plus training both models on the configured data.
nlohmann::ordered_json parameter_control(const RunConfig& config, const std::filesystem::path& root = data_dir());

// Writes text through a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lietext
