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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "lietext/models.hpp"
#include "lietext/rng.hpp"
#include "lietext/tensor.hpp"

namespace lietext {

using Tokens = std::vector<std::string>;

// Bumped whenever a rule changes.
inline constexpr int kTokenizerVersion = 1;

// ASCII-lowercases, separates . , ! ? " ( ) : ; and splits at apostrophes:
// "n't" and the clitics 's 're 'll 've 'd 'm become their own tokens, any
// other apostrophe stands alone. U+2019 is read as an apostrophe.
// Tokenizing the space-joined output reproduces it.
Tokens tokenize(std::string_view text);

struct Reject {
  std::size_t line;  // 1-based
  std::string reason;
};

enum class SplitTag : std::uint8_t { Train, Dev, Test };

struct Dataset {
  std::string name;
  std::vector<Tokens> sentences;
  std::vector<std::int32_t> labels;
  std::vector<SplitTag> split;
  Index num_classes = 0;
  std::vector<Reject> rejects;

  std::size_t size() const { return sentences.size(); }
};

enum class DatasetFormat {
  Tsv,   // "<label>\t<text>", UTF-8
  Trec,  // "<COARSE>:<fine> <text>", coarse classes ABBR DESC ENTY HUM LOC NUM
};

DatasetFormat parse_dataset_format(const std::string& name);

// Malformed lines (no tab, non-integer label, invalid UTF-8, empty after
// tokenization) are recorded in `rejects`. Throws IoError if unreadable,
// FormatError if no line is valid or a label is >= num_classes. With
// num_classes = 0 the class count is one past the largest label. Every
// example is tagged `tag`.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, Index num_classes = 0,
                     SplitTag tag = SplitTag::Train);

// One sentence per line in each file; positives get label 1. Lines that are
// not valid UTF-8 are read as Latin-1.
Dataset load_polarity_pair(const std::filesystem::path& positive, const std::filesystem::path& negative);

// Appends `b` to `a`; class counts must agree or one side must be empty.
Dataset concat(Dataset a, const Dataset& b);

// "<label>\t<tokens joined by single spaces>\n" per example.
void save_tsv(const Dataset& dataset, const std::filesystem::path& path);

class Vocab {
 public:
  static constexpr const char* kPad = "<pad>";
  static constexpr const char* kUnk = "<unk>";

  Vocab();
  // Pad and unk first, then distinct tokens by descending frequency, ties
  // broken by byte order.
  static Vocab build(std::span<const Dataset* const> datasets);
  // Inverse of tokens(); entries 0 and 1 must be the pad and unk names.
  static Vocab from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  // kUnkIndex for tokens not in the vocabulary.
  std::int32_t index(const std::string& token) const;
  bool contains(const std::string& token) const { return map_.count(token) != 0; }
  const std::string& token(std::int32_t i) const { return tokens_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> map_;  // corpus tokens only
};

using IndexedSentence = std::vector<std::int32_t>;
std::vector<IndexedSentence> index_sentences(const Dataset& dataset, const Vocab& vocab);

// Right-pads with kPadIndex to max(longest selected sentence, min_width).
TokenMatrix make_batch(const std::vector<IndexedSentence>& sentences, std::span<const std::size_t> indices,
                       Index min_width);

enum class RowSource : std::uint8_t { Pretrained, Random, Pad };

template <typename Scalar>
struct EmbeddingMatrix {
  Matrix<Scalar> values;  // [vocab x dim]
  std::vector<RowSource> source;
};

inline constexpr double kOovBound = 0.25;

// Every row uniform in (-0.25, 0.25) except the zero pad row.
template <typename Scalar>
EmbeddingMatrix<Scalar> random_embeddings(const Vocab& vocab, Index dim, Rng& rng);

// Reads the word2vec binary layout: "<count> <dim>\n", then per word the
// token bytes up to a space followed by dim little-endian float32 values and
// an optional newline. Vocabulary rows found in the file are copied (exact
// match preferred over a case-folded match); the rest stay random.
// Throws DimensionError if dim differs, FormatError on a malformed header
// or truncated record, IoError if unreadable.
template <typename Scalar>
EmbeddingMatrix<Scalar> load_word2vec_binary(const std::filesystem::path& path, const Vocab& vocab, Index dim,
                                             Rng& rng);

void write_word2vec_binary(const std::filesystem::path& path, const std::vector<std::string>& words,
                           const Matrix<float>& vectors);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

// Stratified 10-fold cross validation: fold k tests fold k, develops on
// fold (k + 1) mod 10 and trains on the rest. Each class is shuffled with
// the seed and dealt round-robin with one running counter, so fold sizes
// and per-class counts differ by at most one.
std::vector<Fold> cv10_folds(const Dataset& dataset, std::uint64_t seed);

// Uses the split tags: Test examples form the test set and a seeded 10% of
// Train examples becomes dev. Throws PreconditionError without test data.
Fold standard_split(const Dataset& dataset, std::uint64_t seed, double dev_fraction = 0.1);

struct SentencePair {
  std::string first;
  std::string second;
  Tokens first_tokens;
  Tokens second_tokens;
  int score = 0;
};

struct SentencePairSet {
  std::vector<SentencePair> pairs;
  bool filtered = false;
  std::vector<Reject> rejects;
  std::vector<std::string> warnings;
};

// TSV "sentence1\tsentence2\tscore". Throws FormatError for scores
// outside 1..5. With filtering only scores 1 and 5 survive. When more than
// sample_n pairs remain a seeded sample of sample_n is kept in file order;
// fewer leaves all of them and adds a warning.
SentencePairSet load_sis_pairs(const std::filesystem::path& path, bool filter_extremes, std::size_t sample_n = 200,
                               std::uint64_t seed = 0);

// Dataset name -> {url, expected_sentences, expected_vocab, expected_format, files}.
nlohmann::ordered_json fetch_manifest();

}  // namespace lietext
