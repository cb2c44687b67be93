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

#include "lietext/corpus.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "lietext/errors.hpp"

namespace lietext {
namespace {

constexpr std::array<std::string_view, 6> kClitics{"'s", "'re", "'ll", "'ve", "'d", "'m"};
constexpr std::array<std::string_view, 6> kTrecClasses{"ABBR", "DESC", "ENTY", "HUM", "LOC", "NUM"};

bool is_separated(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case '"': case '(': case ')': case ':': case ';':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

void split_apostrophes(std::string_view p, Tokens& out) {
  if (p.empty()) return;
  const auto apos = p.find('\'');
  if (apos == std::string_view::npos || p == "'" || p == "n't" ||
      std::find(kClitics.begin(), kClitics.end(), p) != kClitics.end()) {
    out.emplace_back(p);
    return;
  }
  if (p.size() > 3 && p.ends_with("n't")) {
    split_apostrophes(p.substr(0, p.size() - 3), out);
    out.emplace_back("n't");
    return;
  }
  for (std::string_view c : kClitics) {
    if (p.size() > c.size() && p.ends_with(c)) {
      split_apostrophes(p.substr(0, p.size() - c.size()), out);
      out.emplace_back(c);
      return;
    }
  }
  split_apostrophes(p.substr(0, apos), out);
  out.emplace_back("'");
  split_apostrophes(p.substr(apos + 1), out);
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t n;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c >> 5) == 0x6) {
      n = 1;
      cp = c & 0x1f;
    } else if ((c >> 4) == 0xe) {
      n = 2;
      cp = c & 0x0f;
    } else if ((c >> 3) == 0x1e) {
      n = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + n >= s.size()) return false;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((n == 1 && cp < 0x80) || (n == 2 && cp < 0x800) || (n == 3 && cp < 0x10000) || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += n + 1;
  }
  return true;
}

std::string latin1_to_utf8(std::string_view s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80) {
      out.push_back(ch);
    } else {
      out.push_back(static_cast<char>(0xc0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
    }
  }
  return out;
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_int(std::string_view s, long long& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

void finish(Dataset& d, Index declared, const std::filesystem::path& path) {
  if (d.sentences.empty()) {
    throw FormatError(path.string() + ": no valid examples (" + std::to_string(d.rejects.size()) + " rejected)");
  }
  const std::int32_t top = *std::max_element(d.labels.begin(), d.labels.end());
  if (declared > 0) {
    if (top >= declared) {
      throw FormatError(path.string() + ": label " + std::to_string(top) + " outside the declared " +
                        std::to_string(declared) + " classes");
    }
    d.num_classes = declared;
  } else {
    d.num_classes = top + 1;
  }
}

}  // namespace

Tokens tokenize(std::string_view text) {
  std::string s;
  s.reserve(text.size() + 16);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "\xE2\x80\x99") == 0) {
      s.push_back('\'');
      i += 2;
      continue;
    }
    const char c = text[i];
    if (is_separated(c)) {
      s.push_back(' ');
      s.push_back(c);
      s.push_back(' ');
    } else if (c >= 'A' && c <= 'Z') {
      s.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      s.push_back(c);
    }
  }
  Tokens out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) split_apostrophes(std::string_view(s).substr(i, j - i), out);
    i = j;
  }
  return out;
}

DatasetFormat parse_dataset_format(const std::string& name) {
  if (name == "tsv") return DatasetFormat::Tsv;
  if (name == "trec") return DatasetFormat::Trec;
  throw PreconditionError("unknown dataset format '" + name + "' (expected tsv or trec)");
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format, Index num_classes, SplitTag tag) {
  std::ifstream f = open_text(path);
  Dataset d;
  d.name = path.stem().string();
  if (format == DatasetFormat::Trec && num_classes == 0) num_classes = static_cast<Index>(kTrecClasses.size());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) {
      d.rejects.push_back({lineno, "empty line"});
      continue;
    }
    std::string label_field, text;
    if (format == DatasetFormat::Tsv) {
      if (!valid_utf8(line)) {
        d.rejects.push_back({lineno, "invalid UTF-8"});
        continue;
      }
      const auto tab = line.find('\t');
      if (tab == std::string::npos) {
        d.rejects.push_back({lineno, "no tab separator"});
        continue;
      }
      label_field = line.substr(0, tab);
      text = line.substr(tab + 1);
    } else {
      if (!valid_utf8(line)) line = latin1_to_utf8(line);
      const auto colon = line.find(':');
      const auto space = line.find(' ');
      if (colon == std::string::npos || space == std::string::npos || colon > space) {
        d.rejects.push_back({lineno, "expected COARSE:fine before the question"});
        continue;
      }
      label_field = line.substr(0, colon);
      text = line.substr(space + 1);
    }

    long long label = -1;
    if (format == DatasetFormat::Tsv) {
      if (!parse_int(label_field, label) || label < 0) {
        d.rejects.push_back({lineno, "label '" + label_field + "' is not a non-negative integer"});
        continue;
      }
    } else {
      auto it = std::find(kTrecClasses.begin(), kTrecClasses.end(), label_field);
      if (it == kTrecClasses.end()) {
        d.rejects.push_back({lineno, "unknown coarse class '" + label_field + "'"});
        continue;
      }
      label = it - kTrecClasses.begin();
    }
    Tokens tokens = tokenize(text);
    if (tokens.empty()) {
      d.rejects.push_back({lineno, "no tokens"});
      continue;
    }
    if (label > std::numeric_limits<std::int32_t>::max()) {
      d.rejects.push_back({lineno, "label too large"});
      continue;
    }
    d.sentences.push_back(std::move(tokens));
    d.labels.push_back(static_cast<std::int32_t>(label));
    d.split.push_back(tag);
  }
  finish(d, num_classes, path);
  return d;
}

Dataset load_polarity_pair(const std::filesystem::path& positive, const std::filesystem::path& negative) {
  Dataset d;
  d.name = positive.stem().string();
  for (const auto& [path, label] : {std::pair{positive, 1}, std::pair{negative, 0}}) {
    std::ifstream f = open_text(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
      ++lineno;
      strip_cr(line);
      if (!valid_utf8(line)) line = latin1_to_utf8(line);
      Tokens tokens = tokenize(line);
      if (tokens.empty()) {
        d.rejects.push_back({lineno, path.filename().string() + ": no tokens"});
        continue;
      }
      d.sentences.push_back(std::move(tokens));
      d.labels.push_back(label);
      d.split.push_back(SplitTag::Train);
    }
  }
  finish(d, 2, positive);
  return d;
}

Dataset concat(Dataset a, const Dataset& b) {
  a.sentences.insert(a.sentences.end(), b.sentences.begin(), b.sentences.end());
  a.labels.insert(a.labels.end(), b.labels.begin(), b.labels.end());
  a.split.insert(a.split.end(), b.split.begin(), b.split.end());
  a.rejects.insert(a.rejects.end(), b.rejects.begin(), b.rejects.end());
  a.num_classes = std::max(a.num_classes, b.num_classes);
  return a;
}

void save_tsv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    f << dataset.labels[i] << '\t';
    for (std::size_t t = 0; t < dataset.sentences[i].size(); ++t) {
      if (t) f << ' ';
      f << dataset.sentences[i][t];
    }
    f << '\n';
  }
  if (!f) throw IoError("write failed for " + path.string());
}

Vocab::Vocab() : tokens_{kPad, kUnk} {}

Vocab Vocab::build(std::span<const Dataset* const> datasets) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const Dataset* d : datasets) {
    for (const auto& s : d->sentences) {
      for (const auto& t : s) ++counts[t];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocab v;
  for (auto& [token, n] : sorted) {
    v.map_.emplace(token, static_cast<std::int32_t>(v.tokens_.size()));
    v.tokens_.push_back(std::move(token));
  }
  return v;
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2 || tokens[0] != kPad || tokens[1] != kUnk) {
    throw FormatError("vocabulary must start with " + std::string(kPad) + " and " + kUnk);
  }
  Vocab v;
  v.tokens_ = std::move(tokens);
  for (std::size_t i = 2; i < v.tokens_.size(); ++i) {
    if (!v.map_.emplace(v.tokens_[i], static_cast<std::int32_t>(i)).second) {
      throw FormatError("duplicate vocabulary entry '" + v.tokens_[i] + "'");
    }
  }
  return v;
}

std::int32_t Vocab::index(const std::string& token) const {
  auto it = map_.find(token);
  return it == map_.end() ? kUnkIndex : it->second;
}

std::vector<IndexedSentence> index_sentences(const Dataset& dataset, const Vocab& vocab) {
  std::vector<IndexedSentence> out;
  out.reserve(dataset.size());
  for (const auto& s : dataset.sentences) {
    IndexedSentence ids;
    ids.reserve(s.size());
    for (const auto& t : s) ids.push_back(vocab.index(t));
    out.push_back(std::move(ids));
  }
  return out;
}

TokenMatrix make_batch(const std::vector<IndexedSentence>& sentences, std::span<const std::size_t> indices,
                       Index min_width) {
  Index width = min_width;
  for (std::size_t i : indices) width = std::max(width, static_cast<Index>(sentences.at(i).size()));
  TokenMatrix m = TokenMatrix::Constant(static_cast<Index>(indices.size()), width, kPadIndex);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto& s = sentences[indices[r]];
    for (std::size_t t = 0; t < s.size(); ++t) m(static_cast<Index>(r), static_cast<Index>(t)) = s[t];
  }
  return m;
}

template <typename Scalar>
EmbeddingMatrix<Scalar> random_embeddings(const Vocab& vocab, Index dim, Rng& rng) {
  if (dim < 1) throw PreconditionError("embeddings: dimension must be >= 1");
  EmbeddingMatrix<Scalar> e;
  e.values.resize(static_cast<Index>(vocab.size()), dim);
  for (Index i = 0; i < e.values.size(); ++i) {
    e.values.data()[i] = static_cast<Scalar>(rng.uniform(-kOovBound, kOovBound));
  }
  e.values.row(kPadIndex).setZero();
  e.source.assign(vocab.size(), RowSource::Random);
  e.source[kPadIndex] = RowSource::Pad;
  return e;
}

template <typename Scalar>
EmbeddingMatrix<Scalar> load_word2vec_binary(const std::filesystem::path& path, const Vocab& vocab, Index dim,
                                             Rng& rng) {
  static_assert(std::endian::native == std::endian::little, "word2vec reader assumes a little-endian host");
  EmbeddingMatrix<Scalar> e = random_embeddings<Scalar>(vocab, dim, rng);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::string header;
  if (!std::getline(f, header)) throw FormatError(path.string() + ": missing header");
  long long count = -1, file_dim = -1;
  {
    std::istringstream hs(header);
    std::string extra;
    if (!(hs >> count >> file_dim) || (hs >> extra) || count < 0 || file_dim < 1) {
      throw FormatError(path.string() + ": malformed header '" + header + "'");
    }
  }
  if (file_dim != dim) {
    throw DimensionError(path.string() + ": vectors have dimension " + std::to_string(file_dim) +
                         ", configured " + std::to_string(dim));
  }
  enum : std::uint8_t { kNone, kFolded, kExact };
  std::vector<std::uint8_t> filled(vocab.size(), kNone);
  std::streambuf* sb = f.rdbuf();
  std::string word;
  std::vector<float> vec(static_cast<std::size_t>(dim));
  const auto bytes = static_cast<std::streamsize>(vec.size() * sizeof(float));
  for (long long w = 0; w < count; ++w) {
    word.clear();
    int c = sb->sbumpc();
    while (c == ' ' || c == '\n') c = sb->sbumpc();
    while (c != std::char_traits<char>::eof() && c != ' ') {
      word.push_back(static_cast<char>(c));
      c = sb->sbumpc();
    }
    if (c == std::char_traits<char>::eof()) {
      throw FormatError(path.string() + ": truncated at record " + std::to_string(w) + " of " +
                        std::to_string(count));
    }
    if (sb->sgetn(reinterpret_cast<char*>(vec.data()), bytes) != bytes) {
      throw FormatError(path.string() + ": truncated vector for record " + std::to_string(w) + " ('" + word + "')");
    }
    std::uint8_t kind = kExact;
    std::int32_t row = vocab.contains(word) ? vocab.index(word) : -1;
    if (row < 0) {
      std::string folded = word;
      for (char& ch : folded) {
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
      }
      if (vocab.contains(folded)) {
        row = vocab.index(folded);
        kind = kFolded;
      }
    }
    if (row < 0 || filled[static_cast<std::size_t>(row)] >= kind) continue;
    filled[static_cast<std::size_t>(row)] = kind;
    for (Index k = 0; k < dim; ++k) e.values(row, k) = static_cast<Scalar>(vec[static_cast<std::size_t>(k)]);
    e.source[static_cast<std::size_t>(row)] = RowSource::Pretrained;
  }
  return e;
}

void write_word2vec_binary(const std::filesystem::path& path, const std::vector<std::string>& words,
                           const Matrix<float>& vectors) {
  if (static_cast<Index>(words.size()) != vectors.rows()) {
    throw DimensionError("write_word2vec_binary: one vector per word required");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << words.size() << ' ' << vectors.cols() << '\n';
  for (std::size_t i = 0; i < words.size(); ++i) {
    f << words[i] << ' ';
    f.write(reinterpret_cast<const char*>(vectors.row(static_cast<Index>(i)).data()),
            static_cast<std::streamsize>(vectors.cols() * sizeof(float)));
    f << '\n';
  }
  if (!f) throw IoError("write failed for " + path.string());
}

std::vector<Fold> cv10_folds(const Dataset& dataset, std::uint64_t seed) {
  constexpr std::size_t kFolds = 10;
  if (dataset.size() < kFolds) throw PreconditionError("cv10: need at least 10 examples");
  std::map<std::int32_t, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < dataset.size(); ++i) by_class[dataset.labels[i]].push_back(i);
  Rng rng = Rng(seed).stream("cv10");
  std::vector<std::size_t> fold_of(dataset.size());
  std::size_t counter = 0;
  for (auto& [label, members] : by_class) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t i : members) fold_of[i] = counter++ % kFolds;
  }
  std::vector<Fold> folds(kFolds);
  for (std::size_t k = 0; k < kFolds; ++k) {
    const std::size_t dev = (k + 1) % kFolds;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (fold_of[i] == k) folds[k].test.push_back(i);
      else if (fold_of[i] == dev) folds[k].dev.push_back(i);
      else folds[k].train.push_back(i);
    }
  }
  return folds;
}

Fold standard_split(const Dataset& dataset, std::uint64_t seed, double dev_fraction) {
  Fold fold;
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    switch (dataset.split[i]) {
      case SplitTag::Train: train.push_back(i); break;
      case SplitTag::Dev: fold.dev.push_back(i); break;
      case SplitTag::Test: fold.test.push_back(i); break;
    }
  }
  if (fold.test.empty()) throw PreconditionError("standard split: dataset has no test examples");
  if (train.empty()) throw PreconditionError("standard split: dataset has no training examples");
  if (!fold.dev.empty()) {
    fold.train = std::move(train);
    return fold;
  }
  std::vector<std::size_t> order = train;
  Rng rng = Rng(seed).stream("dev");
  rng.shuffle(std::span<std::size_t>(order));
  const auto n_dev = static_cast<std::size_t>(std::llround(dev_fraction * static_cast<double>(train.size())));
  fold.dev.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_dev));
  std::sort(fold.dev.begin(), fold.dev.end());
  std::set_difference(train.begin(), train.end(), fold.dev.begin(), fold.dev.end(), std::back_inserter(fold.train));
  return fold;
}

SentencePairSet load_sis_pairs(const std::filesystem::path& path, bool filter_extremes, std::size_t sample_n,
                               std::uint64_t seed) {
  std::ifstream f = open_text(path);
  SentencePairSet set;
  set.filtered = filter_extremes;
  std::vector<SentencePair> all;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    strip_cr(line);
    if (!valid_utf8(line)) {
      set.rejects.push_back({lineno, "invalid UTF-8"});
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      set.rejects.push_back({lineno, "expected 3 tab-separated fields, got " + std::to_string(fields.size())});
      continue;
    }
    long long score = 0;
    if (!parse_int(fields[2], score)) {
      set.rejects.push_back({lineno, "score '" + fields[2] + "' is not an integer"});
      continue;
    }
    if (score < 1 || score > 5) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": score " + std::to_string(score) +
                        " outside 1..5");
    }
    SentencePair p{fields[0], fields[1], tokenize(fields[0]), tokenize(fields[1]), static_cast<int>(score)};
    if (p.first_tokens.empty() || p.second_tokens.empty()) {
      set.rejects.push_back({lineno, "empty sentence"});
      continue;
    }
    if (filter_extremes && score != 1 && score != 5) continue;
    all.push_back(std::move(p));
  }
  if (sample_n > 0 && all.size() > sample_n) {
    std::vector<std::size_t> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng = Rng(seed).stream("sis");
    rng.shuffle(std::span<std::size_t>(order));
    order.resize(sample_n);
    std::sort(order.begin(), order.end());
    for (std::size_t i : order) set.pairs.push_back(std::move(all[i]));
  } else {
    if (sample_n > 0 && all.size() < sample_n) {
      set.warnings.push_back("only " + std::to_string(all.size()) + " pairs available, wanted " +
                             std::to_string(sample_n) + "; keeping all");
    }
    set.pairs = std::move(all);
  }
  return set;
}

nlohmann::ordered_json fetch_manifest() {
  using nlohmann::ordered_json;
  ordered_json m;
  auto entry = [](ordered_json url, int sentences, int vocab, const char* format, ordered_json files,
                  const char* note) {
    ordered_json e;
    e["url"] = std::move(url);
    e["expected_sentences"] = sentences;
    e["expected_vocab"] = vocab;
    e["expected_format"] = format;
    e["files"] = std::move(files);
    e["note"] = note;
    return e;
  };
  const char* senteval = "https://dl.fbaipublicfiles.com/senteval/senteval_data/datasmall_NB_ACL12.zip";
  m["cr"] = entry(senteval, 3775, 5057, "polarity", {"cr/custrev.pos", "cr/custrev.neg"},
                  "customer reviews; 10-fold cross validation");
  m["mpqa"] = entry(senteval, 10606, 5195, "polarity", {"mpqa/mpqa.pos", "mpqa/mpqa.neg"},
                    "opinion polarity; 10-fold cross validation");
  m["trec"] = entry("https://cogcomp.seas.upenn.edu/Data/QA/QC/", 5952, 9330, "trec",
                    {"trec/train_5500.label", "trec/TREC_10.label"},
                    "question type, 6 coarse classes; standard train/test split");
  m["sstb"] = entry("https://nlp.stanford.edu/sentiment/", 9613, 9613, "tsv",
                    {"sstb/train.tsv", "sstb/dev.tsv", "sstb/test.tsv"},
                    "binary sentence-level labels, converted to label<TAB>text; standard split");
  m["mr"] = entry("https://www.cs.cornell.edu/people/pabo/movie-review-data/rt-polaritydata.tar.gz", 10662,
                  16758, "polarity", {"mr/rt-polarity.pos", "mr/rt-polarity.neg"},
                  "movie review snippets, Latin-1; 10-fold cross validation");
  m["subj"] = entry("https://www.cs.cornell.edu/people/pabo/movie-review-data/rotten_imdb.tar.gz", 10000, 18999,
                    "polarity", {"subj/quote.tok.gt9.5000", "subj/plot.tok.gt9.5000"},
                    "subjective (positive file) vs objective; 10-fold cross validation");
  m["sis"] = entry(nullptr, 0, 0, "sis", {"sis/pairs.tsv"},
                   "sentence1<TAB>sentence2<TAB>symmetry score 1..5; no public source known, supply your own");
  m["word2vec"] = entry("https://code.google.com/archive/p/word2vec/", 0, 0, "word2vec-binary",
                        {"word2vec/GoogleNews-vectors-negative300.bin"}, "300-d CBOW vectors trained on Google News");
  return m;
}

template EmbeddingMatrix<float> random_embeddings(const Vocab&, Index, Rng&);
template EmbeddingMatrix<double> random_embeddings(const Vocab&, Index, Rng&);
template EmbeddingMatrix<float> load_word2vec_binary(const std::filesystem::path&, const Vocab&, Index, Rng&);
template EmbeddingMatrix<double> load_word2vec_binary(const std::filesystem::path&, const Vocab&, Index, Rng&);

}  // namespace lietext
