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

#include "lietext/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lietext/errors.hpp"

namespace lietext {

using nlohmann::json;
using nlohmann::ordered_json;

std::string architecture_name(Architecture a) {
  switch (a) {
    case Architecture::Linear: return "linear";
    case Architecture::Scnn: return "scnn";
    case Architecture::Sclie: return "sclie";
    case Architecture::Dpcnn: return "dpcnn";
    case Architecture::Dpclie: return "dpclie";
  }
  return "?";
}

Architecture parse_architecture(const std::string& tag) {
  for (Architecture a : {Architecture::Linear, Architecture::Scnn, Architecture::Sclie, Architecture::Dpcnn,
                         Architecture::Dpclie}) {
    if (architecture_name(a) == tag) return a;
  }
  throw PreconditionError("unknown architecture '" + tag + "' (expected linear, scnn, sclie, dpcnn or dpclie)");
}

Index ModelConfig::effective_channels() const {
  return std::max<Index>(1, static_cast<Index>(std::llround(static_cast<double>(channels) * channel_multiplier)));
}

namespace {

bool is_pyramid(Architecture a) { return a == Architecture::Dpcnn || a == Architecture::Dpclie; }

// Typed JSON accessors that report failures by pointer.
Index json_index(const json& v, const std::string& ptr, Index minimum) {
  if (!v.is_number_integer()) throw ConfigError(ptr, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < minimum) throw ConfigError(ptr, "must be >= " + std::to_string(minimum));
  return static_cast<Index>(x);
}

double json_number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw ConfigError(ptr, "expected a number");
  return v.get<double>();
}

bool json_bool(const json& v, const std::string& ptr) {
  if (!v.is_boolean()) throw ConfigError(ptr, "expected a boolean");
  return v.get<bool>();
}

std::string json_string(const json& v, const std::string& ptr) {
  if (!v.is_string()) throw ConfigError(ptr, "expected a string");
  return v.get<std::string>();
}

const char* boundary_name(Boundary b) { return b == Boundary::Valid ? "valid" : "circular"; }
const char* quadrature_name(QuadratureMode q) {
  return q == QuadratureMode::Deterministic ? "deterministic" : "monte_carlo";
}
const char* argument_name(KernelArgument a) { return a == KernelArgument::Relative ? "relative" : "absolute"; }

ordered_json lie_to_json(const LieConvOptions& o) {
  ordered_json j;
  j["group"] = group_name(o.group);
  j["kernel_hidden"] = o.kernel_hidden;
  j["kernel_layers"] = o.kernel_layers;
  j["position_scale"] = o.position_scale;
  j["boundary"] = boundary_name(o.boundary);
  j["quadrature"] = quadrature_name(o.quadrature);
  j["samples"] = o.samples;
  j["argument"] = argument_name(o.argument);
  return j;
}

LieConvOptions lie_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw ConfigError(ptr, "expected an object");
  LieConvOptions o;
  for (const auto& [key, v] : j.items()) {
    const std::string p = ptr + "/" + key;
    if (key == "group") {
      try {
        o.group = parse_group(json_string(v, p));
      } catch (const PreconditionError& e) {
        throw ConfigError(p, e.what());
      }
    } else if (key == "kernel_hidden") {
      o.kernel_hidden = json_index(v, p, 1);
    } else if (key == "kernel_layers") {
      o.kernel_layers = json_index(v, p, 0);
    } else if (key == "position_scale") {
      o.position_scale = json_number(v, p);
      if (!(o.position_scale > 0.0)) throw ConfigError(p, "must be > 0");
    } else if (key == "boundary") {
      const auto s = json_string(v, p);
      if (s == "valid") o.boundary = Boundary::Valid;
      else if (s == "circular") o.boundary = Boundary::Circular;
      else throw ConfigError(p, "expected valid or circular");
    } else if (key == "quadrature") {
      const auto s = json_string(v, p);
      if (s == "deterministic") o.quadrature = QuadratureMode::Deterministic;
      else if (s == "monte_carlo") o.quadrature = QuadratureMode::MonteCarlo;
      else throw ConfigError(p, "expected deterministic or monte_carlo");
    } else if (key == "samples") {
      o.samples = json_index(v, p, 0);
    } else if (key == "argument") {
      const auto s = json_string(v, p);
      if (s == "relative") o.argument = KernelArgument::Relative;
      else if (s == "absolute") o.argument = KernelArgument::Absolute;
      else throw ConfigError(p, "expected relative or absolute");
    } else {
      throw ConfigError(p, "unknown key");
    }
  }
  return o;
}

template <typename Scalar>
Matrix<Scalar> glorot(Rng& rng, Index rows, Index cols, Index fan_in, Index fan_out) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix<Scalar> m(rows, cols);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<Scalar>(rng.uniform(-limit, limit));
  return m;
}

}  // namespace

ordered_json to_json(const ModelConfig& c) {
  ordered_json j;
  j["architecture"] = architecture_name(c.architecture);
  j["embedding_dim"] = c.embedding_dim;
  j["widths"] = c.widths;
  j["filters"] = c.filters;
  j["channels"] = c.channels;
  j["region_width"] = c.region_width;
  j["blocks"] = c.blocks;
  j["dropout"] = c.dropout;
  j["channel_multiplier"] = c.channel_multiplier;
  j["static_embeddings"] = c.static_embeddings;
  j["linear_hidden"] = c.linear_hidden;
  j["lie"] = lie_to_json(c.lie);
  return j;
}

ModelConfig model_config_from_json(const json& j, const std::string& pointer) {
  if (!j.is_object()) throw ConfigError(pointer, "expected an object");
  ModelConfig c;
  for (const auto& [key, v] : j.items()) {
    const std::string p = pointer + "/" + key;
    if (key == "architecture") {
      try {
        c.architecture = parse_architecture(json_string(v, p));
      } catch (const PreconditionError& e) {
        throw ConfigError(p, e.what());
      }
    } else if (key == "embedding_dim") {
      c.embedding_dim = json_index(v, p, 1);
    } else if (key == "widths") {
      if (!v.is_array() || v.empty()) throw ConfigError(p, "expected a non-empty array");
      c.widths.clear();
      for (std::size_t i = 0; i < v.size(); ++i) c.widths.push_back(json_index(v[i], p + "/" + std::to_string(i), 1));
    } else if (key == "filters") {
      c.filters = json_index(v, p, 1);
    } else if (key == "channels") {
      c.channels = json_index(v, p, 1);
    } else if (key == "region_width") {
      c.region_width = json_index(v, p, 1);
    } else if (key == "blocks") {
      c.blocks = json_index(v, p, 0);
    } else if (key == "dropout") {
      c.dropout = json_number(v, p);
      if (!(c.dropout >= 0.0 && c.dropout < 1.0)) throw ConfigError(p, "must lie in [0, 1)");
    } else if (key == "channel_multiplier") {
      c.channel_multiplier = json_number(v, p);
      if (!(c.channel_multiplier > 0.0)) throw ConfigError(p, "must be > 0");
    } else if (key == "static_embeddings") {
      c.static_embeddings = json_bool(v, p);
    } else if (key == "linear_hidden") {
      c.linear_hidden = json_index(v, p, 0);
    } else if (key == "lie") {
      c.lie = lie_from_json(v, p);
    } else {
      throw ConfigError(p, "unknown key");
    }
  }
  return c;
}

Index linear_parity_hidden(const ModelConfig& c, Index num_classes) {
  Index conv = 0;
  for (Index l : c.widths) conv += l * c.embedding_dim * c.filters + c.filters;
  const Index rep = static_cast<Index>(c.widths.size()) * c.filters;
  const Index target = conv + rep * num_classes + num_classes;
  // (d + 1) * H + (H + 1) * C = target
  const double h = static_cast<double>(target - num_classes) /
                   static_cast<double>(c.embedding_dim + 1 + num_classes);
  return std::max<Index>(1, static_cast<Index>(std::llround(h)));
}

template <typename Scalar>
Model<Scalar>::Model(ModelConfig config, Index num_classes, Matrix<Scalar> embeddings, Rng& rng)
    : config_(std::move(config)), num_classes_(num_classes) {
  if (num_classes_ < 2) throw PreconditionError("model: need at least two classes");
  if (embeddings.cols() != config_.embedding_dim) {
    std::ostringstream os;
    os << "model: embedding table has " << embeddings.cols() << " columns, config says " << config_.embedding_dim;
    throw DimensionError(os.str());
  }
  if (embeddings.rows() < 2) throw DimensionError("model: vocabulary must hold at least pad and unk");
  embeddings.row(kPadIndex).setZero();
  embedding_ = config_.static_embeddings ? Tensor<Scalar>::constant(std::move(embeddings))
                                         : Tensor<Scalar>::parameter(std::move(embeddings));

  const Index d = config_.embedding_dim;
  auto make_conv = [&](Index l, Index in, Index out) {
    return Conv{Tensor<Scalar>::parameter(glorot<Scalar>(rng, l, in * out, l * in, out), {l, in, out}),
                Tensor<Scalar>::parameter(Matrix<Scalar>::Zero(1, out), {out})};
  };
  auto make_dense = [&](Index in, Index out) {
    return Dense{Tensor<Scalar>::parameter(glorot<Scalar>(rng, in, out, in, out)),
                 Tensor<Scalar>::parameter(Matrix<Scalar>::Zero(1, out), {out})};
  };
  LieConvOptions lie = config_.lie;
  lie.activation = Activation::Relu;

  switch (config_.architecture) {
    case Architecture::Linear:
      linear_hidden_ = config_.linear_hidden > 0 ? config_.linear_hidden : linear_parity_hidden(config_, num_classes_);
      hidden_ = make_dense(d, linear_hidden_);
      break;
    case Architecture::Scnn:
      for (Index l : config_.widths) convs_.push_back(make_conv(l, d, config_.filters));
      break;
    case Architecture::Sclie:
      lie.widths = config_.widths;
      lie.filters = config_.filters;
      lie_ = std::make_unique<LieConvLayer<Scalar>>(d, lie, rng);
      break;
    case Architecture::Dpcnn:
    case Architecture::Dpclie: {
      const Index ch = config_.effective_channels();
      if (config_.architecture == Architecture::Dpcnn) {
        convs_.push_back(make_conv(config_.region_width, d, ch));
      } else {
        lie.widths = {config_.region_width};
        lie.filters = ch;
        lie_ = std::make_unique<LieConvLayer<Scalar>>(d, lie, rng);
      }
      for (Index b = 0; b < 2 * config_.blocks; ++b) block_convs_.push_back(make_conv(3, ch, ch));
      break;
    }
  }
  head_ = make_dense(representation_dim(), num_classes_);
}

template <typename Scalar>
Index Model<Scalar>::representation_dim() const {
  switch (config_.architecture) {
    case Architecture::Linear: return linear_hidden_;
    case Architecture::Scnn:
    case Architecture::Sclie: return static_cast<Index>(config_.widths.size()) * config_.filters;
    default: return config_.effective_channels();
  }
}

template <typename Scalar>
Index Model<Scalar>::min_length() const {
  if (config_.architecture == Architecture::Scnn || config_.architecture == Architecture::Sclie) {
    return *std::max_element(config_.widths.begin(), config_.widths.end());
  }
  return 1;
}

template <typename Scalar>
std::vector<Tensor<Scalar>> Model<Scalar>::embed(const TokenMatrix& batch) const {
  if (batch.rows() == 0) throw PreconditionError("model: empty batch");
  if (batch.cols() < min_length()) {
    std::ostringstream os;
    os << "model: sentences padded to " << batch.cols() << " tokens, need at least " << min_length();
    throw PreconditionError(os.str());
  }
  std::vector<Tensor<Scalar>> out;
  out.reserve(static_cast<std::size_t>(batch.rows()));
  for (Index b = 0; b < batch.rows(); ++b) {
    std::span<const std::int32_t> ids(batch.row(b).data(), static_cast<std::size_t>(batch.cols()));
    out.push_back(gather_rows(embedding_, ids, kPadIndex));
  }
  return out;
}

template <typename Scalar>
Tensor<Scalar> Model<Scalar>::sentence_conv(const Tensor<Scalar>& x) const {
  std::vector<Tensor<Scalar>> maps;
  for (const auto& c : convs_) maps.push_back(relu(conv1d_valid(x, c.weight, c.bias)));
  return pool_and_concat(maps);
}

template <typename Scalar>
Tensor<Scalar> Model<Scalar>::pyramid(const Tensor<Scalar>& region) const {
  auto same = [](const Tensor<Scalar>& x, const Conv& c) {
    return conv1d_valid(pad_rows(x, 1, 1), c.weight, c.bias);
  };
  Tensor<Scalar> h = region;
  for (Index b = 0; b < config_.blocks; ++b) {
    const auto& c0 = block_convs_[static_cast<std::size_t>(2 * b)];
    const auto& c1 = block_convs_[static_cast<std::size_t>(2 * b + 1)];
    Tensor<Scalar> y = same(relu(same(relu(h), c0)), c1);
    h = max_pool_rows(add(h, y), 3, 2);
  }
  return max_over_time(h);
}

template <typename Scalar>
Tensor<Scalar> Model<Scalar>::features(const TokenMatrix& batch) const {
  std::vector<Tensor<Scalar>> xs = embed(batch);
  const Index r = representation_dim();
  std::vector<Tensor<Scalar>> reps;
  reps.reserve(xs.size());

  // Monte Carlo nodes come from a fixed stream so that evaluation is
  // deterministic given the parameters.
  Rng quadrature(0x6c6965636f6e76ULL);
  Rng* q = config_.lie.quadrature == QuadratureMode::MonteCarlo ? &quadrature : nullptr;

  switch (config_.architecture) {
    case Architecture::Linear: {
      for (Index b = 0; b < batch.rows(); ++b) {
        Matrix<Scalar> avg = Matrix<Scalar>::Zero(1, batch.cols());
        Index count = 0;
        for (Index t = 0; t < batch.cols(); ++t) count += batch(b, t) != kPadIndex;
        for (Index t = 0; t < batch.cols(); ++t) {
          if (batch(b, t) != kPadIndex) avg(0, t) = Scalar(1) / static_cast<Scalar>(count);
        }
        reps.push_back(matmul(Tensor<Scalar>::constant(std::move(avg)), xs[static_cast<std::size_t>(b)]));
      }
      Tensor<Scalar> mean = concat_rows<Scalar>(reps);
      return relu(add_bias(matmul(mean, hidden_.weight), hidden_.bias));
    }
    case Architecture::Scnn:
      for (const auto& x : xs) reps.push_back(reshape(sentence_conv(x), {1, r}));
      break;
    case Architecture::Sclie: {
      auto maps = lie_->sequence_batch(xs, q);
      for (const auto& m : maps) reps.push_back(reshape(pool_and_concat(m), {1, r}));
      break;
    }
    case Architecture::Dpcnn:
    case Architecture::Dpclie: {
      const Index pre = (config_.region_width - 1) / 2;
      const Index post = config_.region_width - 1 - pre;
      std::vector<Tensor<Scalar>> padded;
      for (const auto& x : xs) padded.push_back(pad_rows(x, pre, post));
      std::vector<Tensor<Scalar>> regions;
      if (config_.architecture == Architecture::Dpcnn) {
        const auto& c = convs_.front();
        for (const auto& x : padded) regions.push_back(relu(conv1d_valid(x, c.weight, c.bias)));
      } else {
        for (auto& m : lie_->sequence_batch(padded, q)) regions.push_back(m.front());
      }
      for (const auto& region : regions) reps.push_back(reshape(pyramid(region), {1, r}));
      break;
    }
  }
  return concat_rows<Scalar>(reps);
}

template <typename Scalar>
Tensor<Scalar> Model<Scalar>::forward(const TokenMatrix& batch, bool training, Rng* rng) const {
  Tensor<Scalar> rep = features(batch);
  if (training && config_.dropout > 0.0) {
    if (rng == nullptr) throw PreconditionError("model: training forward needs a generator for dropout");
    rep = dropout(rep, config_.dropout, true, *rng);
  }
  return add_bias(matmul(rep, head_.weight), head_.bias);
}

template <typename Scalar>
Tensor<Scalar> Model<Scalar>::represent(const TokenMatrix& batch) const {
  return features(batch);
}

template <typename Scalar>
std::vector<std::pair<std::string, Tensor<Scalar>>> Model<Scalar>::named_parameters() const {
  std::vector<std::pair<std::string, Tensor<Scalar>>> out;
  out.emplace_back("embedding", embedding_);
  if (config_.architecture == Architecture::Linear) {
    out.emplace_back("hidden.weight", hidden_.weight);
    out.emplace_back("hidden.bias", hidden_.bias);
  }
  const std::string conv_prefix = is_pyramid(config_.architecture) ? "region" : "conv";
  for (std::size_t i = 0; i < convs_.size(); ++i) {
    const std::string p = is_pyramid(config_.architecture) ? conv_prefix : conv_prefix + std::to_string(i);
    out.emplace_back(p + ".weight", convs_[i].weight);
    out.emplace_back(p + ".bias", convs_[i].bias);
  }
  if (lie_) {
    for (auto& entry : lie_->named_parameters(is_pyramid(config_.architecture) ? "region." : "lie.")) {
      out.push_back(std::move(entry));
    }
  }
  for (std::size_t i = 0; i < block_convs_.size(); ++i) {
    const std::string p = "block" + std::to_string(i / 2) + ".conv" + std::to_string(i % 2);
    out.emplace_back(p + ".weight", block_convs_[i].weight);
    out.emplace_back(p + ".bias", block_convs_[i].bias);
  }
  out.emplace_back("head.weight", head_.weight);
  out.emplace_back("head.bias", head_.bias);
  return out;
}

template <typename Scalar>
std::vector<Tensor<Scalar>> Model<Scalar>::trainable_parameters() const {
  std::vector<Tensor<Scalar>> out;
  for (auto& [name, t] : named_parameters()) {
    if (t.requires_grad()) out.push_back(t);
  }
  return out;
}

template <typename Scalar>
Index Model<Scalar>::count_parameters(bool include_embeddings) const {
  Index n = 0;
  for (const auto& [name, t] : named_parameters()) {
    if (include_embeddings || name != "embedding") n += t.size();
  }
  return n;
}

namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

void put_u32(std::string& out, std::uint32_t v) { out.append(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::string& out, std::uint64_t v) { out.append(reinterpret_cast<const char*>(&v), 8); }
void put_str(std::string& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out += s;
}

class Reader {
 public:
  Reader(std::string data, std::string path) : data_(std::move(data)), path_(std::move(path)) {}
  void take(void* dst, std::size_t n) {
    if (n > data_.size() - pos_) {
      throw FormatError(path_ + ": truncated checkpoint at byte " + std::to_string(pos_));
    }
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  std::uint32_t u32() {
    std::uint32_t v;
    take(&v, 4);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    take(&v, 8);
    return v;
  }
  std::string str() {
    std::string s(u32(), '\0');
    take(s.data(), s.size());
    return s;
  }
  bool done() const { return pos_ == data_.size(); }
  const std::string& path() const { return path_; }

 private:
  std::string data_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

template <typename Scalar>
void save_checkpoint(const std::filesystem::path& path, const Model<Scalar>& model,
                     const std::vector<std::string>& vocab) {
  if (static_cast<Index>(vocab.size()) != model.vocab_size()) {
    throw DimensionError("save_checkpoint: vocabulary size does not match the embedding table");
  }
  ordered_json header;
  header["config"] = to_json(model.config());
  header["num_classes"] = model.num_classes();
  header["vocab"] = vocab;

  std::string out;
  put_u32(out, kCheckpointVersion);
  put_str(out, architecture_name(model.config().architecture));
  put_str(out, header.dump());
  const auto params = model.named_parameters();
  put_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params) {
    put_str(out, name);
    put_u32(out, static_cast<std::uint32_t>(t.rank()));
    for (Index dim : t.shape()) put_u64(out, static_cast<std::uint64_t>(dim));
    for (Index i = 0; i < t.size(); ++i) {
      const float v = static_cast<float>(t.value().data()[i]);
      out.append(reinterpret_cast<const char*>(&v), 4);
    }
  }

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place at " + path.string() + ": " + ec.message());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open checkpoint " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  Reader in(buf.str(), path.string());

  const std::uint32_t version = in.u32();
  if (version != kCheckpointVersion) {
    throw FormatError(path.string() + ": unsupported checkpoint version " + std::to_string(version));
  }
  const std::string tag = in.str();
  json header;
  try {
    header = json::parse(in.str());
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": bad checkpoint header: " + e.what());
  }
  Checkpoint ck;
  try {
    ck.config = model_config_from_json(header.at("config"), "/config");
    ck.num_classes = header.at("num_classes").get<Index>();
    ck.vocab = header.at("vocab").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": bad checkpoint header: " + e.what());
  } catch (const ConfigError& e) {
    throw FormatError(path.string() + ": bad checkpoint config: " + e.what());
  }
  if (architecture_name(ck.config.architecture) != tag) {
    throw FormatError(path.string() + ": architecture tag '" + tag + "' disagrees with the stored config");
  }
  const std::uint32_t count = in.u32();
  for (std::uint32_t r = 0; r < count; ++r) {
    Checkpoint::Record rec;
    rec.name = in.str();
    const std::uint32_t rank = in.u32();
    if (rank > 8) throw FormatError(path.string() + ": implausible rank for record " + rec.name);
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < rank; ++i) {
      const std::uint64_t dim = in.u64();
      rec.shape.push_back(static_cast<Index>(dim));
      n *= dim;
    }
    if (n > (std::uint64_t{1} << 34)) throw FormatError(path.string() + ": implausible size for record " + rec.name);
    rec.values.resize(static_cast<std::size_t>(n));
    in.take(rec.values.data(), rec.values.size() * 4);
    ck.records.push_back(std::move(rec));
  }
  if (!in.done()) throw FormatError(path.string() + ": trailing bytes after the last record");
  return ck;
}

template <typename Scalar>
Model<Scalar> model_from_checkpoint(const Checkpoint& ck) {
  Rng rng(0);
  Matrix<Scalar> emb = Matrix<Scalar>::Zero(static_cast<Index>(ck.vocab.size()), ck.config.embedding_dim);
  Model<Scalar> model(ck.config, ck.num_classes, std::move(emb), rng);
  auto params = model.named_parameters();
  if (params.size() != ck.records.size()) {
    throw FormatError("checkpoint holds " + std::to_string(ck.records.size()) + " records, model expects " +
                      std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& [name, t] = params[i];
    const auto& rec = ck.records[i];
    if (rec.name != name || rec.shape != t.shape()) {
      throw FormatError("checkpoint record '" + rec.name + "' " + shape_string(rec.shape) + " does not match '" +
                        name + "' " + shape_string(t.shape()));
    }
    auto& v = t.mutable_value();
    for (Index j = 0; j < v.size(); ++j) v.data()[j] = static_cast<Scalar>(rec.values[static_cast<std::size_t>(j)]);
  }
  return model;
}

template class Model<float>;
template class Model<double>;
template void save_checkpoint(const std::filesystem::path&, const Model<float>&, const std::vector<std::string>&);
template void save_checkpoint(const std::filesystem::path&, const Model<double>&, const std::vector<std::string>&);
template Model<float> model_from_checkpoint(const Checkpoint&);
template Model<double> model_from_checkpoint(const Checkpoint&);

}  // namespace lietext
