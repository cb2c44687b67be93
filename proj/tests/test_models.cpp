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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "lietext/errors.hpp"
#include "lietext/gradcheck.hpp"
#include "lietext/optim.hpp"
#include "test_support.hpp"

using namespace lietext;
using lietext::testing::random_matrix;
using T = Tensor<double>;
using M = Matrix<double>;

namespace {

constexpr Architecture kAll[] = {Architecture::Linear, Architecture::Scnn, Architecture::Sclie,
                                 Architecture::Dpcnn, Architecture::Dpclie};

ModelConfig tiny(Architecture a) {
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

TokenMatrix tokens(std::initializer_list<std::initializer_list<std::int32_t>> rows) {
  TokenMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (auto row : rows) {
    Index c = 0;
    for (auto v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

template <typename S = double>
Model<S> build(const ModelConfig& c, Index vocab, Index classes, std::uint64_t seed) {
  Rng rng(seed);
  Matrix<S> emb = random_matrix<S>(rng, vocab, c.embedding_dim, -0.25, 0.25);
  return Model<S>(c, classes, std::move(emb), rng);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lietext_test_" + name);
}

}  // namespace

TEST_CASE("architecture tags") {
  for (Architecture a : kAll) CHECK(parse_architecture(architecture_name(a)) == a);
  CHECK_THROWS_AS(parse_architecture("lstm"), PreconditionError);
}

TEST_CASE("default scnn on a binary task") {
  ModelConfig c;
  auto m = build<float>(c, 20, 2, 1);
  CHECK(m.representation_dim() == 300);
  TokenMatrix batch = TokenMatrix::Constant(3, 7, 2);
  auto logits = m.forward(batch, false);
  CHECK(logits.shape() == Shape{3, 2});
  CHECK(m.represent(batch).shape() == Shape{3, 300});

  c.architecture = Architecture::Sclie;
  c.lie.kernel_hidden = 2;
  auto lie = build<float>(c, 20, 2, 1);
  CHECK(lie.representation_dim() == 300);
  CHECK(lie.represent(batch).shape() == Shape{3, 300});
  CHECK(lie.forward(batch, false).shape() == Shape{3, 2});
}

TEST_CASE("embedding table must match the configured width") {
  Rng rng(2);
  CHECK_THROWS_AS(Model<double>(tiny(Architecture::Scnn), 2, M::Zero(10, 7), rng), DimensionError);
  CHECK_THROWS_AS(Model<double>(tiny(Architecture::Scnn), 1, M::Zero(10, 8), rng), PreconditionError);
}

TEST_CASE("forward: index range and minimum length") {
  for (Architecture a : kAll) {
    auto m = build(tiny(a), 10, 3, 3);
    CHECK_THROWS_AS(m.forward(tokens({{1, 2, 10}}), false), PreconditionError);
    CHECK_THROWS_AS(m.forward(tokens({{1, 2, -1}}), false), PreconditionError);
  }
  auto m = build(tiny(Architecture::Scnn), 10, 3, 3);
  CHECK_THROWS_AS(m.forward(tokens({{1, 2}}), false), PreconditionError);
}

TEST_CASE("forward: all-pad sentences give finite identical logits") {
  for (Architecture a : kAll) {
    auto m = build(tiny(a), 10, 3, 4);
    auto logits = m.forward(TokenMatrix::Zero(4, 5), false).value();
    CHECK(logits.allFinite());
    for (Index r = 1; r < 4; ++r) CHECK(logits.row(r) == logits.row(0));
  }
}

TEST_CASE("forward: identical sentences give identical rows") {
  for (Architecture a : kAll) {
    auto m = build(tiny(a), 10, 3, 5);
    TokenMatrix b = tokens({{3, 4, 5, 6, 0}, {7, 2, 2, 9, 1}, {3, 4, 5, 6, 0}});
    auto logits = m.forward(b, false).value();
    CHECK(logits.row(0) == logits.row(2));
    auto rep = m.represent(b).value();
    CHECK(rep.row(0) == rep.row(2));
    CHECK(rep.rows() == 3);
  }
}

TEST_CASE("forward: dropout only in training, reproducible from the seed") {
  auto c = tiny(Architecture::Scnn);
  c.dropout = 0.5;
  auto m = build(c, 10, 2, 6);
  TokenMatrix b = tokens({{3, 4, 5, 6}, {7, 2, 2, 9}});
  CHECK(m.forward(b, false).value() == m.forward(b, false).value());
  Rng r1(7), r2(7);
  CHECK(m.forward(b, true, &r1).value() == m.forward(b, true, &r2).value());
  Rng r3(8);
  CHECK(m.forward(b, true, &r3).value() != m.forward(b, false).value());
  CHECK_THROWS_AS(m.forward(b, true), PreconditionError);
}

TEST_CASE("a few optimizer steps reduce the loss on one batch") {
  for (Architecture a : kAll) {
    auto m = build(tiny(a), 12, 2, 9);
    TokenMatrix b = tokens({{2, 3, 4, 0}, {5, 6, 7, 8}, {9, 10, 0, 0}, {11, 2, 5, 0},
                            {3, 3, 3, 3}, {4, 7, 0, 0}, {8, 9, 10, 11}, {6, 2, 0, 0}});
    std::vector<std::int32_t> y{0, 1, 0, 1, 1, 0, 1, 0};
    Adadelta<double> opt(m.trainable_parameters());
    auto loss_of = [&] { return softmax_cross_entropy(m.forward(b, false), y); };
    const double initial = loss_of().item();
    for (int step = 0; step < 50; ++step) {
      opt.zero_grad();
      T loss = loss_of();
      backward(loss);
      opt.step();
    }
    CHECK_MESSAGE(loss_of().item() < initial, architecture_name(a));
  }
}

TEST_CASE("pad row stays zero and receives no update") {
  auto m = build(tiny(Architecture::Scnn), 10, 2, 10);
  SgdMomentum<double> opt(m.trainable_parameters());
  TokenMatrix b = tokens({{1, 2, 3, 0, 0}});
  std::vector<std::int32_t> y{1};
  for (int i = 0; i < 3; ++i) {
    opt.zero_grad();
    T loss = softmax_cross_entropy(m.forward(b, false), y);
    backward(loss);
    opt.step();
  }
  CHECK(m.named_parameters().front().second.value().row(kPadIndex).isZero(0.0));
}

TEST_CASE("trailing pads leave the representation unchanged on a constructed instance") {
  // Positive embeddings and an offset-independent positive filter make every
  // window that mixes tokens and pads a sub-sum of a full token window, and
  // pure pad windows evaluate to relu(bias) = 0.
  for (Architecture a : {Architecture::Scnn, Architecture::Sclie}) {
    auto c = tiny(a);
    Rng rng(11);
    M emb = random_matrix(rng, 10, 8, 0.1, 1.0);
    Model<double> m(c, 2, emb, rng);
    for (auto& [name, t] : m.named_parameters()) {
      if (name == "embedding" || name.starts_with("head")) continue;
      auto& v = t.mutable_value();
      if (name.ends_with("bias")) v.setZero();
      else if (name.starts_with("conv")) v.setConstant(0.5);
      else if (name.find("mlp.") != std::string::npos) v.setZero();
    }
    if (a == Architecture::Sclie) {
      for (auto& [name, t] : m.named_parameters()) {
        if (name.ends_with("mlp.2.bias")) t.mutable_value().setConstant(0.5);
      }
    }
    auto short_rep = m.represent(tokens({{4, 2, 7, 5}})).value();
    auto long_rep = m.represent(tokens({{4, 2, 7, 5, 0, 0, 0}})).value();
    CHECK(short_rep.maxCoeff() > 0.0);
    CHECK(short_rep == long_rep);
  }
}

TEST_CASE("parameter accounting at full size") {
  ModelConfig c;
  auto count = [&](Architecture a, double mult = 1.0) {
    ModelConfig x = c;
    x.architecture = a;
    x.channel_multiplier = mult;
    return build<float>(x, 3, 2, 12).count_parameters(false);
  };
  const Index scnn = count(Architecture::Scnn);
  const Index sclie = count(Architecture::Sclie);
  const Index linear = count(Architecture::Linear);
  const Index dpcnn = count(Architecture::Dpcnn);
  const Index dpclie = count(Architecture::Dpclie);
  MESSAGE("scnn " << scnn << " sclie " << sclie << " linear " << linear << " dpcnn " << dpcnn << " dpclie "
                  << dpclie);
  CHECK(scnn == (3 + 4 + 5) * 300 * 100 + 300 + 300 * 2 + 2);
  CHECK(sclie > scnn);
  CHECK(std::abs(static_cast<double>(linear - scnn)) / static_cast<double>(scnn) < 0.01);
  const double ratio = static_cast<double>(dpclie) / static_cast<double>(dpcnn);
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
}

TEST_CASE("parameter counts: embeddings, batch size and filter doubling") {
  auto c = tiny(Architecture::Scnn);
  auto m = build(c, 10, 2, 13);
  CHECK(m.count_parameters(true) == m.count_parameters(false) + 10 * 8);
  const Index before = m.count_parameters(true);
  m.forward(TokenMatrix::Constant(5, 6, 3), false);
  CHECK(m.count_parameters(true) == before);

  auto conv_count = [](const Model<double>& model) {
    Index n = 0;
    for (const auto& [name, t] : model.named_parameters()) {
      if (name.starts_with("conv")) n += t.size();
    }
    return n;
  };
  auto c2 = c;
  c2.filters *= 2;
  CHECK(conv_count(build(c2, 10, 2, 13)) == 2 * conv_count(m));

  std::set<const void*> seen;
  for (Architecture a : kAll) {
    seen.clear();
    for (const auto& [name, t] : build(tiny(a), 10, 2, 13).named_parameters()) {
      CHECK(seen.insert(t.node().get()).second);
    }
  }
}

TEST_CASE("swapping convolution for the Lie layer keeps every shape") {
  for (auto [plain, lie] : {std::pair{Architecture::Scnn, Architecture::Sclie},
                            std::pair{Architecture::Dpcnn, Architecture::Dpclie}}) {
    auto a = build(tiny(plain), 10, 3, 14);
    auto b = build(tiny(lie), 10, 3, 14);
    TokenMatrix batch = tokens({{2, 3, 4, 5, 6, 7, 8}, {9, 2, 0, 0, 0, 0, 0}});
    CHECK(a.represent(batch).shape() == b.represent(batch).shape());
    CHECK(a.forward(batch, false).shape() == b.forward(batch, false).shape());
  }
}

TEST_CASE("end-to-end gradient check for every architecture") {
  for (Architecture a : kAll) {
    auto c = tiny(a);
    auto m = build(c, 12, 3, 15);
    Rng rng(16);
    for (auto& [name, t] : m.named_parameters()) {
      t.mutable_value() = random_matrix(rng, t.rows(), t.cols(), -0.5, 0.5);
      if (name == "embedding") t.mutable_value().row(kPadIndex).setZero();
    }
    // No pad tokens: the pad row is frozen, so its analytic gradient is zero by design.
    TokenMatrix batch = tokens({{2, 5, 7, 3, 11, 10}, {4, 4, 9, 1, 6, 8}});
    std::vector<std::int32_t> y{2, 0};
    auto f = [&] { return softmax_cross_entropy(m.forward(batch, false), y); };
    auto r = grad_check<double>(f, m.trainable_parameters());
    CHECK_MESSAGE(r.max_relative_error < 1e-4, architecture_name(a) << " worst " << r.max_relative_error << " param " << r.worst_param << " index " << r.worst_index);
  }
}

TEST_CASE("config JSON round trip and validation") {
  auto c = tiny(Architecture::Dpclie);
  c.lie.group = GroupKind::SO2;
  c.lie.position_scale = 0.25;
  c.channel_multiplier = 1.5;
  auto j = to_json(c);
  auto back = model_config_from_json(nlohmann::json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());

  auto bad = nlohmann::json::parse(j.dump());
  bad["lie"]["radius"] = 2;
  try {
    model_config_from_json(bad, "/model");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.pointer() == "/model/lie/radius");
  }
  auto neg = nlohmann::json::parse(j.dump());
  neg["filters"] = 0;
  CHECK_THROWS_AS(model_config_from_json(neg), ConfigError);
  neg = nlohmann::json::parse(j.dump());
  neg["architecture"] = "rnn";
  CHECK_THROWS_AS(model_config_from_json(neg), ConfigError);
}

TEST_CASE("checkpoint round trip is bit-exact for float models") {
  for (Architecture a : kAll) {
    auto m = build<float>(tiny(a), 6, 3, 17);
    std::vector<std::string> vocab{"<pad>", "<unk>", "a", "b", "c", "d"};
    auto path = temp_path("ck_" + architecture_name(a));
    save_checkpoint(path, m, vocab);
    Checkpoint ck = read_checkpoint(path);
    CHECK(ck.vocab == vocab);
    CHECK(ck.num_classes == 3);
    auto back = model_from_checkpoint<float>(ck);
    auto p = m.named_parameters(), q = back.named_parameters();
    REQUIRE(p.size() == q.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i].first == q[i].first);
      CHECK(p[i].second.value() == q[i].second.value());
    }
    TokenMatrix batch = tokens({{2, 3, 4, 5}});
    CHECK(m.forward(batch, false).value() == back.forward(batch, false).value());
    // Re-saving reproduces the file byte for byte.
    auto again = temp_path("ck2_" + architecture_name(a));
    save_checkpoint(again, back, vocab);
    std::ifstream f1(path, std::ios::binary), f2(again, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), {}), s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    std::filesystem::remove(path);
    std::filesystem::remove(again);
  }
}

TEST_CASE("checkpoint errors") {
  CHECK_THROWS_AS(read_checkpoint(temp_path("does_not_exist")), IoError);
  auto m = build<float>(tiny(Architecture::Scnn), 4, 2, 18);
  std::vector<std::string> vocab{"<pad>", "<unk>", "x", "y"};
  auto path = temp_path("ck_trunc");
  save_checkpoint(path, m, vocab);
  std::string bytes;
  {
    std::ifstream f(path, std::ios::binary);
    bytes.assign((std::istreambuf_iterator<char>(f)), {});
  }
  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 3));
  }
  CHECK_THROWS_AS(read_checkpoint(path), FormatError);
  {
    std::string wrong = bytes;
    wrong[0] = 9;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(wrong.data(), static_cast<std::streamsize>(wrong.size()));
  }
  CHECK_THROWS_AS(read_checkpoint(path), FormatError);
  CHECK_THROWS_AS(save_checkpoint(path, m, {"<pad>"}), DimensionError);
  std::filesystem::remove(path);
}
