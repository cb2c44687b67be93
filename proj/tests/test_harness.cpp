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

#include "lietext/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lietext/errors.hpp"
#include "lietext/stats.hpp"
#include "test_support.hpp"

using namespace lietext;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("lietext_harness_" + name); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Rank of each element: 1 + count below + half the other ties.
std::vector<double> brute_ranks(const std::vector<double>& xs) {
  std::vector<double> r;
  for (double x : xs) {
    double below = 0, equal = 0;
    for (double y : xs) {
      below += y < x;
      equal += y == x;
    }
    r.push_back(1.0 + below + (equal - 1.0) / 2.0);
  }
  return r;
}

double raw_sum_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  long double n = static_cast<long double>(x.size()), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

RunConfig tiny_run(Architecture a) {
  RunConfig c;
  c.model.architecture = a;
  c.model.embedding_dim = 8;
  c.model.widths = {2, 3};
  c.model.filters = 4;
  c.model.channels = 4;
  c.model.dropout = 0.0;
  c.model.lie.kernel_hidden = 4;
  c.optimizer = default_optimizer(a);
  c.max_epochs = 3;
  c.record_timing = false;
  return c;
}

// Two-word vocabulary and a linear model whose logits are the token's
// one-hot embedding.
struct Oracle {
  std::vector<IndexedSentence> sentences{{2}, {3}, {2, 2}, {3, 3}};
  std::vector<std::int32_t> labels{0, 1, 0, 1};
  std::vector<std::size_t> all{0, 1, 2, 3};

  Model<double> model(bool constant) const {
    ModelConfig c;
    c.architecture = Architecture::Linear;
    c.embedding_dim = 2;
    c.linear_hidden = 2;
    c.dropout = 0.0;
    Rng rng(0);
    Matrix<double> emb(4, 2);
    emb << 0, 0, 0, 0, 1, 0, 0, 1;
    Model<double> m(c, 2, emb, rng);
    for (auto& [name, p] : m.named_parameters()) {
      if (name == "hidden.weight") p.mutable_value() = Matrix<double>::Identity(2, 2);
      if (name == "hidden.bias") p.mutable_value().setZero();
      if (name == "head.weight") {
        p.mutable_value() = Matrix<double>::Identity(2, 2);
        if (constant) p.mutable_value().setZero();
      }
      if (name == "head.bias") {
        p.mutable_value().setZero();
        if (constant) p.mutable_value()(0, 0) = 1.0;
      }
    }
    return m;
  }
};

}  // namespace

TEST_CASE("cosine similarity examples and scale invariance") {
  const std::vector<double> v{0.3, -1.2, 2.0}, e1{1, 0}, e2{0, 1}, neg{-1, 0};
  CHECK(cosine_similarity(v, v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine_similarity(e1, e2) == 0.0);
  CHECK(cosine_similarity(e1, neg) == -1.0);
  CHECK_THROWS_AS(cosine_similarity(e1, std::vector<double>{0, 0}), UndefinedError);
  CHECK_THROWS_AS(cosine_similarity(e1, v), DimensionError);

  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> u(6), w(6), aw(6);
    const double alpha = std::exp(rng.uniform(-5.0, 5.0));
    for (int i = 0; i < 6; ++i) {
      u[i] = rng.normal();
      w[i] = rng.normal();
      aw[i] = alpha * w[i];
    }
    const double c = cosine_similarity(u, w);
    CHECK(std::abs(cosine_similarity(u, aw) - c) < 1e-12);
    CHECK(c >= -1.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("pearson and spearman hand cases") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2 * v + 1);
  CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2}) == -0.5);

  const std::vector<double> tx{1, 1, 2}, ty{1, 2, 3};
  CHECK(average_ranks(tx) == std::vector<double>{1.5, 1.5, 3.0});
  CHECK(spearman(tx, ty) == pearson(brute_ranks(tx), brute_ranks(ty)));
  CHECK(spearman(tx, ty) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));

  CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, ty), UndefinedError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), PreconditionError);
  CHECK_THROWS_AS(spearman(tx, std::vector<double>{1, 2}), DimensionError);
}

TEST_CASE("correlations against brute-force oracles on random vectors") {
  Rng rng(2024);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(3 + rng.index(10));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Small integer grid so ties are common.
      x[i] = static_cast<double>(rng.index(6));
      y[i] = rng.normal();
    }
    CHECK(average_ranks(x) == brute_ranks(x));
    CHECK(average_ranks(y) == brute_ranks(y));
    const bool constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    if (constant) {
      CHECK_THROWS_AS(pearson(x, y), UndefinedError);
      continue;
    }
    CHECK(std::abs(pearson(x, y) - raw_sum_pearson(x, y)) < 1e-12);
    CHECK(spearman(x, y) == pearson(brute_ranks(x), brute_ranks(y)));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("pearson is affine invariant and spearman monotone invariant") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(10), y(10), ax(10), mx(10);
    const double a = std::exp(rng.uniform(-2.0, 2.0)), b = rng.uniform(-10.0, 10.0);
    for (int i = 0; i < 10; ++i) {
      x[i] = rng.normal();
      y[i] = x[i] + rng.normal();
      ax[i] = a * x[i] + b;
      mx[i] = std::exp(x[i]) + x[i] * x[i] * x[i];
    }
    CHECK(std::abs(pearson(ax, y) - pearson(x, y)) < 1e-12);
    CHECK(spearman(mx, y) == spearman(x, y));
  }
}

TEST_CASE("mean and sample standard deviation") {
  const auto ms = mean_std(std::vector<double>{1, 2, 3, 4});
  CHECK(ms.mean == 2.5);
  CHECK(ms.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(mean_std(std::vector<double>{7}).std == 0.0);
  CHECK_THROWS_AS(mean_std(std::vector<double>{}), PreconditionError);
}

TEST_CASE("evaluate with constructed predictors") {
  Oracle o;
  const auto perfect = evaluate(o.model(false), o.sentences, o.labels, o.all);
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.count == 4);
  CHECK(perfect.confusion == std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 2}});
  const auto constant = evaluate(o.model(true), o.sentences, o.labels, o.all, 3);
  CHECK(constant.accuracy == 0.5);
  CHECK(constant.confusion == std::vector<std::vector<std::int64_t>>{{2, 0}, {2, 0}});
  CHECK_THROWS_AS(evaluate(o.model(false), o.sentences, o.labels, {}), PreconditionError);
}

TEST_CASE("symmetry probe degenerate and synthetic cases") {
  Oracle o;
  const auto m = o.model(false);
  Vocab vocab = Vocab::from_tokens({Vocab::kPad, Vocab::kUnk, "a", "b"});
  SentencePairSet same;
  for (int i = 0; i < 5; ++i) same.pairs.push_back({"a b", "a b", {"a", "b"}, {"a", "b"}, 1});
  const auto r = symmetry_probe(m, vocab, same);
  CHECK(r.pairs == 5);
  for (double s : r.similarities) CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(r.pearson.has_value());
  CHECK_FALSE(r.spearman.has_value());
  CHECK(r.condition.find("constant") != std::string::npos);
  CHECK(to_json(r)["pearson"].is_null());

  // Angle grows with the score, so similarity falls as the score rises.
  std::vector<double> sims;
  std::vector<int> scores;
  for (int s = 1; s <= 5; ++s) {
    for (int rep = 0; rep < 4; ++rep) {
      const double theta = std::acos(0.95 - 0.2 * s + 0.001 * rep);
      const std::vector<double> u{1.0, 0.0}, v{std::cos(theta), std::sin(theta)};
      sims.push_back(cosine_similarity(u, v));
      scores.push_back(s);
    }
  }
  const auto c = correlate_similarities(sims, scores);
  REQUIRE(c.pearson.has_value());
  CHECK(*c.pearson > 0.99);
  CHECK(*c.spearman > 0.97);
  CHECK(*c.pearson_raw == doctest::Approx(-*c.pearson));
  CHECK(c.condition.empty());
}

TEST_CASE("representation export") {
  Rng rng(3);
  ModelConfig c;
  c.architecture = Architecture::Scnn;
  c.embedding_dim = 4;
  c.widths = {2};
  c.filters = 4;
  Matrix<float> emb = Matrix<float>::Random(6, 4);
  emb.row(0).setZero();
  Model<float> m(c, 2, emb, rng);
  REQUIRE(m.representation_dim() == 4);
  std::vector<IndexedSentence> s{{2, 3, 4}, {5, 4}, {3, 3, 2, 5}};
  std::vector<std::int32_t> labels{0, 1, 1};
  const auto p1 = temp_path("export1.csv"), p2 = temp_path("export2.csv");
  export_representations(m, s, labels, {0, 1, 2}, p1);
  export_representations(m, s, labels, {0, 1, 2}, p2);
  const std::string text = slurp(p1);
  CHECK(text == slurp(p2));

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "id,label,v_0,v_1,v_2,v_3");
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    CHECK(std::stoi(cells[0]) == rows);
    CHECK(std::stoi(cells[1]) == labels[static_cast<std::size_t>(rows)]);
    double norm = 0;
    for (std::size_t k = 2; k < 6; ++k) norm += std::stod(cells[k]) * std::stod(cells[k]);
    if (norm != 0.0) CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-6);
    ++rows;
  }
  CHECK(rows == 3);
  CHECK_THROWS_AS(export_representations(m, s, labels, {0}, fs::path("/nonexistent/dir/x.csv")), IoError);
}

TEST_CASE("learning rate schedule") {
  OptimizerConfig sgd = default_optimizer(Architecture::Dpcnn);
  CHECK(sgd.kind == OptimizerKind::Sgd);
  CHECK(sgd.lr == 0.1);
  // ceil(0.45 * 20) = 9
  for (Index e = 1; e <= 9; ++e) CHECK(scheduled_lr(sgd, e, 20) == 0.1);
  for (Index e = 10; e <= 20; ++e) CHECK(scheduled_lr(sgd, e, 20) == 0.1 * 0.1);
  OptimizerConfig ada = default_optimizer(Architecture::Sclie);
  CHECK(scheduled_lr(ada, 20, 20) == ada.lr);

  RunConfig rc = tiny_run(Architecture::Dpcnn);
  rc.max_epochs = 5;
  rc.patience = 100;
  const auto rep = run_experiment<float>(rc, data_dir()).report;
  const auto& epochs = rep["runs"][0]["training"]["epochs"];
  REQUIRE(epochs.size() == 5);
  for (std::size_t e = 0; e < 5; ++e) {
    CHECK(epochs[e]["lr"].get<double>() == (e < 3 ? 0.1 : 0.1 * 0.1));
  }
}

TEST_CASE("patience zero stops after the first non-improving epoch") {
  PreparedData data = prepare_data(DataConfig{}, 1);
  RunConfig rc = tiny_run(Architecture::Scnn);
  rc.max_epochs = 50;
  rc.patience = 0;
  rc.optimizer.lr = 1e-9;  // no progress: epoch 2 cannot improve on epoch 1
  Rng rng(4);
  Model<float> m(rc.model, data.dataset.num_classes, random_embeddings<float>(data.vocab, 8, rng).values, rng);
  Rng tr(9);
  const auto r = train(rc, m, data.indexed, data.dataset.labels, data.folds[0], tr);
  CHECK(r.epochs.size() == 2);
  CHECK(r.stopped_early);
  CHECK(r.best_epoch == 1);
  CHECK(r.epochs[1].train_accuracy <= r.best_metric);
}

TEST_CASE("best parameters are restored") {
  PreparedData data = prepare_data(DataConfig{}, 1);
  RunConfig rc = tiny_run(Architecture::Scnn);
  rc.max_epochs = 6;
  Rng rng(4);
  Model<float> m(rc.model, data.dataset.num_classes, random_embeddings<float>(data.vocab, 8, rng).values, rng);
  Rng tr(2);
  const auto r = train(rc, m, data.indexed, data.dataset.labels, data.folds[0], tr);
  double best = 0;
  for (const auto& e : r.epochs) best = std::max(best, e.train_accuracy);
  CHECK(r.best_metric == best);
  CHECK(evaluate(m, data.indexed, data.dataset.labels, data.folds[0].train).accuracy == best);
}

TEST_CASE("training divergence reports coordinates") {
  PreparedData data = prepare_data(DataConfig{}, 1);
  RunConfig rc = tiny_run(Architecture::Scnn);
  rc.optimizer = default_optimizer(Architecture::Dpcnn);
  rc.optimizer.lr = 1e30;
  rc.max_epochs = 20;
  Rng rng(4);
  Model<float> m(rc.model, data.dataset.num_classes, random_embeddings<float>(data.vocab, 8, rng).values, rng);
  Rng tr(1);
  try {
    train(rc, m, data.indexed, data.dataset.labels, data.folds[0], tr);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.epoch() >= 1);
    CHECK(e.batch() >= 0);
    CHECK(std::string(e.what()).find("epoch") != std::string::npos);
  }
}

TEST_CASE("experiments are deterministic") {
  RunConfig rc = tiny_run(Architecture::Sclie);
  const auto a = run_experiment<float>(rc, data_dir());
  const auto b = run_experiment<float>(rc, data_dir());
  CHECK(a.report.dump() == b.report.dump());
  CHECK_FALSE(a.report.contains("metadata"));
  const auto pa = temp_path("ck_a.bin"), pb = temp_path("ck_b.bin");
  save_checkpoint(pa, *a.model, a.vocab.tokens());
  save_checkpoint(pb, *b.model, b.vocab.tokens());
  CHECK(slurp(pa) == slurp(pb));

  rc.record_timing = true;
  auto c = run_experiment<float>(rc, data_dir()).report;
  REQUIRE(c.contains("metadata"));
  CHECK(c["metadata"]["wall_time_seconds"].get<double>() >= 0.0);
  c.erase("metadata");
  c["config"]["record_timing"] = false;
  CHECK(c.dump() == a.report.dump());

  rc.seed = 2;
  rc.record_timing = false;
  CHECK(run_experiment<float>(rc, data_dir()).report.dump() != a.report.dump());
}

TEST_CASE("report contents") {
  RunConfig rc = tiny_run(Architecture::Scnn);
  const auto rep = run_experiment<float>(rc, data_dir()).report;
  for (const char* key : {"config", "data", "parameters", "runs", "summary"}) CHECK(rep.contains(key));
  CHECK(rep["data"]["sentences"] == 64);
  CHECK(rep["data"]["rejects"] == 0);
  CHECK(rep["parameters"]["total"].get<Index>() > rep["parameters"]["non_embedding"].get<Index>());
  const auto& epochs = rep["runs"][0]["training"]["epochs"];
  CHECK(epochs.size() <= 3);
  for (const auto& e : epochs) {
    CHECK(e["train_accuracy"].get<double>() >= 0.0);
    CHECK(e["train_accuracy"].get<double>() <= 1.0);
  }
}

TEST_CASE("data preparation") {
  DataConfig d;
  d.name = "nope";
  CHECK_THROWS_AS(prepare_data(d, 1), ConfigError);
  d.name = "trec";
  CHECK_THROWS_AS(prepare_data(d, 1, temp_path("empty_root")), IoError);

  d = DataConfig{};
  d.name = "files";
  d.format = "trec";
  d.train = (fixture_dir() / "trec_train.label").string();
  d.test = (fixture_dir() / "trec_test.label").string();
  auto p = prepare_data(d, 3);
  REQUIRE(p.folds.size() == 1);
  CHECK(p.folds[0].test.size() == 24);
  CHECK(p.folds[0].train.size() + p.folds[0].dev.size() == 60);
  CHECK(p.dataset.num_classes == 6);

  d.test.clear();
  d.fold = -1;
  p = prepare_data(d, 3);
  CHECK(p.folds.size() == 10);
  std::size_t tested = 0;
  for (const auto& f : p.folds) tested += f.test.size();
  CHECK(tested == 60);
}

TEST_CASE("parameter parity report") {
  ModelConfig base;
  const auto j = parameter_parity(base, 2);
  CHECK(j["dpclie"].get<Index>() > j["dpcnn"].get<Index>());
  CHECK(j["grid"].size() == 3);
  const double r = j["ratio_dpclie_over_dpcnn"].get<double>();
  CHECK(r >= 1.6);
  CHECK(r <= 2.4);
  const double gap = j["closest"]["relative_gap"].get<double>();
  for (const auto& row : j["grid"]) CHECK(row["relative_gap"].get<double>() >= gap);
  CHECK(j["within_10_percent"].get<bool>() == (gap <= 0.10));
  CHECK_THROWS_AS(parameter_parity(base, 2, {}), PreconditionError);
}

TEST_CASE("parameter control reports both models") {
  RunConfig rc = tiny_run(Architecture::Dpclie);
  rc.max_epochs = 1;
  const auto j = parameter_control(rc, data_dir());
  for (const char* k : {"dpclie", "dpcnn"}) {
    CHECK(j[k]["parameters"]["non_embedding"].get<Index>() > 0);
    CHECK(j[k]["summary"].contains("train_accuracy"));
  }
  CHECK(j["dpcnn"]["channel_multiplier"] == j["parity"]["closest"]["multiplier"]);
  CHECK(j.contains("accuracy_delta"));
}

TEST_CASE("config defaults, typo guard and overrides") {
  const auto path = temp_path("cfg.json");
  {
    std::ofstream f(path);
    f << R"({"model": {"architecture": "dpclie"}})";
  }
  RunConfig c = load_config(path);
  CHECK(c.model.architecture == Architecture::Dpclie);
  CHECK(c.model.embedding_dim == 300);
  CHECK(c.optimizer.kind == OptimizerKind::Sgd);
  CHECK(c.optimizer.batch_size == 64);
  CHECK(c.optimizer.momentum == 0.9);
  CHECK(c.optimizer.weight_decay == 1e-4);
  CHECK(c.patience == 10);

  c = load_config(path, {"optimizer.lr=0.05", "seed=7", "data.name=trec"});
  CHECK(c.optimizer.lr == 0.05);
  CHECK(c.seed == 7);
  CHECK(c.data.name == "trec");

  {
    std::ofstream f(path);
    f << R"({"model": {"architecture": "sclie"}, "optimizer": {"bacth_size": 50}})";
  }
  try {
    load_config(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.pointer() == "/optimizer/bacth_size");
    CHECK(std::string(e.what()).find("bacth_size") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config(path, {"optimizer.batch_size=0"}), ConfigError);
  CHECK_THROWS_AS(load_config(temp_path("missing.json")), IoError);

  RunConfig rt = run_config_from_json(nlohmann::json::parse(to_json(tiny_run(Architecture::Sclie)).dump()));
  CHECK(to_json(rt).dump() == to_json(tiny_run(Architecture::Sclie)).dump());
}
