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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lietext/errors.hpp"
#include "lietext/optim.hpp"
#include "lietext/stats.hpp"

namespace lietext {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path data_dir() {
  const char* env = std::getenv("LIETEXT_DATA_DIR");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("data");
}

fs::path fixture_dir() { return fs::path(LIETEXT_FIXTURE_DIR); }

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

namespace {

fs::path required(const fs::path& root, const std::string& rel, const std::string& name) {
  fs::path p = root / rel;
  if (!fs::exists(p)) {
    throw IoError(name + ": missing " + p.string() + " (run fetch-manifest for sources; set LIETEXT_DATA_DIR)");
  }
  return p;
}

bool has_tag(const Dataset& d, SplitTag t) { return std::find(d.split.begin(), d.split.end(), t) != d.split.end(); }

}  // namespace

PreparedData prepare_data(const DataConfig& config, std::uint64_t seed, const fs::path& root) {
  PreparedData out;
  SplitPolicy policy = config.split;
  if (config.name == "fixture") {
    out.dataset = load_dataset(fixture_dir() / "sentiment64.tsv", DatasetFormat::Tsv);
    if (policy == SplitPolicy::Auto) policy = SplitPolicy::None;
  } else if (config.name == "files") {
    if (config.train.empty()) throw ConfigError("/data/train", "required when data.name is \"files\"");
    DatasetFormat fmt;
    try {
      fmt = parse_dataset_format(config.format);
    } catch (const PreconditionError& e) {
      throw ConfigError("/data/format", e.what());
    }
    out.dataset = load_dataset(config.train, fmt, 0, SplitTag::Train);
    if (!config.dev.empty()) out.dataset = concat(std::move(out.dataset), load_dataset(config.dev, fmt, 0, SplitTag::Dev));
    if (!config.test.empty()) {
      out.dataset = concat(std::move(out.dataset), load_dataset(config.test, fmt, 0, SplitTag::Test));
    }
    if (policy == SplitPolicy::Auto) policy = config.test.empty() ? SplitPolicy::Cv10 : SplitPolicy::Standard;
  } else {
    const auto manifest = fetch_manifest();
    if (!manifest.contains(config.name) || manifest[config.name]["expected_sentences"] == 0) {
      throw ConfigError("/data/name", "unknown dataset '" + config.name + "'");
    }
    const auto& entry = manifest[config.name];
    const auto files = entry["files"].get<std::vector<std::string>>();
    const auto format = entry["expected_format"].get<std::string>();
    if (format == "polarity") {
      out.dataset = load_polarity_pair(required(root, files[0], config.name), required(root, files[1], config.name));
      if (policy == SplitPolicy::Auto) policy = SplitPolicy::Cv10;
    } else if (format == "trec") {
      out.dataset = concat(load_dataset(required(root, files[0], config.name), DatasetFormat::Trec),
                           load_dataset(required(root, files[1], config.name), DatasetFormat::Trec, 0, SplitTag::Test));
      if (policy == SplitPolicy::Auto) policy = SplitPolicy::Standard;
    } else {
      out.dataset = load_dataset(required(root, files[0], config.name), DatasetFormat::Tsv);
      out.dataset = concat(std::move(out.dataset), load_dataset(required(root, files[1], config.name),
                                                                DatasetFormat::Tsv, 0, SplitTag::Dev));
      out.dataset = concat(std::move(out.dataset), load_dataset(required(root, files[2], config.name),
                                                                DatasetFormat::Tsv, 0, SplitTag::Test));
      if (policy == SplitPolicy::Auto) policy = SplitPolicy::Standard;
    }
    out.dataset.name = config.name;
  }

  switch (policy) {
    case SplitPolicy::Standard:
      if (!has_tag(out.dataset, SplitTag::Test)) {
        throw ConfigError("/data/split", "standard split requested but no test file was given");
      }
      out.folds.push_back(standard_split(out.dataset, seed, config.dev_fraction));
      break;
    case SplitPolicy::Cv10: {
      auto folds = cv10_folds(out.dataset, seed);
      if (config.fold < 0) out.folds = std::move(folds);
      else out.folds.push_back(std::move(folds[static_cast<std::size_t>(config.fold)]));
      break;
    }
    default: {
      Fold all;
      for (std::size_t i = 0; i < out.dataset.size(); ++i) all.train.push_back(i);
      out.folds.push_back(std::move(all));
      break;
    }
  }
  const Dataset* ds[] = {&out.dataset};
  out.vocab = Vocab::build(ds);
  out.indexed = index_sentences(out.dataset, out.vocab);
  return out;
}

template <typename Scalar>
EvalResult evaluate(const Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                    const std::vector<std::int32_t>& labels, const std::vector<std::size_t>& indices,
                    Index batch_size) {
  if (indices.empty()) throw PreconditionError("evaluate: empty split");
  const auto k = static_cast<std::size_t>(model.num_classes());
  EvalResult r;
  r.confusion.assign(k, std::vector<std::int64_t>(k, 0));
  std::size_t correct = 0;
  const auto step = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < indices.size(); start += step) {
    std::span<const std::size_t> chunk(indices.data() + start, std::min(step, indices.size() - start));
    const auto logits = model.forward(make_batch(sentences, chunk, model.min_length()), false).value();
    for (std::size_t row = 0; row < chunk.size(); ++row) {
      Index pred = 0;
      logits.row(static_cast<Index>(row)).maxCoeff(&pred);
      const auto truth = static_cast<std::size_t>(labels[chunk[row]]);
      ++r.confusion.at(truth).at(static_cast<std::size_t>(pred));
      correct += truth == static_cast<std::size_t>(pred);
    }
  }
  r.count = indices.size();
  r.accuracy = static_cast<double>(correct) / static_cast<double>(indices.size());
  return r;
}

double scheduled_lr(const OptimizerConfig& opt, Index epoch, Index max_epochs) {
  if (opt.kind != OptimizerKind::Sgd) return opt.lr;
  const auto constant = static_cast<Index>(std::ceil(opt.lr_drop_fraction * static_cast<double>(max_epochs)));
  return epoch <= constant ? opt.lr : opt.lr * opt.lr_drop_factor;
}

template <typename Scalar>
TrainResult train(const RunConfig& config, Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                  const std::vector<std::int32_t>& labels, const Fold& fold, Rng& rng) {
  if (fold.train.empty()) throw PreconditionError("train: empty training split");
  const auto& oc = config.optimizer;
  auto params = model.trainable_parameters();
  std::optional<Adadelta<Scalar>> adadelta;
  std::optional<SgdMomentum<Scalar>> sgd;
  if (oc.kind == OptimizerKind::Adadelta) {
    adadelta.emplace(params, AdadeltaOptions{oc.lr, oc.rho, oc.epsilon, oc.weight_decay});
  } else {
    sgd.emplace(params, SgdMomentumOptions{oc.lr, oc.momentum, oc.weight_decay});
  }

  Rng shuffle = rng.stream("shuffle");
  Rng drop = rng.stream("dropout");
  std::vector<std::size_t> order = fold.train;
  std::vector<Matrix<Scalar>> best;
  auto snapshot = [&] {
    best.clear();
    for (auto& p : params) best.push_back(p.value());
  };
  snapshot();

  TrainResult result;
  Index bad = 0;
  bool first = true;
  const auto bs = static_cast<std::size_t>(oc.batch_size);
  for (Index epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const double lr = scheduled_lr(oc, epoch, config.max_epochs);
    if (adadelta) adadelta->options().lr = lr;
    if (sgd) sgd->set_lr(lr);
    shuffle.shuffle(std::span<std::size_t>(order));

    double loss_sum = 0.0;
    int batch_no = 0;
    for (std::size_t start = 0; start < order.size(); start += bs, ++batch_no) {
      std::span<const std::size_t> chunk(order.data() + start, std::min(bs, order.size() - start));
      std::vector<std::int32_t> y;
      y.reserve(chunk.size());
      for (std::size_t i : chunk) y.push_back(labels[i]);
      if (adadelta) adadelta->zero_grad();
      if (sgd) sgd->zero_grad();
      Tensor<Scalar> loss;
      try {
        loss = softmax_cross_entropy(model.forward(make_batch(sentences, chunk, model.min_length()), true, &drop), y);
        if (!std::isfinite(static_cast<double>(loss.item()))) throw NumericError("non-finite loss");
        backward(loss);
      } catch (const NumericError& e) {
        throw DivergenceError(static_cast<int>(epoch), batch_no,
                              "training diverged at epoch " + std::to_string(epoch) + ", batch " +
                                  std::to_string(batch_no) + ": " + e.what());
      }
      if (adadelta) adadelta->step();
      if (sgd) sgd->step();
      for (const auto& p : params) {
        if (!p.value().allFinite()) {
          throw DivergenceError(static_cast<int>(epoch), batch_no,
                                "training diverged at epoch " + std::to_string(epoch) + ", batch " +
                                    std::to_string(batch_no) + ": non-finite parameters after update");
        }
      }
      loss_sum += static_cast<double>(loss.item()) * static_cast<double>(chunk.size());
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = lr;
    rec.train_loss = loss_sum / static_cast<double>(order.size());
    try {
      rec.train_accuracy = evaluate(model, sentences, labels, fold.train, config.eval_batch_size).accuracy;
      if (!fold.dev.empty()) {
        rec.dev_accuracy = evaluate(model, sentences, labels, fold.dev, config.eval_batch_size).accuracy;
      }
    } catch (const NumericError& e) {
      // Blamed on the epoch's last update.
      throw DivergenceError(static_cast<int>(epoch), batch_no - 1,
                            "training diverged at epoch " + std::to_string(epoch) + ", batch " +
                                std::to_string(batch_no - 1) + " (seen in evaluation): " + e.what());
    }
    const double metric = rec.dev_accuracy.value_or(rec.train_accuracy);
    if (first || metric > result.best_metric) {
      first = false;
      result.best_metric = metric;
      result.best_epoch = epoch;
      bad = 0;
      snapshot();
    } else {
      ++bad;
    }
    result.epochs.push_back(rec);
    if (config.stop_at_train_accuracy && rec.train_accuracy >= *config.stop_at_train_accuracy) {
      result.stopped_early = epoch < config.max_epochs;
      break;
    }
    if (bad > config.patience) {
      result.stopped_early = epoch < config.max_epochs;
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i].mutable_value() = best[i];
  return result;
}

ordered_json to_json(const TrainResult& r) {
  ordered_json j;
  ordered_json epochs = ordered_json::array();
  for (const auto& e : r.epochs) {
    ordered_json x;
    x["epoch"] = e.epoch;
    x["lr"] = e.lr;
    x["train_loss"] = e.train_loss;
    x["train_accuracy"] = e.train_accuracy;
    x["dev_accuracy"] = e.dev_accuracy ? ordered_json(*e.dev_accuracy) : ordered_json();
    epochs.push_back(std::move(x));
  }
  j["epochs"] = std::move(epochs);
  j["best_epoch"] = r.best_epoch;
  j["best_metric"] = r.best_metric;
  j["stopped_early"] = r.stopped_early;
  return j;
}

ordered_json to_json(const EvalResult& r) {
  ordered_json j;
  j["accuracy"] = r.accuracy;
  j["count"] = r.count;
  j["confusion"] = r.confusion;
  return j;
}

template <typename Scalar>
Experiment<Scalar> run_experiment(const RunConfig& config, const fs::path& root) {
  const auto t0 = std::chrono::steady_clock::now();
  PreparedData data = prepare_data(config.data, config.seed, root);
  Rng master(config.seed);

  Experiment<Scalar> ex;
  ordered_json& report = ex.report;
  report["config"] = to_json(config);
  ordered_json d;
  d["name"] = data.dataset.name;
  d["sentences"] = data.dataset.size();
  d["classes"] = data.dataset.num_classes;
  d["vocab"] = data.vocab.size();
  d["rejects"] = data.dataset.rejects.size();
  d["folds"] = data.folds.size();
  d["tokenizer_version"] = kTokenizerVersion;
  report["data"] = std::move(d);

  ordered_json runs = ordered_json::array();
  std::vector<double> test_acc, final_train_acc;
  for (std::size_t k = 0; k < data.folds.size(); ++k) {
    const Fold& fold = data.folds[k];
    Rng fold_rng = master.stream("run" + std::to_string(k));
    Rng emb_rng = fold_rng.stream("embeddings");
    EmbeddingMatrix<Scalar> emb;
    if (config.data.embeddings.empty()) {
      emb = random_embeddings<Scalar>(data.vocab, config.model.embedding_dim, emb_rng);
    } else {
      fs::path p = config.data.embeddings;
      if (p.is_relative() && !fs::exists(p)) p = root / p;
      emb = load_word2vec_binary<Scalar>(p, data.vocab, config.model.embedding_dim, emb_rng);
    }
    Rng init = fold_rng.stream("init");
    ex.model.reset();
    ex.model.emplace(config.model, data.dataset.num_classes, std::move(emb.values), init);
    Rng train_rng = fold_rng.stream("train");
    TrainResult tr = train(config, *ex.model, data.indexed, data.dataset.labels, fold, train_rng);

    ordered_json run;
    run["fold"] = k;
    run["train_size"] = fold.train.size();
    run["dev_size"] = fold.dev.size();
    run["test_size"] = fold.test.size();
    run["embeddings"] = {
        {"pretrained", std::count(emb.source.begin(), emb.source.end(), RowSource::Pretrained)},
        {"random", std::count(emb.source.begin(), emb.source.end(), RowSource::Random)}};
    run["training"] = to_json(tr);
    const double train_acc =
        evaluate(*ex.model, data.indexed, data.dataset.labels, fold.train, config.eval_batch_size).accuracy;
    run["final_train_accuracy"] = train_acc;
    final_train_acc.push_back(train_acc);
    if (!fold.test.empty()) {
      const auto te = evaluate(*ex.model, data.indexed, data.dataset.labels, fold.test, config.eval_batch_size);
      run["test"] = to_json(te);
      test_acc.push_back(te.accuracy);
    } else {
      run["test"] = nullptr;
    }
    runs.push_back(std::move(run));
  }
  ordered_json params;
  params["total"] = ex.model->count_parameters(true);
  params["non_embedding"] = ex.model->count_parameters(false);
  report["parameters"] = std::move(params);
  report["runs"] = std::move(runs);
  ordered_json summary;
  const auto tr = mean_std(final_train_acc);
  summary["train_accuracy"] = tr.mean;
  if (!test_acc.empty()) {
    const auto ms = mean_std(test_acc);
    summary["test_accuracy"] = ms.mean;
    summary["test_accuracy_std"] = ms.std;
  } else {
    summary["test_accuracy"] = nullptr;
    summary["test_accuracy_std"] = nullptr;
  }
  report["summary"] = std::move(summary);
  if (config.record_timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["metadata"] = {{"wall_time_seconds", secs}};
  }
  ex.vocab = std::move(data.vocab);
  return ex;
}

ProbeReport correlate_similarities(std::vector<double> similarities, std::vector<int> scores) {
  ProbeReport r;
  r.pairs = similarities.size();
  std::vector<double> neg, raw;
  for (int s : scores) {
    neg.push_back(-static_cast<double>(s));
    raw.push_back(static_cast<double>(s));
  }
  try {
    r.pearson = pearson(similarities, neg);
    r.spearman = spearman(similarities, neg);
    r.pearson_raw = pearson(similarities, raw);
    r.spearman_raw = spearman(similarities, raw);
  } catch (const UndefinedError&) {
    r.pearson.reset();
    r.spearman.reset();
    r.pearson_raw.reset();
    r.spearman_raw.reset();
    r.condition = "constant input: correlation undefined";
  } catch (const PreconditionError&) {
    r.condition = "fewer than 3 pairs: correlation undefined";
  }
  r.similarities = std::move(similarities);
  r.scores = std::move(scores);
  return r;
}

ordered_json to_json(const ProbeReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(); };
  ordered_json j;
  j["pairs"] = r.pairs;
  j["pearson"] = opt(r.pearson);
  j["spearman"] = opt(r.spearman);
  j["pearson_raw"] = opt(r.pearson_raw);
  j["spearman_raw"] = opt(r.spearman_raw);
  j["condition"] = r.condition;
  j["orientation"] = "similarity vs negated score";
  j["similarities"] = r.similarities;
  j["scores"] = r.scores;
  return j;
}

namespace {

template <typename Scalar>
Matrix<double> represent_all(const Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                             const std::vector<std::size_t>& indices, std::size_t batch = 256) {
  Matrix<double> out(static_cast<Index>(indices.size()), model.representation_dim());
  for (std::size_t start = 0; start < indices.size(); start += batch) {
    std::span<const std::size_t> chunk(indices.data() + start, std::min(batch, indices.size() - start));
    out.middleRows(static_cast<Index>(start), static_cast<Index>(chunk.size())) =
        model.represent(make_batch(sentences, chunk, model.min_length())).value().template cast<double>();
  }
  return out;
}

IndexedSentence index_tokens(const Tokens& t, const Vocab& vocab) {
  IndexedSentence s;
  for (const auto& w : t) s.push_back(vocab.index(w));
  return s;
}

}  // namespace

template <typename Scalar>
ProbeReport symmetry_probe(const Model<Scalar>& model, const Vocab& vocab, const SentencePairSet& pairs) {
  std::vector<IndexedSentence> first, second;
  std::vector<int> scores;
  for (const auto& p : pairs.pairs) {
    first.push_back(index_tokens(p.first_tokens, vocab));
    second.push_back(index_tokens(p.second_tokens, vocab));
    scores.push_back(p.score);
  }
  std::vector<std::size_t> idx(first.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  const Matrix<double> a = represent_all(model, first, idx);
  const Matrix<double> b = represent_all(model, second, idx);
  std::vector<double> sims;
  for (Index i = 0; i < a.rows(); ++i) {
    sims.push_back(cosine_similarity(std::span<const double>(a.row(i).data(), static_cast<std::size_t>(a.cols())),
                                     std::span<const double>(b.row(i).data(), static_cast<std::size_t>(b.cols()))));
  }
  return correlate_similarities(std::move(sims), std::move(scores));
}

template <typename Scalar>
void export_representations(const Model<Scalar>& model, const std::vector<IndexedSentence>& sentences,
                            const std::vector<std::int32_t>& labels, const std::vector<std::size_t>& indices,
                            const fs::path& path) {
  const Matrix<double> reps = represent_all(model, sentences, indices);
  std::string out = "id,label";
  for (Index c = 0; c < reps.cols(); ++c) out += ",v_" + std::to_string(c);
  out += '\n';
  char buf[32];
  for (Index r = 0; r < reps.rows(); ++r) {
    const double norm = reps.row(r).norm();
    const std::size_t id = indices[static_cast<std::size_t>(r)];
    out += std::to_string(id) + "," + std::to_string(labels[id]);
    for (Index c = 0; c < reps.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.9g", norm > 0.0 ? reps(r, c) / norm : 0.0);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

ordered_json parameter_parity(const ModelConfig& base, Index num_classes, const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionError("parameter_parity: empty multiplier grid");
  auto count = [&](Architecture a, double mult) {
    ModelConfig c = base;
    c.architecture = a;
    c.channel_multiplier = mult;
    Rng rng(0);
    Model<float> m(c, num_classes, Matrix<float>::Zero(2, c.embedding_dim), rng);
    return m.count_parameters(false);
  };
  const Index lie = count(Architecture::Dpclie, 1.0);
  const Index plain = count(Architecture::Dpcnn, 1.0);
  ordered_json j;
  j["dpclie"] = lie;
  j["dpcnn"] = plain;
  j["ratio_dpclie_over_dpcnn"] = static_cast<double>(lie) / static_cast<double>(plain);
  ordered_json rows = ordered_json::array();
  double best_gap = 0.0, best_mult = 0.0;
  Index best_count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = count(Architecture::Dpcnn, grid[i]);
    const double gap = std::abs(static_cast<double>(n - lie)) / static_cast<double>(lie);
    rows.push_back({{"multiplier", grid[i]}, {"dpcnn", n}, {"relative_gap", gap}});
    if (i == 0 || gap < best_gap) {
      best_gap = gap;
      best_mult = grid[i];
      best_count = n;
    }
  }
  j["grid"] = std::move(rows);
  j["closest"] = {{"multiplier", best_mult}, {"dpcnn", best_count}, {"relative_gap", best_gap}};
  j["within_10_percent"] = best_gap <= 0.10;
  return j;
}

ordered_json parameter_control(const RunConfig& config, const fs::path& root) {
  PreparedData probe = prepare_data(config.data, config.seed, root);
  ordered_json parity = parameter_parity(config.model, probe.dataset.num_classes);
  ordered_json j;
  j["parity"] = parity;
  auto run = [&](Architecture a, double mult) {
    RunConfig c = config;
    c.model.architecture = a;
    c.model.channel_multiplier = mult;
    c.optimizer = default_optimizer(a);
    c.optimizer.batch_size = config.optimizer.batch_size;
    c.record_timing = false;
    auto ex = c.precision == Precision::F64 ? run_experiment<double>(c, root).report
                                            : run_experiment<float>(c, root).report;
    ordered_json r;
    r["architecture"] = architecture_name(a);
    r["channel_multiplier"] = mult;
    r["parameters"] = ex["parameters"];
    r["summary"] = ex["summary"];
    return r;
  };
  const double mult = parity["closest"]["multiplier"].get<double>();
  j["dpclie"] = run(Architecture::Dpclie, 1.0);
  j["dpcnn"] = run(Architecture::Dpcnn, mult);
  auto acc = [](const ordered_json& r) {
    const auto& s = r["summary"];
    return s["test_accuracy"].is_null() ? s["train_accuracy"].get<double>() : s["test_accuracy"].get<double>();
  };
  j["metric"] = j["dpclie"]["summary"]["test_accuracy"].is_null() ? "train_accuracy" : "test_accuracy";
  j["accuracy_delta"] = acc(j["dpclie"]) - acc(j["dpcnn"]);
  return j;
}

#define LIETEXT_INSTANTIATE_HARNESS(S)                                                                        \
  template EvalResult evaluate(const Model<S>&, const std::vector<IndexedSentence>&,                         \
                               const std::vector<std::int32_t>&, const std::vector<std::size_t>&, Index);    \
  template TrainResult train(const RunConfig&, Model<S>&, const std::vector<IndexedSentence>&,                \
                             const std::vector<std::int32_t>&, const Fold&, Rng&);                            \
  template Experiment<S> run_experiment(const RunConfig&, const fs::path&);                                   \
  template ProbeReport symmetry_probe(const Model<S>&, const Vocab&, const SentencePairSet&);                \
  template void export_representations(const Model<S>&, const std::vector<IndexedSentence>&,                 \
                                       const std::vector<std::int32_t>&, const std::vector<std::size_t>&,    \
                                       const fs::path&);

LIETEXT_INSTANTIATE_HARNESS(float)
LIETEXT_INSTANTIATE_HARNESS(double)

}  // namespace lietext
