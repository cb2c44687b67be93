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

#include "lietext/cli.hpp"

#include <cstdio>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lietext/errors.hpp"
#include "lietext/harness.hpp"
#include "lietext/verify.hpp"

namespace lietext {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> overrides;
  std::string precision;
  bool fixture = false;
  std::string checkpoint;
  std::string model = "sclie";
  Index instances = 50;
  std::string pairs;
  bool all_scores = false;
  std::size_t sample = 200;
};

// Flag values override file values; --override entries come last.
RunConfig resolve_config(const Options& o) {
  std::vector<std::string> ov;
  if (o.fixture) ov.emplace_back("data.name=\"fixture\"");
  if (o.seed) ov.push_back("seed=" + std::to_string(*o.seed));
  if (!o.precision.empty()) ov.push_back("precision=\"" + o.precision + "\"");
  ov.insert(ov.end(), o.overrides.begin(), o.overrides.end());
  return load_config(o.config, ov);
}

void write_report(const Options& o, const ordered_json& j) {
  if (!o.out.empty()) write_file_atomic(o.out, j.dump(2) + "\n");
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
  return buf;
}

Checkpoint require_checkpoint(const Options& o) {
  if (o.checkpoint.empty()) throw ConfigError("--checkpoint", "a checkpoint file is required");
  return read_checkpoint(o.checkpoint);
}

template <typename Scalar>
int cmd_train(const Options& o, const RunConfig& config, std::ostream& out) {
  auto ex = run_experiment<Scalar>(config);
  write_report(o, ex.report);
  if (!o.checkpoint.empty()) save_checkpoint(o.checkpoint, *ex.model, ex.vocab.tokens());
  const ordered_json& r = ex.report;
  out << architecture_name(config.model.architecture) << " on " << r["data"]["name"].get<std::string>() << ": "
      << r["data"]["sentences"] << " sentences, " << r["data"]["folds"] << " fold(s), "
      << r["parameters"]["non_embedding"] << " non-embedding parameters\n";
  const ordered_json& s = r["summary"];
  if (!s["test_accuracy"].is_null()) {
    out << "test accuracy " << percent(s["test_accuracy"].get<double>()) << " (std "
        << percent(s["test_accuracy_std"].get<double>()) << ")\n";
  }
  out << "train accuracy " << percent(s["train_accuracy"].get<double>()) << "\n";
  return kExitOk;
}

// Data indexed with the checkpoint's vocabulary.
struct CheckpointData {
  PreparedData data;
  std::vector<IndexedSentence> indexed;
  Vocab vocab;
};

CheckpointData data_for(const Checkpoint& ck, const RunConfig& config) {
  CheckpointData c;
  c.data = prepare_data(config.data, config.seed);
  c.vocab = Vocab::from_tokens(ck.vocab);
  c.indexed = index_sentences(c.data.dataset, c.vocab);
  return c;
}

template <typename Scalar>
int cmd_eval(const Options& o, const RunConfig& config, std::ostream& out) {
  const Checkpoint ck = require_checkpoint(o);
  const Model<Scalar> model = model_from_checkpoint<Scalar>(ck);
  const CheckpointData cd = data_for(ck, config);
  if (cd.data.dataset.num_classes != model.num_classes()) {
    throw PreconditionError("dataset has " + std::to_string(cd.data.dataset.num_classes) +
                            " classes but the checkpoint has " + std::to_string(model.num_classes()));
  }
  std::vector<std::size_t> idx = cd.data.folds.at(0).test;
  std::string split = "test";
  if (idx.empty()) {
    split = "all";
    for (std::size_t i = 0; i < cd.data.dataset.size(); ++i) idx.push_back(i);
  }
  const auto r = evaluate(model, cd.indexed, cd.data.dataset.labels, idx, config.eval_batch_size);
  ordered_json j;
  j["split"] = split;
  j["evaluation"] = to_json(r);
  write_report(o, j);
  out << split << " accuracy " << percent(r.accuracy) << " over " << r.count << " sentences\n";
  return kExitOk;
}

template <typename Scalar>
int cmd_probe(const Options& o, const RunConfig& config, std::ostream& out) {
  const Checkpoint ck = require_checkpoint(o);
  const Model<Scalar> model = model_from_checkpoint<Scalar>(ck);
  fs::path pairs = o.pairs;
  if (pairs.empty()) pairs = o.fixture ? fixture_dir() / "sis_pairs.tsv" : data_dir() / "sis" / "pairs.tsv";
  const auto set = load_sis_pairs(pairs, !o.all_scores, o.sample, config.seed);
  for (const auto& w : set.warnings) out << "warning: " << w << "\n";
  const auto r = symmetry_probe(model, Vocab::from_tokens(ck.vocab), set);
  auto j = to_json(r);
  j["rejects"] = set.rejects.size();
  write_report(o, j);
  out << r.pairs << " pairs";
  if (r.pearson) {
    out << ", pearson " << std::setprecision(4) << *r.pearson << ", spearman " << *r.spearman << "\n";
  } else {
    out << ", " << r.condition << "\n";
  }
  return kExitOk;
}

template <typename Scalar>
int cmd_export(const Options& o, const RunConfig& config, std::ostream& out) {
  if (o.out.empty()) throw ConfigError("--out", "export-repr needs an output CSV path");
  const Checkpoint ck = require_checkpoint(o);
  const Model<Scalar> model = model_from_checkpoint<Scalar>(ck);
  const CheckpointData cd = data_for(ck, config);
  std::vector<std::size_t> idx(cd.data.dataset.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  export_representations(model, cd.indexed, cd.data.dataset.labels, idx, o.out);
  out << "wrote " << idx.size() << " rows of dimension " << model.representation_dim() << " to " << o.out << "\n";
  return kExitOk;
}

int cmd_gradcheck(const Options& o, std::ostream& out) {
  Architecture a;
  try {
    a = parse_architecture(o.model);
  } catch (const PreconditionError& e) {
    throw ConfigError("--model", e.what());
  }
  const std::uint64_t seed = o.seed.value_or(15);
  const bool f32 = o.precision == "f32";
  const auto r = f32 ? model_grad_check<float>(a, seed) : model_grad_check<double>(a, seed);
  const bool ok = r.max_relative_error < 1e-4;
  ordered_json j;
  j["model"] = o.model;
  j["precision"] = f32 ? "f32" : "f64";
  j["max_relative_error"] = r.max_relative_error;
  j["coordinates"] = r.coordinates;
  j["passed"] = ok;
  write_report(o, j);
  out << "max relative error " << std::setprecision(3) << std::scientific << r.max_relative_error << " over "
      << r.coordinates << " coordinates: " << (ok ? "ok" : "FAILED (threshold 1e-4)") << "\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_parity(const Options& o, std::ostream& out) {
  if (o.instances < 1) throw ConfigError("--instances", "must be at least 1");
  const auto r = lookup_parity(o.instances, o.seed.value_or(0));
  const bool ok = r.exact == r.instances;
  ordered_json j;
  j["instances"] = r.instances;
  j["exact"] = r.exact;
  j["max_abs_diff"] = r.max_abs_diff;
  j["passed"] = ok;
  write_report(o, j);
  out << r.exact << "/" << r.instances << " instances bitwise equal to conv1d_valid";
  if (!ok) out << ", max abs diff " << r.max_abs_diff;
  out << "\n";
  return ok ? kExitOk : kExitFailure;
}

int cmd_param_control(const Options& o, const RunConfig& config, std::ostream& out) {
  const auto j = parameter_control(config);
  write_report(o, j);
  const auto& p = j["parity"];
  out << "dpclie " << p["dpclie"] << " non-embedding parameters; closest dpcnn multiplier "
      << p["closest"]["multiplier"] << " has " << p["closest"]["dpcnn"] << " (gap "
      << percent(p["closest"]["relative_gap"].get<double>()) << ", "
      << (p["within_10_percent"].get<bool>() ? "within" : "outside") << " 10%)\n";
  const std::string metric = j["metric"].get<std::string>();
  out << metric << ": dpclie " << percent(j["dpclie"]["summary"][metric].get<double>()) << ", dpcnn "
      << percent(j["dpcnn"]["summary"][metric].get<double>()) << "\n";
  return kExitOk;
}

int cmd_manifest(const Options& o, std::ostream& out) {
  const auto m = fetch_manifest();
  write_report(o, m);
  out << m.dump(2) << "\n";
  return kExitOk;
}

template <typename Scalar>
int dispatch_model(const std::string& cmd, const Options& o, const RunConfig& c, std::ostream& out) {
  if (cmd == "train") return cmd_train<Scalar>(o, c, out);
  if (cmd == "eval") return cmd_eval<Scalar>(o, c, out);
  if (cmd == "probe") return cmd_probe<Scalar>(o, c, out);
  return cmd_export<Scalar>(o, c, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie group convolutions for sentence classification", "lietext"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", o.config, "JSON run configuration");
      sub->add_option("--override", o.overrides, "key.path=value applied after the config file")->take_all();
      sub->add_flag("--fixture", o.fixture, "use the shipped 64-sentence fixture");
    }
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out, "machine-readable output file");
    sub->add_option("--precision", o.precision, "f32 or f64")->check(CLI::IsMember({"f32", "f64"}));
  };

  auto* train = app.add_subcommand("train", "train a model and write a run report");
  add_common(train, true);
  train->add_option("--checkpoint", o.checkpoint, "write the trained model here");
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on the configured data");
  add_common(eval, true);
  eval->add_option("--checkpoint", o.checkpoint, "model checkpoint")->required();
  auto* probe = app.add_subcommand("probe", "symmetry probe on sentence pairs");
  add_common(probe, true);
  probe->add_option("--checkpoint", o.checkpoint, "model checkpoint")->required();
  probe->add_option("--pairs", o.pairs, "TSV of sentence pairs with 1-5 scores");
  probe->add_flag("--all-scores", o.all_scores, "keep every score instead of only 1 and 5");
  probe->add_option("--sample", o.sample, "pairs to keep after filtering");
  auto* exp = app.add_subcommand("export-repr", "write normalized sentence representations as CSV");
  add_common(exp, true);
  exp->add_option("--checkpoint", o.checkpoint, "model checkpoint")->required();
  auto* gc = app.add_subcommand("gradcheck", "finite-difference check of a tiny model");
  add_common(gc, false);
  gc->add_option("--model", o.model, "architecture");
  auto* par = app.add_subcommand("parity", "lookup-kernel Lie layer against conv1d");
  add_common(par, false);
  par->add_option("--instances", o.instances, "random instances");
  auto* pc = app.add_subcommand("param-control", "parameter-matched dpcnn against dpclie");
  add_common(pc, true);
  auto* man = app.add_subcommand("fetch-manifest", "print dataset sources and expected counts");
  add_common(man, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "gradcheck") return cmd_gradcheck(o, out);
    if (cmd == "parity") return cmd_parity(o, out);
    if (cmd == "fetch-manifest") return cmd_manifest(o, out);
    const RunConfig config = resolve_config(o);
    if (cmd == "param-control") return cmd_param_control(o, config, out);
    return config.precision == Precision::F64 ? dispatch_model<double>(cmd, o, config, out)
                                              : dispatch_model<float>(cmd, o, config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const DivergenceError& e) {
    err << "diverged: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lietext
