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

#include "lietext/config.hpp"

#include <fstream>
#include <sstream>

#include "lietext/errors.hpp"

namespace lietext {

using nlohmann::json;
using nlohmann::ordered_json;

OptimizerConfig default_optimizer(Architecture a) {
  OptimizerConfig o;
  if (a == Architecture::Dpcnn || a == Architecture::Dpclie) {
    o.kind = OptimizerKind::Sgd;
    o.lr = 0.1;
    o.weight_decay = 1e-4;
    o.batch_size = a == Architecture::Dpcnn ? 100 : 64;
  }
  return o;
}

namespace {

const char* kind_name(OptimizerKind k) { return k == OptimizerKind::Adadelta ? "adadelta" : "sgd"; }

const char* split_name(SplitPolicy s) {
  switch (s) {
    case SplitPolicy::Auto: return "auto";
    case SplitPolicy::None: return "none";
    case SplitPolicy::Standard: return "standard";
    case SplitPolicy::Cv10: return "cv10";
  }
  return "?";
}

double number(const json& v, const std::string& p) {
  if (!v.is_number()) throw ConfigError(p, "expected a number");
  return v.get<double>();
}

double positive(const json& v, const std::string& p) {
  const double x = number(v, p);
  if (!(x > 0.0)) throw ConfigError(p, "must be > 0");
  return x;
}

double unit_open(const json& v, const std::string& p) {
  const double x = number(v, p);
  if (!(x > 0.0 && x < 1.0)) throw ConfigError(p, "must lie in (0, 1)");
  return x;
}

std::int64_t integer(const json& v, const std::string& p, std::int64_t minimum) {
  if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < minimum) throw ConfigError(p, "must be >= " + std::to_string(minimum));
  return x;
}

std::string string(const json& v, const std::string& p) {
  if (!v.is_string()) throw ConfigError(p, "expected a string");
  return v.get<std::string>();
}

void require_object(const json& v, const std::string& p) {
  if (!v.is_object()) throw ConfigError(p, "expected an object");
}

OptimizerConfig optimizer_from_json(const json& j, Architecture a) {
  require_object(j, "/optimizer");
  OptimizerConfig o = default_optimizer(a);
  if (j.contains("kind")) {
    const auto k = string(j["kind"], "/optimizer/kind");
    OptimizerKind kind;
    if (k == "adadelta") kind = OptimizerKind::Adadelta;
    else if (k == "sgd") kind = OptimizerKind::Sgd;
    else throw ConfigError("/optimizer/kind", "expected adadelta or sgd");
    if (kind != o.kind) {
      const Index batch = o.batch_size;
      o = default_optimizer(kind == OptimizerKind::Sgd ? Architecture::Dpcnn : Architecture::Scnn);
      o.batch_size = batch;
    }
  }
  for (const auto& [key, v] : j.items()) {
    const std::string p = "/optimizer/" + key;
    if (key == "kind") continue;
    if (key == "lr") o.lr = positive(v, p);
    else if (key == "rho") o.rho = unit_open(v, p);
    else if (key == "epsilon") o.epsilon = positive(v, p);
    else if (key == "momentum") {
      o.momentum = number(v, p);
      if (!(o.momentum >= 0.0 && o.momentum < 1.0)) throw ConfigError(p, "must lie in [0, 1)");
    } else if (key == "weight_decay") {
      o.weight_decay = number(v, p);
      if (!(o.weight_decay >= 0.0)) throw ConfigError(p, "must be >= 0");
    } else if (key == "batch_size") o.batch_size = static_cast<Index>(integer(v, p, 1));
    else if (key == "lr_drop_fraction") o.lr_drop_fraction = unit_open(v, p);
    else if (key == "lr_drop_factor") o.lr_drop_factor = positive(v, p);
    else throw ConfigError(p, "unknown key");
  }
  return o;
}

DataConfig data_from_json(const json& j) {
  require_object(j, "/data");
  DataConfig d;
  for (const auto& [key, v] : j.items()) {
    const std::string p = "/data/" + key;
    if (key == "name") d.name = string(v, p);
    else if (key == "format") d.format = string(v, p);
    else if (key == "train") d.train = string(v, p);
    else if (key == "dev") d.dev = string(v, p);
    else if (key == "test") d.test = string(v, p);
    else if (key == "split") {
      const auto s = string(v, p);
      if (s == "auto") d.split = SplitPolicy::Auto;
      else if (s == "none") d.split = SplitPolicy::None;
      else if (s == "standard") d.split = SplitPolicy::Standard;
      else if (s == "cv10") d.split = SplitPolicy::Cv10;
      else throw ConfigError(p, "expected auto, none, standard or cv10");
    } else if (key == "fold") {
      d.fold = static_cast<int>(integer(v, p, -1));
      if (d.fold > 9) throw ConfigError(p, "must be -1 or a fold in 0..9");
    } else if (key == "dev_fraction") d.dev_fraction = unit_open(v, p);
    else if (key == "embeddings") d.embeddings = string(v, p);
    else throw ConfigError(p, "unknown key");
  }
  return d;
}

}  // namespace

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["model"] = to_json(c.model);
  ordered_json d;
  d["name"] = c.data.name;
  d["format"] = c.data.format;
  d["train"] = c.data.train;
  d["dev"] = c.data.dev;
  d["test"] = c.data.test;
  d["split"] = split_name(c.data.split);
  d["fold"] = c.data.fold;
  d["dev_fraction"] = c.data.dev_fraction;
  d["embeddings"] = c.data.embeddings;
  j["data"] = d;
  ordered_json o;
  o["kind"] = kind_name(c.optimizer.kind);
  o["lr"] = c.optimizer.lr;
  o["rho"] = c.optimizer.rho;
  o["epsilon"] = c.optimizer.epsilon;
  o["momentum"] = c.optimizer.momentum;
  o["weight_decay"] = c.optimizer.weight_decay;
  o["batch_size"] = c.optimizer.batch_size;
  o["lr_drop_fraction"] = c.optimizer.lr_drop_fraction;
  o["lr_drop_factor"] = c.optimizer.lr_drop_factor;
  j["optimizer"] = o;
  j["max_epochs"] = c.max_epochs;
  j["patience"] = c.patience;
  j["seed"] = c.seed;
  j["stop_at_train_accuracy"] = c.stop_at_train_accuracy ? ordered_json(*c.stop_at_train_accuracy) : ordered_json();
  j["eval_batch_size"] = c.eval_batch_size;
  j["precision"] = c.precision == Precision::F32 ? "f32" : "f64";
  j["record_timing"] = c.record_timing;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  require_object(j, "");
  RunConfig c;
  if (j.contains("model")) c.model = model_config_from_json(j["model"], "/model");
  c.optimizer = default_optimizer(c.model.architecture);
  for (const auto& [key, v] : j.items()) {
    const std::string p = "/" + key;
    if (key == "model") continue;
    if (key == "data") c.data = data_from_json(v);
    else if (key == "optimizer") c.optimizer = optimizer_from_json(v, c.model.architecture);
    else if (key == "max_epochs") c.max_epochs = static_cast<Index>(integer(v, p, 1));
    else if (key == "patience") c.patience = static_cast<Index>(integer(v, p, 0));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(integer(v, p, 0));
    else if (key == "stop_at_train_accuracy") {
      if (v.is_null()) {
        c.stop_at_train_accuracy.reset();
      } else {
        const double x = number(v, p);
        if (!(x > 0.0 && x <= 1.0)) throw ConfigError(p, "must lie in (0, 1]");
        c.stop_at_train_accuracy = x;
      }
    } else if (key == "eval_batch_size") c.eval_batch_size = static_cast<Index>(integer(v, p, 1));
    else if (key == "precision") {
      const auto s = string(v, p);
      if (s == "f32") c.precision = Precision::F32;
      else if (s == "f64") c.precision = Precision::F64;
      else throw ConfigError(p, "expected f32 or f64");
    } else if (key == "record_timing") {
      if (!v.is_boolean()) throw ConfigError(p, "expected a boolean");
      c.record_timing = v.get<bool>();
    } else {
      throw ConfigError(p, "unknown key");
    }
  }
  return c;
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("", "override '" + assignment + "' must look like key.path=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &j;
  std::string pointer;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError(pointer, "empty key in override '" + assignment + "'");
    pointer += "/" + key;
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigError(pointer, "override descends into a non-object");
      *node = json::object();
    }
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config " + path.string());
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      throw ConfigError("", path.string() + " is not valid JSON: " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(j, o);
  return run_config_from_json(j);
}

}  // namespace lietext
