// Copyright 2026 The Arousal Scattering Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arousal/cli/config.hpp"

#include <set>

#include "arousal/core/errors.hpp"
#include "arousal/data/channels.hpp"

namespace arousal::cli {
namespace {

using io::Json;

void reject_unknown(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::kConfig, where + " must be a JSON object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw Error(ErrorKind::kConfig, "unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const Json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kConfig, where + "." + key + ": " + e.what());
  }
}

}  // namespace

PipelineConfig default_config() {
  PipelineConfig c;
  c.train.max_length = 256;
  c.train.learning_rate = 1e-3;
  for (const auto& g : data::default_channel_groups()) c.ablation.groups.push_back(g.name);
  return c;
}

PipelineConfig config_from_json(const Json& doc) {
  PipelineConfig c = default_config();
  reject_unknown(doc, {"seed", "jobs", "filterbank", "model", "train", "synth", "normalizer",
                       "ablation", "paths"},
                 "config");
  read(doc, "seed", c.seed, "config");
  read(doc, "jobs", c.jobs, "config");

  if (doc.contains("filterbank")) {
    const Json& f = doc.at("filterbank");
    const std::string w = "filterbank";
    reject_unknown(f, {"fs", "n_fft", "J", "Q", "m_max", "T", "p", "include_order0"}, w);
    read(f, "fs", c.filterbank.fs, w);
    read(f, "n_fft", c.filterbank.n_fft, w);
    read(f, "J", c.filterbank.J, w);
    read(f, "Q", c.filterbank.Q, w);
    read(f, "m_max", c.filterbank.m_max, w);
    read(f, "T", c.filterbank.T, w);
    read(f, "p", c.filterbank.p, w);
    read(f, "include_order0", c.filterbank.include_order0, w);
  }
  if (doc.contains("model")) {
    const Json& m = doc.at("model");
    const std::string w = "model";
    reject_unknown(m, {"hidden_units", "n_layers", "bn_eps", "bn_momentum"}, w);
    read(m, "hidden_units", c.model.hidden_units, w);
    read(m, "n_layers", c.model.n_layers, w);
    read(m, "bn_eps", c.model.bn_eps, w);
    read(m, "bn_momentum", c.model.bn_momentum, w);
  }
  if (doc.contains("train")) {
    const Json& t = doc.at("train");
    const std::string w = "train";
    reject_unknown(t, {"learning_rate", "rmsprop_decay", "rmsprop_eps", "class_weights",
                       "auto_class_weight", "patience", "max_epochs", "batch_size", "max_length"},
                   w);
    read(t, "learning_rate", c.train.learning_rate, w);
    read(t, "rmsprop_decay", c.train.rmsprop_decay, w);
    read(t, "rmsprop_eps", c.train.rmsprop_eps, w);
    read(t, "class_weights", c.train.class_weights.w, w);
    read(t, "auto_class_weight", c.auto_class_weight, w);
    read(t, "patience", c.train.patience, w);
    read(t, "max_epochs", c.train.max_epochs, w);
    read(t, "batch_size", c.train.batch_size, w);
    read(t, "max_length", c.train.max_length, w);
  }
  if (doc.contains("synth")) {
    const Json& s = doc.at("synth");
    const std::string w = "synth";
    reject_unknown(s, {"n_records", "duration_s", "fs", "prevalence", "event_min_s", "event_max_s",
                       "id_prefix"},
                   w);
    read(s, "n_records", c.synth.n_records, w);
    read(s, "duration_s", c.synth.duration_s, w);
    read(s, "fs", c.synth.fs, w);
    read(s, "prevalence", c.synth.prevalence, w);
    read(s, "event_min_s", c.synth.event_min_s, w);
    read(s, "event_max_s", c.synth.event_max_s, w);
    read(s, "id_prefix", c.synth.id_prefix, w);
  }
  if (doc.contains("normalizer")) {
    const Json& n = doc.at("normalizer");
    reject_unknown(n, {"mu", "eps"}, "normalizer");
    read(n, "mu", c.mu, "normalizer");
    read(n, "eps", c.normalizer_eps, "normalizer");
  }
  if (doc.contains("ablation")) {
    const Json& a = doc.at("ablation");
    reject_unknown(a, {"groups", "fold", "split"}, "ablation");
    read(a, "groups", c.ablation.groups, "ablation");
    read(a, "fold", c.ablation.fold, "ablation");
    read(a, "split", c.ablation.split, "ablation");
  }
  if (doc.contains("paths")) {
    const Json& p = doc.at("paths");
    reject_unknown(p, {"records", "features", "index", "predictions", "mu"}, "paths");
    read(p, "records", c.paths.records, "paths");
    read(p, "features", c.paths.features, "paths");
    read(p, "index", c.paths.index, "paths");
    read(p, "predictions", c.paths.predictions, "paths");
    read(p, "mu", c.paths.mu, "paths");
  }
  validate(c);
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  Json doc;
  doc["seed"] = c.seed;
  doc["jobs"] = c.jobs;
  doc["filterbank"] = {{"fs", c.filterbank.fs},       {"n_fft", c.filterbank.n_fft},
                       {"J", c.filterbank.J},         {"Q", c.filterbank.Q},
                       {"m_max", c.filterbank.m_max}, {"T", c.filterbank.T},
                       {"p", c.filterbank.p},         {"include_order0", c.filterbank.include_order0}};
  doc["model"] = {{"hidden_units", c.model.hidden_units},
                  {"n_layers", c.model.n_layers},
                  {"bn_eps", c.model.bn_eps},
                  {"bn_momentum", c.model.bn_momentum}};
  doc["train"] = {{"learning_rate", c.train.learning_rate},
                  {"rmsprop_decay", c.train.rmsprop_decay},
                  {"rmsprop_eps", c.train.rmsprop_eps},
                  {"class_weights", c.train.class_weights.w},
                  {"auto_class_weight", c.auto_class_weight},
                  {"patience", c.train.patience},
                  {"max_epochs", c.train.max_epochs},
                  {"batch_size", c.train.batch_size},
                  {"max_length", c.train.max_length}};
  doc["synth"] = {{"n_records", c.synth.n_records},     {"duration_s", c.synth.duration_s},
                  {"fs", c.synth.fs},                   {"prevalence", c.synth.prevalence},
                  {"event_min_s", c.synth.event_min_s}, {"event_max_s", c.synth.event_max_s},
                  {"id_prefix", c.synth.id_prefix}};
  doc["normalizer"] = {{"mu", c.mu}, {"eps", c.normalizer_eps}};
  doc["ablation"] = {{"groups", c.ablation.groups}, {"fold", c.ablation.fold},
                     {"split", c.ablation.split}};
  doc["paths"] = {{"records", c.paths.records},         {"features", c.paths.features},
                  {"index", c.paths.index},             {"predictions", c.paths.predictions},
                  {"mu", c.paths.mu}};
  return doc;
}

PipelineConfig load_config(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file))
    throw Error(ErrorKind::kIo, "config file not found: " + file.string());
  return config_from_json(io::read_json(file));
}

void validate(const PipelineConfig& c) {
  filterbank::validate(c.filterbank);
  model::ModelConfig m = c.model;
  if (m.input_dim == 0) m.input_dim = 1;
  m.validate();
  c.train.validate();
  c.synth.validate();
  if (!(c.normalizer_eps > 0.0)) throw Error(ErrorKind::kConfig, "normalizer.eps must be > 0");
  for (double v : c.mu)
    if (!(v > 0.0)) throw Error(ErrorKind::kConfig, "normalizer.mu values must be > 0");
  if (c.ablation.fold < 0 || c.ablation.fold > 9)
    throw Error(ErrorKind::kConfig, "ablation.fold must be in 0..9");
  if (c.ablation.split != "test" && c.ablation.split != "hot")
    throw Error(ErrorKind::kConfig, "ablation.split must be \"test\" or \"hot\"");
  if (c.ablation.groups.empty()) throw Error(ErrorKind::kConfig, "ablation.groups is empty");
  for (const auto& g : c.ablation.groups) (void)data::find_group(data::default_channel_groups(), g);
}

}  // namespace arousal::cli
