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

#include "arousal/model/model_io.hpp"

#include <fstream>
#include <iomanip>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"

namespace arousal::model {
namespace {

template <typename P, typename F>
void visit_serialized(P& p, F&& f) {
  for (std::size_t l = 0; l < p.lstm.size(); ++l) {
    f(p.lstm[l].W.flat());
    f(p.lstm[l].U.flat());
    f(std::span(p.lstm[l].b));
    if (l < p.bn.size()) {
      f(std::span(p.bn[l].gamma));
      f(std::span(p.bn[l].beta));
      f(std::span(p.bn[l].running_mean));
      f(std::span(p.bn[l].running_var));
    }
  }
  f(p.dense_w.flat());
  f(std::span(p.dense_b));
}

}  // namespace

void save_model(const Model& model, const ModelMeta& meta, const std::filesystem::path& dir) {
  io::ensure_directory(dir);
  const ModelConfig& c = model.config;
  io::Json doc;
  doc["format_version"] = io::kFormatVersion;
  doc["config"] = {{"input_dim", c.input_dim},     {"hidden_units", c.hidden_units},
                   {"n_layers", c.n_layers},       {"n_classes", c.n_classes},
                   {"bn_eps", c.bn_eps},           {"bn_momentum", c.bn_momentum},
                   {"seed", c.seed}};
  doc["epoch"] = meta.epoch;
  doc["val_loss"] = meta.val_loss;
  doc["seed"] = meta.seed;
  doc["parameter_count"] = parameter_count(model.params);
  io::write_json(dir / "model.json", doc);

  std::vector<double> flat;
  visit_serialized(model.params, [&](auto values) { flat.insert(flat.end(), values.begin(), values.end()); });
  io::write_f64(dir / "model.dat", flat);
}

Model load_model(const std::filesystem::path& dir, ModelMeta* meta) {
  const auto header = dir / "model.json";
  const io::Json doc = io::read_json(header);
  io::check_format_version(doc, header);
  ModelConfig c;
  ModelMeta m;
  try {
    const auto& cfg = doc.at("config");
    c.input_dim = cfg.at("input_dim").get<std::size_t>();
    c.hidden_units = cfg.at("hidden_units").get<std::size_t>();
    c.n_layers = cfg.at("n_layers").get<std::size_t>();
    c.n_classes = cfg.at("n_classes").get<std::size_t>();
    c.bn_eps = cfg.at("bn_eps").get<double>();
    c.bn_momentum = cfg.at("bn_momentum").get<double>();
    c.seed = cfg.at("seed").get<std::uint64_t>();
    m.epoch = doc.at("epoch").get<std::size_t>();
    m.val_loss = doc.at("val_loss").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, header.string() + ": " + e.what());
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::kHeader, header.string() + ": " + e.what());
  }

  Model model = make_model(c);
  std::size_t total = 0;
  visit_serialized(model.params, [&](auto values) { total += values.size(); });
  const auto flat = io::read_f64(dir / "model.dat", total);
  std::size_t pos = 0;
  visit_serialized(model.params, [&](auto values) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), values.size(), values.begin());
    pos += values.size();
  });
  if (meta) *meta = m;
  return model;
}

void save_history(std::span<const EpochRecord> history, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + file.string() + " for writing");
  out << "epoch,train_loss,val_loss\n" << std::setprecision(17);
  for (const auto& r : history) out << r.epoch << ',' << r.train_loss << ',' << r.val_loss << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + file.string());
}

}  // namespace arousal::model
