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

#include "arousal/model/params.hpp"

#include <cmath>

#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"

namespace arousal::model {

void ModelConfig::validate() const {
  if (input_dim < 1) throw Error(ErrorKind::kConfig, "model input_dim must be >= 1");
  if (hidden_units < 1) throw Error(ErrorKind::kConfig, "model hidden_units must be >= 1");
  if (n_layers < 1) throw Error(ErrorKind::kConfig, "model n_layers must be >= 1");
  if (n_classes != 3) throw Error(ErrorKind::kConfig, "model n_classes is fixed at 3");
  if (!(bn_eps > 0.0)) throw Error(ErrorKind::kConfig, "bn_eps must be positive");
  if (!(bn_momentum >= 0.0 && bn_momentum < 1.0))
    throw Error(ErrorKind::kConfig, "bn_momentum must lie in [0, 1)");
}

namespace {
void fill_uniform(std::span<double> v, Rng& rng, double k) {
  for (double& x : v) x = uniform(rng, -k, k);
}
}  // namespace

Model make_model(const ModelConfig& config) {
  config.validate();
  Model m;
  m.config = config;
  Rng rng(config.seed);
  const std::size_t H = config.hidden_units;
  std::size_t in = config.input_dim;
  for (std::size_t l = 0; l < config.n_layers; ++l) {
    LstmLayer layer{MatrixD(4 * H, in), MatrixD(4 * H, H), std::vector<double>(4 * H, 0.0)};
    fill_uniform(layer.W.flat(), rng, 1.0 / std::sqrt(static_cast<double>(in)));
    fill_uniform(layer.U.flat(), rng, 1.0 / std::sqrt(static_cast<double>(H)));
    for (std::size_t h = H; h < 2 * H; ++h) layer.b[h] = 1.0;
    m.params.lstm.push_back(std::move(layer));
    if (l + 1 < config.n_layers)
      m.params.bn.push_back({std::vector<double>(H, 1.0), std::vector<double>(H, 0.0),
                             std::vector<double>(H, 0.0), std::vector<double>(H, 1.0)});
    in = H;
  }
  m.params.dense_w = MatrixD(config.n_classes, H);
  fill_uniform(m.params.dense_w.flat(), rng, 1.0 / std::sqrt(static_cast<double>(H)));
  m.params.dense_b.assign(config.n_classes, 0.0);
  return m;
}

ModelParams zeros_like(const ModelParams& p) {
  ModelParams z;
  for (const auto& l : p.lstm)
    z.lstm.push_back({MatrixD(l.W.rows(), l.W.cols()), MatrixD(l.U.rows(), l.U.cols()),
                      std::vector<double>(l.b.size(), 0.0)});
  for (const auto& b : p.bn) {
    const std::size_t n = b.gamma.size();
    z.bn.push_back({std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                    std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});
  }
  z.dense_w = MatrixD(p.dense_w.rows(), p.dense_w.cols());
  z.dense_b.assign(p.dense_b.size(), 0.0);
  return z;
}

namespace {
template <typename P, typename T>
std::vector<NamedTensor<T>> collect(P& p) {
  std::vector<NamedTensor<T>> out;
  for (std::size_t l = 0; l < p.lstm.size(); ++l) {
    const std::string prefix = "lstm" + std::to_string(l + 1);
    out.push_back({prefix + ".W", p.lstm[l].W.flat()});
    out.push_back({prefix + ".U", p.lstm[l].U.flat()});
    out.push_back({prefix + ".b", std::span<T>(p.lstm[l].b)});
    if (l < p.bn.size()) {
      const std::string bn = "bn" + std::to_string(l + 1);
      out.push_back({bn + ".gamma", std::span<T>(p.bn[l].gamma)});
      out.push_back({bn + ".beta", std::span<T>(p.bn[l].beta)});
    }
  }
  out.push_back({"dense.W", p.dense_w.flat()});
  out.push_back({"dense.b", std::span<T>(p.dense_b)});
  return out;
}
}  // namespace

std::vector<NamedTensor<double>> trainable(ModelParams& params) {
  return collect<ModelParams, double>(params);
}

std::vector<NamedTensor<const double>> trainable(const ModelParams& params) {
  return collect<const ModelParams, const double>(params);
}

std::size_t parameter_count(const ModelParams& params) {
  std::size_t n = 0;
  for (const auto& t : trainable(params)) n += t.values.size();
  return n;
}

}  // namespace arousal::model
