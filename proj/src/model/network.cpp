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

#include "arousal/model/network.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <string>

#include "arousal/core/errors.hpp"

namespace arousal::model {

std::vector<std::uint8_t> labelled_mask(std::span<const Label> targets) {
  std::vector<std::uint8_t> mask(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) mask[t] = targets[t] != Label::kPad;
  return mask;
}

MatrixD softmax(const MatrixD& logits) {
  MatrixD p(logits.rows(), logits.cols());
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    const auto z = logits.row(t);
    double mx = z[0];
    for (double v : z) mx = std::max(mx, v);
    double s = 0.0;
    auto out = p.row(t);
    for (std::size_t c = 0; c < z.size(); ++c) {
      out[c] = std::exp(z[c] - mx);
      s += out[c];
    }
    for (double& v : out) v /= s;
  }
  return p;
}

namespace {

void check_input(const Model& model, const MatrixD& features) {
  if (features.cols() != model.config.input_dim)
    throw Error(ErrorKind::kShape, "model input_dim is " + std::to_string(model.config.input_dim) +
                                       ", features have " + std::to_string(features.cols()) +
                                       " columns");
}

MatrixD dense_logits(const ModelParams& p, const MatrixD& h) {
  MatrixD logits = matmul_nt(h, p.dense_w);
  for (std::size_t t = 0; t < logits.rows(); ++t)
    for (std::size_t c = 0; c < logits.cols(); ++c) logits(t, c) += p.dense_b[c];
  return logits;
}

}  // namespace

MatrixD forward(const Model& model, const MatrixD& features, Mode mode,
                std::span<const std::uint8_t> stat_mask) {
  check_input(model, features);
  const ModelParams& p = model.params;
  MatrixD h = features;
  for (std::size_t l = 0; l < p.lstm.size(); ++l) {
    h = lstm_forward(p.lstm[l], h);
    if (l < p.bn.size()) {
      if (mode == Mode::kInfer) {
        h = bn_infer_forward(h, p.bn[l], model.config.bn_eps);
      } else {
        BnCache cache;
        h = bn_train_forward(h, p.bn[l], model.config.bn_eps, stat_mask, cache);
      }
    }
  }
  return softmax(dense_logits(p, h));
}

LossResult weighted_cross_entropy(const MatrixD& probs, std::span<const Label> targets,
                                  const ClassWeights& weights) {
  if (probs.rows() != targets.size() || probs.cols() != 3)
    throw Error(ErrorKind::kShape, "weighted_cross_entropy: probs/targets shape mismatch");
  LossResult r;
  r.per_frame.assign(targets.size(), 0.0);
  double sum = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto y = static_cast<std::uint8_t>(targets[t]);
    if (!is_valid_label(y))
      throw Error(ErrorKind::kInput, "unknown target label " + std::to_string(y));
    const double w = weights.w[y];
    if (w == 0.0) continue;
    r.per_frame[t] = -w * std::log(probs(t, y));
    sum += r.per_frame[t];
    r.total_weight += w;
  }
  if (r.total_weight == 0.0)
    throw Error(ErrorKind::kDegenerateBatch, "every frame has zero loss weight");
  r.loss = sum / r.total_weight;
  return r;
}

BackwardResult backward(const Model& model, const MatrixD& features,
                        std::span<const Label> targets, const ClassWeights& weights) {
  check_input(model, features);
  if (targets.size() != features.rows())
    throw Error(ErrorKind::kShape, "backward: " + std::to_string(targets.size()) +
                                       " targets for " + std::to_string(features.rows()) + " frames");
  const ModelParams& p = model.params;
  BackwardResult out;
  out.grads = zeros_like(p);

  for (Label y : targets) out.total_weight += weights[y];
  if (out.total_weight == 0.0) return out;

  const auto mask = labelled_mask(targets);
  const std::size_t n_layers = p.lstm.size();
  std::vector<LstmCache> lstm_caches(n_layers);
  out.bn_caches.resize(p.bn.size());

  MatrixD h = features;
  for (std::size_t l = 0; l < n_layers; ++l) {
    lstm_caches[l] = lstm_forward_cached(p.lstm[l], h);
    h = lstm_caches[l].hidden;
    if (l < p.bn.size())
      h = bn_train_forward(h, p.bn[l], model.config.bn_eps, mask, out.bn_caches[l]);
  }
  const MatrixD probs = softmax(dense_logits(p, h));
  out.loss = weighted_cross_entropy(probs, targets, weights).loss;

  // d loss / d logits = w_t / W * (p_t - onehot(y_t))
  MatrixD d_logits(probs.rows(), 3);
  for (std::size_t t = 0; t < probs.rows(); ++t) {
    const double w = weights[targets[t]];
    if (w == 0.0) continue;
    const double scale = w / out.total_weight;
    for (std::size_t c = 0; c < 3; ++c)
      d_logits(t, c) = scale * (probs(t, c) - (c == static_cast<std::size_t>(targets[t]) ? 1.0 : 0.0));
  }
  matmul_tn_acc(d_logits, h, out.grads.dense_w);
  for (std::size_t t = 0; t < d_logits.rows(); ++t)
    for (std::size_t c = 0; c < 3; ++c) out.grads.dense_b[c] += d_logits(t, c);
  MatrixD dh = matmul_nn(d_logits, p.dense_w);

  for (std::size_t l = n_layers; l-- > 0;) {
    if (l < p.bn.size()) dh = bn_backward(p.bn[l], out.bn_caches[l], dh, out.grads.bn[l]);
    dh = lstm_backward(p.lstm[l], lstm_caches[l], dh, out.grads.lstm[l], l > 0);
  }
  return out;
}

namespace {

void add_into(ModelParams& acc, const ModelParams& g) {
  auto dst = trainable(acc);
  const auto src = trainable(g);
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t k = 0; k < dst[i].values.size(); ++k) dst[i].values[k] += src[i].values[k];
}

BatchGradient reduce(const Model& model, std::vector<BackwardResult>& parts) {
  BatchGradient out;
  out.grads = zeros_like(model.params);
  const double inv = 1.0 / static_cast<double>(parts.size());
  for (auto& part : parts) {
    add_into(out.grads, part.grads);
    out.mean_loss += part.loss;
    out.bn_caches.push_back(std::move(part.bn_caches));
  }
  out.mean_loss *= inv;
  for (auto& t : trainable(out.grads))
    for (double& v : t.values) v *= inv;
  return out;
}

void check_batch(std::span<const Sequence* const> batch) {
  if (batch.empty()) throw Error(ErrorKind::kDegenerateBatch, "empty batch");
}

}  // namespace

BatchGradient batch_gradient(const Model& model, std::span<const Sequence* const> batch,
                             const ClassWeights& weights, int jobs) {
  check_batch(batch);
  std::vector<BackwardResult> parts(batch.size());
  std::vector<std::exception_ptr> errors(batch.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t s = 0; s < batch.size(); ++s) {
    try {
      parts[s] = backward(model, batch[s]->features, batch[s]->targets, weights);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reduce(model, parts);
}

namespace reference {
BatchGradient batch_gradient(const Model& model, std::span<const Sequence* const> batch,
                             const ClassWeights& weights) {
  check_batch(batch);
  std::vector<BackwardResult> parts;
  parts.reserve(batch.size());
  for (const Sequence* s : batch) parts.push_back(backward(model, s->features, s->targets, weights));
  return reduce(model, parts);
}
}  // namespace reference

}  // namespace arousal::model
