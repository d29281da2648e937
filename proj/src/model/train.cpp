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

#include "arousal/model/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"

namespace arousal::model {

void TrainConfig::validate() const {
  for (double w : class_weights.w)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::kConfig, "class weights must be finite and >= 0");
  if (patience < 1) throw Error(ErrorKind::kConfig, "patience must be >= 1");
  if (max_length < 1) throw Error(ErrorKind::kConfig, "max_length must be >= 1");
  if (max_epochs < 1) throw Error(ErrorKind::kConfig, "max_epochs must be >= 1");
  if (batch_size < 1) throw Error(ErrorKind::kConfig, "batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorKind::kConfig, "learning_rate must be positive");
  if (!(rmsprop_decay >= 0.0 && rmsprop_decay < 1.0))
    throw Error(ErrorKind::kConfig, "rmsprop_decay must lie in [0, 1)");
  if (!(rmsprop_eps > 0.0)) throw Error(ErrorKind::kConfig, "rmsprop_eps must be positive");
}

bool EarlyStopping::observe(std::size_t epoch, double val_loss) {
  improved_ = val_loss < best_;
  if (improved_) {
    best_ = val_loss;
    best_epoch_ = epoch;
    since_best_ = 0;
  } else {
    ++since_best_;
  }
  return since_best_ >= patience_;
}

double evaluation_loss(const Model& model, std::span<const Sequence> sequences,
                       const ClassWeights& weights) {
  double sum = 0.0, total = 0.0;
  for (const auto& s : sequences) {
    double w_seq = 0.0;
    for (Label y : s.targets) w_seq += weights[y];
    if (w_seq == 0.0) continue;
    const MatrixD probs = forward(model, s.features, Mode::kInfer);
    const LossResult r = weighted_cross_entropy(probs, s.targets, weights);
    for (double v : r.per_frame) sum += v;
    total += r.total_weight;
  }
  if (total == 0.0)
    throw Error(ErrorKind::kTraining, "evaluation set has no frames with non-zero loss weight");
  return sum / total;
}

namespace {

void check_set(std::span<const Sequence> set, const ModelConfig& mc, const TrainConfig& tc,
               const ClassWeights& weights, const char* what) {
  if (set.empty()) throw Error(ErrorKind::kTraining, std::string(what) + " set is empty");
  double total = 0.0;
  for (const auto& s : set) {
    if (s.features.rows() != s.targets.size())
      throw Error(ErrorKind::kShape, std::string(what) + ": features/targets length mismatch");
    if (s.features.cols() != mc.input_dim)
      throw Error(ErrorKind::kShape, std::string(what) + ": feature width " +
                                         std::to_string(s.features.cols()) + " != input_dim " +
                                         std::to_string(mc.input_dim));
    if (s.features.rows() > tc.max_length)
      throw Error(ErrorKind::kLength, std::string(what) + ": sequence of " +
                                          std::to_string(s.features.rows()) +
                                          " frames exceeds max_length " +
                                          std::to_string(tc.max_length));
    for (Label y : s.targets) total += weights[y];
  }
  if (total == 0.0)
    throw Error(ErrorKind::kTraining, std::string(what) + " set has no labelled frames");
}

void require_finite(double loss, const char* what) {
  if (!std::isfinite(loss))
    throw Error(ErrorKind::kDivergence, std::string(what) + " loss is not finite");
}

}  // namespace

TrainResult train(const ModelConfig& model_config, std::span<const Sequence> train_set,
                  std::span<const Sequence> val_set, const TrainConfig& config) {
  config.validate();
  model_config.validate();
  check_set(train_set, model_config, config, config.class_weights, "train");
  check_set(val_set, model_config, config, config.class_weights, "validation");

  Model model = make_model(model_config);
  RmsPropState state = make_rmsprop_state(model.params);
  const RmsPropSettings settings{config.learning_rate, config.rmsprop_decay, config.rmsprop_eps};
  Rng rng(config.seed);

  TrainResult result;
  result.initial_val_loss = evaluation_loss(model, val_set, config.class_weights);
  result.best = model;
  result.best_val_loss = result.initial_val_loss;

  // Sequences without any weighted frame contribute nothing to the loss and
  // cannot provide batch-norm statistics; they are skipped.
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < train_set.size(); ++i) {
    double w = 0.0;
    for (Label y : train_set[i].targets) w += config.class_weights[y];
    if (w > 0.0) usable.push_back(i);
  }

  EarlyStopping stopper(config.patience);
  std::vector<const Sequence*> batch;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::vector<std::size_t> order = usable;
    for (std::size_t i = order.size(); i-- > 1;)
      std::swap(order[i], order[uniform_index(rng, i + 1)]);

    double loss_sum = 0.0;
    std::size_t n_batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      batch.clear();
      for (std::size_t k = start; k < std::min(order.size(), start + config.batch_size); ++k)
        batch.push_back(&train_set[order[k]]);
      BatchGradient g = batch_gradient(model, batch, config.class_weights, config.jobs);
      require_finite(g.mean_loss, "training");
      for (const auto& caches : g.bn_caches)
        for (std::size_t l = 0; l < caches.size(); ++l)
          update_running_stats(model.params.bn[l], caches[l], model_config.bn_momentum);
      rmsprop_step(model.params, g.grads, state, settings);
      loss_sum += g.mean_loss;
      ++n_batches;
    }

    const double val = evaluation_loss(model, val_set, config.class_weights);
    require_finite(val, "validation");
    result.history.push_back({epoch, loss_sum / static_cast<double>(n_batches), val});
    const bool stop = stopper.observe(epoch, val);
    if (stopper.improved_last()) {
      result.best = model;
      result.best_epoch = epoch;
      result.best_val_loss = val;
    }
    if (stop) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

PrevalenceWeight class_weight_from_prevalence(std::span<const Label> frame_targets) {
  std::size_t non_arousal = 0, arousal = 0;
  for (Label y : frame_targets) {
    if (y == Label::kNonArousal) ++non_arousal;
    if (y == Label::kArousal) ++arousal;
  }
  if (non_arousal + arousal == 0)
    throw Error(ErrorKind::kTraining, "class weight needs at least one labelled frame");
  PrevalenceWeight out;
  constexpr double kMax = 1000.0;
  if (arousal == 0) {
    out.weights.w = {0.0, 1.0, kMax};
    out.no_arousal = true;
    return out;
  }
  const double ratio = std::round(static_cast<double>(non_arousal) / static_cast<double>(arousal));
  out.weights.w = {0.0, 1.0, std::clamp(ratio, 1.0, kMax)};
  return out;
}

}  // namespace arousal::model
