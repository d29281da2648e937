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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "arousal/model/network.hpp"
#include "arousal/model/optimizer.hpp"
#include "arousal/model/params.hpp"

namespace arousal::model {

struct TrainConfig {
  double learning_rate = 0.1;
  double rmsprop_decay = 0.9;
  double rmsprop_eps = 1e-8;
  ClassWeights class_weights;  // {0, 1, 14}
  std::size_t patience = 50;
  std::size_t max_epochs = 300;
  std::size_t batch_size = 1;  // sequences per optimizer step
  std::size_t max_length = 13371;
  std::uint64_t seed = 0;      // epoch shuffling
  int jobs = 0;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
};

// Patience-based stopping rule on a validation loss sequence.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  // Records the loss of `epoch`; returns true when training should stop.
  bool observe(std::size_t epoch, double val_loss);

  bool improved_last() const noexcept { return improved_; }
  std::size_t best_epoch() const noexcept { return best_epoch_; }
  double best_loss() const noexcept { return best_; }

 private:
  std::size_t patience_;
  std::size_t best_epoch_ = 0;
  std::size_t since_best_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  bool improved_ = false;
};

struct TrainResult {
  Model best;                 // parameters of best_epoch
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;
  double initial_val_loss = 0.0;  // before the first update
  std::vector<EpochRecord> history;
  bool early_stopped = false;
};

// Pooled weighted cross-entropy over sequences, inference mode.
double evaluation_loss(const Model& model, std::span<const Sequence> sequences,
                       const ClassWeights& weights);

// Seeded epoch loop: shuffle, one RMSprop step per batch of sequences
// (per-sequence gradients averaged, BN running statistics updated in batch
// order), validation loss after every epoch, keep the best epoch and stop
// after `patience` epochs without improvement.
TrainResult train(const ModelConfig& model_config, std::span<const Sequence> train_set,
                  std::span<const Sequence> val_set, const TrainConfig& config);

struct PrevalenceWeight {
  ClassWeights weights;
  bool no_arousal = false;  // weight clamped because no arousal frames exist
};

// w2 = round(n_nonarousal / n_arousal) (half away from zero) clamped to
// [1, 1000]; w1 = 1, w0 = 0.
PrevalenceWeight class_weight_from_prevalence(std::span<const Label> frame_targets);

}  // namespace arousal::model
