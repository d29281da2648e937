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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "arousal/core/types.hpp"
#include "arousal/model/layers.hpp"
#include "arousal/model/params.hpp"

namespace arousal::model {

// Loss weight per class, indexed by Label value (PAD, Non-arousal, Arousal).
struct ClassWeights {
  std::array<double, 3> w{0.0, 1.0, 14.0};

  double operator[](Label y) const { return w[static_cast<std::size_t>(y)]; }
  bool operator==(const ClassWeights&) const = default;
};

// One training/evaluation sequence: frames x input_dim features and one
// label per frame.
struct Sequence {
  MatrixD features;
  std::vector<Label> targets;
};

// 1 for frames whose label is not PAD.
std::vector<std::uint8_t> labelled_mask(std::span<const Label> targets);

// Class posteriors, frames x 3. In train mode batch norm uses statistics over
// the frames selected by `stat_mask` (empty: all frames) and the running
// statistics are left untouched.
MatrixD forward(const Model& model, const MatrixD& features, Mode mode,
                std::span<const std::uint8_t> stat_mask = {});

// Row-wise softmax of a logits matrix.
MatrixD softmax(const MatrixD& logits);

struct LossResult {
  double loss = 0.0;                // sum_t w[y_t] * -ln p_t[y_t] / sum_t w[y_t]
  std::vector<double> per_frame;    // w[y_t] * -ln p_t[y_t]; exactly 0 when w = 0
  double total_weight = 0.0;
};

// Throws kDegenerateBatch when every frame has zero weight.
LossResult weighted_cross_entropy(const MatrixD& probs, std::span<const Label> targets,
                                  const ClassWeights& weights);

struct BackwardResult {
  double loss = 0.0;
  double total_weight = 0.0;
  ModelParams grads;
  std::vector<BnCache> bn_caches;  // train-mode statistics per BN layer
};

// Exact gradients of weighted_cross_entropy(forward(train mode)) with batch
// norm pooling the labelled frames. A sequence with zero total weight yields
// zero loss and all-zero gradients.
BackwardResult backward(const Model& model, const MatrixD& features,
                        std::span<const Label> targets, const ClassWeights& weights);

struct BatchGradient {
  double mean_loss = 0.0;  // mean of per-sequence losses
  ModelParams grads;       // mean of per-sequence gradients
  std::vector<std::vector<BnCache>> bn_caches;  // per sequence, batch order
};

// Per-sequence backward passes in parallel (OpenMP), reduced in sequence
// order so the result does not depend on the thread count.
BatchGradient batch_gradient(const Model& model, std::span<const Sequence* const> batch,
                             const ClassWeights& weights, int jobs = 0);

namespace reference {
// Serial version of batch_gradient.
BatchGradient batch_gradient(const Model& model, std::span<const Sequence* const> batch,
                             const ClassWeights& weights);
}  // namespace reference

}  // namespace arousal::model
