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
#include <span>
#include <string>
#include <vector>

#include "arousal/core/types.hpp"

namespace arousal::model {

struct ModelConfig {
  std::size_t input_dim = 0;  // n_channels * paths per frame
  std::size_t hidden_units = 100;
  std::size_t n_layers = 3;
  std::size_t n_classes = 3;  // PAD, Non-arousal, Arousal
  double bn_eps = 1e-5;
  double bn_momentum = 0.9;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

// Gate blocks are stacked in the order input, forget, cell, output: rows
// [0,H) of W, U and b belong to the input gate, [H,2H) to the forget gate, ...
struct LstmLayer {
  MatrixD W;              // 4H x in
  MatrixD U;              // 4H x H
  std::vector<double> b;  // 4H

  std::size_t hidden() const noexcept { return U.cols(); }
  std::size_t input_dim() const noexcept { return W.cols(); }
  bool operator==(const LstmLayer&) const = default;
};

struct BatchNorm {
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> running_mean;
  std::vector<double> running_var;

  bool operator==(const BatchNorm&) const = default;
};

// LSTM_1 -> BN_1 -> LSTM_2 -> BN_2 -> ... -> LSTM_n -> dense -> softmax.
struct ModelParams {
  std::vector<LstmLayer> lstm;
  std::vector<BatchNorm> bn;  // lstm.size() - 1 layers
  MatrixD dense_w;            // classes x H
  std::vector<double> dense_b;

  bool operator==(const ModelParams&) const = default;
};

struct Model {
  ModelConfig config;
  ModelParams params;

  bool operator==(const Model&) const = default;
};

// Uniform(-k, k) with k = 1/sqrt(fan_in) from config.seed; forget-gate bias
// 1, other biases 0, BN gamma 1 / beta 0, running stats (0, 1).
Model make_model(const ModelConfig& config);

// Same shapes, every value zero (gradient / optimizer-state buffers).
ModelParams zeros_like(const ModelParams& params);

template <typename T>
struct NamedTensor {
  std::string name;
  std::span<T> values;
};

// Trainable tensors in serialization order:
//   lstm{l}.W, lstm{l}.U, lstm{l}.b, [bn{l}.gamma, bn{l}.beta], ..., dense.W, dense.b
std::vector<NamedTensor<double>> trainable(ModelParams& params);
std::vector<NamedTensor<const double>> trainable(const ModelParams& params);

std::size_t parameter_count(const ModelParams& params);

}  // namespace arousal::model
