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

#include <span>
#include <string_view>

#include "arousal/model/params.hpp"

namespace arousal::model {

struct RmsPropSettings {
  double learning_rate = 0.1;
  double rho = 0.9;
  double eps = 1e-8;
};

// v <- rho * v + (1 - rho) * g^2;  theta <- theta - lr * g / sqrt(v + eps).
// Throws kDivergence (naming `name`) on a non-finite gradient before any
// element is modified.
void rmsprop_update(std::span<double> theta, std::span<const double> grad, std::span<double> v,
                    const RmsPropSettings& settings, std::string_view name = "tensor");

// Square-gradient accumulators shaped like the trainable parameters.
struct RmsPropState {
  ModelParams v;
};

RmsPropState make_rmsprop_state(const ModelParams& params);

// Checks every gradient for finiteness first, then updates all tensors.
void rmsprop_step(ModelParams& params, const ModelParams& grads, RmsPropState& state,
                  const RmsPropSettings& settings);

}  // namespace arousal::model
