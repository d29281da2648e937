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

#include "arousal/model/optimizer.hpp"

#include <cmath>
#include <string>

#include "arousal/core/errors.hpp"

namespace arousal::model {

namespace {
void check_finite(std::span<const double> grad, std::string_view name) {
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!std::isfinite(grad[i]))
      throw Error(ErrorKind::kDivergence, "non-finite gradient in " + std::string(name) +
                                              " at element " + std::to_string(i));
}
}  // namespace

void rmsprop_update(std::span<double> theta, std::span<const double> grad, std::span<double> v,
                    const RmsPropSettings& s, std::string_view name) {
  if (theta.size() != grad.size() || theta.size() != v.size())
    throw Error(ErrorKind::kShape, "rmsprop: size mismatch in " + std::string(name));
  check_finite(grad, name);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    v[i] = s.rho * v[i] + (1.0 - s.rho) * grad[i] * grad[i];
    theta[i] -= s.learning_rate * grad[i] / std::sqrt(v[i] + s.eps);
  }
}

RmsPropState make_rmsprop_state(const ModelParams& params) { return {zeros_like(params)}; }

void rmsprop_step(ModelParams& params, const ModelParams& grads, RmsPropState& state,
                  const RmsPropSettings& settings) {
  auto theta = trainable(params);
  const auto g = trainable(grads);
  auto v = trainable(state.v);
  for (const auto& t : g) check_finite(t.values, t.name);
  for (std::size_t i = 0; i < theta.size(); ++i)
    rmsprop_update(theta[i].values, g[i].values, v[i].values, settings, theta[i].name);
}

}  // namespace arousal::model
