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
#include <string>
#include <vector>

#include "arousal/core/types.hpp"
#include "arousal/scattering/paths.hpp"

namespace arousal::scattering {

// Decimated scattering tensor for one record, frames x channels x paths,
// row-major. Each frame row is channel-major, which is also the flattened
// input layout the classifier consumes.
struct ScatteringFeatures {
  std::string record_id;
  std::vector<std::string> channel_names;
  std::vector<ScatteringPath> paths;
  double frame_rate = 0.0;  // Hz, fs / T
  std::size_t n_frames = 0;
  std::vector<double> data;
  std::vector<Label> frame_targets;  // one per frame
  bool normalized = false;

  std::size_t n_channels() const noexcept { return channel_names.size(); }
  std::size_t n_paths() const noexcept { return paths.size(); }
  std::size_t frame_width() const noexcept { return n_channels() * n_paths(); }

  double& at(std::size_t frame, std::size_t channel, std::size_t path) {
    return data[(frame * n_channels() + channel) * n_paths() + path];
  }
  double at(std::size_t frame, std::size_t channel, std::size_t path) const {
    return data[(frame * n_channels() + channel) * n_paths() + path];
  }

  // frames x (channels * paths) copy of the tensor.
  MatrixD frame_matrix() const;

  // Throws kShape when data / targets disagree with the declared dimensions.
  void validate() const;

  bool operator==(const ScatteringFeatures&) const = default;
};

}  // namespace arousal::scattering
