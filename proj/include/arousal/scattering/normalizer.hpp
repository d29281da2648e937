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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "arousal/scattering/features.hpp"

namespace arousal::scattering {

// Log-median quasi-normalization x' = log1p(mu_j * x / med_{c,j}).
struct NormalizerParams {
  std::vector<std::string> channel_names;
  std::vector<ScatteringPath> paths;
  std::vector<double> medians;  // channels x paths, row-major
  std::vector<double> mu;       // one per path
  double eps = 1e-12;

  double median(std::size_t channel, std::size_t path) const {
    return medians[channel * paths.size() + path];
  }

  bool operator==(const NormalizerParams&) const = default;
};

// Pooled per-(channel, path) median over every frame of every training set.
// Medians below eps are raised to eps. An empty `mu` means 1.0 for all paths.
NormalizerParams fit_normalizer(std::span<const ScatteringFeatures> train,
                                std::vector<double> mu = {}, double eps = 1e-12);

ScatteringFeatures apply_normalizer(const ScatteringFeatures& features,
                                    const NormalizerParams& norm);

void save_normalizer(const NormalizerParams& norm, const std::filesystem::path& file);
NormalizerParams load_normalizer(const std::filesystem::path& file);

// Reads per-path mu values from a JSON file: either an array with one value
// per path or an object {"mu": [...]}.
std::vector<double> load_mu(const std::filesystem::path& file, std::size_t n_paths);

}  // namespace arousal::scattering
