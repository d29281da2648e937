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

#include "arousal/core/types.hpp"

namespace arousal::ensemble {

// Elementwise mean of member posteriors (frames x 3). Each element is
// min + sum(v - min) / n over the sorted member values, so the result does
// not depend on member order and n equal members give that value exactly.
MatrixD average_posteriors(std::span<const MatrixD> members);

// Per-frame argmax; ties go to the higher class index.
std::vector<Label> fuse_label(const MatrixD& averaged);

// Arousal column (class 2) of the averaged posteriors.
std::vector<double> arousal_score(const MatrixD& averaged);

struct EnsemblePrediction {
  std::vector<MatrixD> member_probs;
  MatrixD averaged;
  std::vector<Label> labels;
};

EnsemblePrediction fuse(std::vector<MatrixD> members);

// Prediction container: <dir>/pred.json (record id, member count, frame
// rate, frames) and probs.dat (frames x 3, LE float32).
struct PredictionFile {
  std::string record_id;
  std::size_t n_members = 0;
  double frame_rate = 0.0;
  MatrixD probs;
};

void save_prediction(const PredictionFile& pred, const std::filesystem::path& dir);
PredictionFile load_prediction(const std::filesystem::path& dir);

}  // namespace arousal::ensemble
