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

#include <cstdint>
#include <filesystem>
#include <span>

#include "arousal/model/params.hpp"
#include "arousal/model/train.hpp"

namespace arousal::model {

struct ModelMeta {
  std::size_t epoch = 0;
  double val_loss = 0.0;
  std::uint64_t seed = 0;
};

// Model container: <dir>/model.json (config, epoch, val loss, seed) and
// <dir>/model.dat, little-endian float64 in this order, for l = 1..n_layers:
//   lstm{l}.W (4H x in, row-major), lstm{l}.U (4H x H), lstm{l}.b (4H),
//   and for l < n_layers: bn{l}.gamma, bn{l}.beta, bn{l}.running_mean,
//   bn{l}.running_var (H each);
// then dense.W (3 x H) and dense.b (3).
void save_model(const Model& model, const ModelMeta& meta, const std::filesystem::path& dir);
Model load_model(const std::filesystem::path& dir, ModelMeta* meta = nullptr);

// CSV with header "epoch,train_loss,val_loss", values printed with 17
// significant digits.
void save_history(std::span<const EpochRecord> history, const std::filesystem::path& file);

}  // namespace arousal::model
