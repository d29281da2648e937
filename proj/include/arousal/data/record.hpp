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
#include <string>
#include <vector>

#include "arousal/core/types.hpp"

namespace arousal::data {

// One multi-channel recording. Samples are stored as 32-bit floats, which is
// also the on-disk precision, so save/load round-trips bit-exactly.
struct Record {
  std::string id;
  double fs = 200.0;
  std::vector<std::string> channel_names;
  MatrixF samples;             // n_samples x n_channels
  std::vector<Label> targets;  // one per sample

  std::size_t n_samples() const noexcept { return samples.rows(); }
  std::size_t n_channels() const noexcept { return samples.cols(); }

  // Column `c` widened to double.
  std::vector<double> channel(std::size_t c) const;

  // Throws kShape / kInput / kConfig when the invariants do not hold.
  void validate() const;

  bool operator==(const Record&) const = default;
};

// Record container: <dir>/header.json, signals.dat (row-major LE float32,
// n_samples x n_channels), targets.dat (one byte per sample).
void save_record(const Record& rec, const std::filesystem::path& dir);
Record load_record(const std::filesystem::path& dir);

}  // namespace arousal::data
