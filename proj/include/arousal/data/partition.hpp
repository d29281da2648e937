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
#include <string>
#include <vector>

namespace arousal::data {

inline constexpr int kNumFolds = 10;
inline constexpr int kHeldOut = -1;

// Held-out test set plus ten cross-validation folds over the remaining ids.
struct DatasetIndex {
  std::vector<std::string> ids;  // input order
  std::vector<int> assignment;   // per id: kHeldOut or fold 0..9
  std::uint64_t seed = 0;

  std::vector<std::string> held_out() const;
  std::vector<std::string> fold(int k) const;

  bool operator==(const DatasetIndex&) const = default;
};

struct FoldRoles {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

// Seeded shuffle; the first ceil(n/10) shuffled ids form the held-out set and
// the rest are dealt into ten contiguous near-equal folds (the first n % 10
// folds take one extra id). Needs at least 12 distinct ids.
DatasetIndex partition(const std::vector<std::string>& ids, std::uint64_t seed);

// Fold rotation for CV iteration k: test = fold k, val = fold (k+1) mod 10,
// train = the other eight folds.
FoldRoles fold_roles(const DatasetIndex& index, int k);

void save_index(const DatasetIndex& index, const std::filesystem::path& file);
DatasetIndex load_index(const std::filesystem::path& file);

}  // namespace arousal::data
