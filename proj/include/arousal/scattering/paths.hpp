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

#include <compare>
#include <cstdint>
#include <vector>

namespace arousal::scattering {

// One scattering coefficient channel. j1/j2 are -1 when absent.
struct ScatteringPath {
  int order = 0;
  int j1 = -1;
  int j2 = -1;

  auto operator<=>(const ScatteringPath&) const = default;
};

// s = sum_{k=0}^{m} p^k * C(J, k), order-0 term included.
std::uint64_t path_count(int J, int m, int p);

// All paths over `n_wavelets` filters up to order m_max, sorted by
// (order, j1, j2). Order-2 paths satisfy j2 > j1.
std::vector<ScatteringPath> enumerate_paths(int n_wavelets, int m_max,
                                            bool include_order0);

}  // namespace arousal::scattering
