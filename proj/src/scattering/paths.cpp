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

#include "arousal/scattering/paths.hpp"

namespace arousal::scattering {
namespace {
std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}
}  // namespace

std::uint64_t path_count(int J, int m, int p) {
  std::uint64_t total = 0;
  std::uint64_t pk = 1;
  for (int k = 0; k <= m; ++k) {
    total += pk * binomial(J, k);
    pk *= static_cast<std::uint64_t>(p);
  }
  return total;
}

std::vector<ScatteringPath> enumerate_paths(int n_wavelets, int m_max,
                                            bool include_order0) {
  std::vector<ScatteringPath> paths;
  if (include_order0) paths.push_back({0, -1, -1});
  if (m_max >= 1)
    for (int j1 = 0; j1 < n_wavelets; ++j1) paths.push_back({1, j1, -1});
  if (m_max >= 2)
    for (int j1 = 0; j1 < n_wavelets; ++j1)
      for (int j2 = j1 + 1; j2 < n_wavelets; ++j2) paths.push_back({2, j1, j2});
  return paths;
}

}  // namespace arousal::scattering
