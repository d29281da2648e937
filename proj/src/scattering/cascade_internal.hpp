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
#include <vector>

#include "arousal/core/fft.hpp"
#include "arousal/filterbank/filterbank.hpp"
#include "arousal/scattering/paths.hpp"

namespace arousal::scattering::detail {

// Filter spectra sampled on the cascade grid for one signal length. Shared
// read-only by every channel of a record.
struct CascadeGrid {
  std::size_t n_samples = 0;
  std::size_t T = 0;
  std::size_t frames = 0;
  std::size_t L = 0;  // grid length / T
  std::size_t N = 0;  // grid length
  std::vector<double> phi;
  std::vector<std::vector<double>> psi;
  std::vector<ScatteringPath> paths;
};

CascadeGrid make_grid(std::size_t n_samples, const filterbank::FilterBank& fb);

// Throws kInput naming the first non-finite sample.
void check_finite(std::span<const double> x);

// Zero-padded forward transform of a real signal on the grid.
std::vector<fft::Complex> padded_spectrum(std::span<const double> x, std::size_t N);

}  // namespace arousal::scattering::detail
