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

#include "arousal/core/types.hpp"
#include "arousal/data/record.hpp"
#include "arousal/filterbank/filterbank.hpp"
#include "arousal/scattering/features.hpp"

namespace arousal::scattering {

// Scattering cascade for one channel: zero-pad to a multiple of T, then
//   order 0: x * phi
//   order 1: |x * psi_j1| * phi
//   order 2: ||x * psi_j1| * psi_j2| * phi,   j2 > j1
// each sampled at the centre of every T-sample frame (n*T + T/2).
// Convolutions run on one FFT grid of length T*L >= padded + n_fft, so the
// zero guard keeps them linear rather than circular. Returns frames x paths
// with paths ordered as enumerate_paths(). Order-1 and order-2 values are
// >= 0; the order-0 path keeps the sign of x * phi.
MatrixD scatter_channel(std::span<const double> x, const filterbank::FilterBank& fb);

// Applies scatter_channel to every channel (OpenMP over channels; jobs <= 0
// uses the runtime default) and decimates the targets with frame_labels.
// Output is bitwise independent of the thread count.
ScatteringFeatures scatter_record(const data::Record& rec,
                                  const filterbank::FilterBank& fb, int jobs = 0);

// Number of frames for a signal of n samples: ceil(n / T), at least 1.
std::size_t frame_count(std::size_t n_samples, std::size_t T);

// Length of the FFT grid the cascade uses for an n-sample signal.
std::size_t cascade_grid_length(std::size_t n_samples,
                                const filterbank::FilterBankConfig& config);

// Straightforward single-threaded cascade: full-rate inverse transforms and
// explicit subsampling. Kept as the reference the optimized kernels are
// tested and benchmarked against.
namespace reference {
MatrixD scatter_channel(std::span<const double> x, const filterbank::FilterBank& fb);
ScatteringFeatures scatter_record(const data::Record& rec,
                                  const filterbank::FilterBank& fb);
}  // namespace reference

}  // namespace arousal::scattering
