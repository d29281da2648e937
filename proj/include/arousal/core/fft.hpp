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

#include <complex>
#include <cstddef>
#include <span>

// Thin wrapper over FFTW's complex transforms. Plans are cached per length
// and created under a lock; execution is reentrant, so callers may transform
// distinct buffers from several threads.
namespace arousal::fft {

using Complex = std::complex<double>;

// In-place unnormalized forward DFT: X_k = sum_n x_n exp(-2 pi i k n / N).
void forward(std::span<Complex> data);

// In-place inverse DFT including the 1/N factor.
void inverse(std::span<Complex> data);

// Smallest n' >= n whose only prime factors are 2, 3 and 5.
std::size_t good_size(std::size_t n);

}  // namespace arousal::fft
