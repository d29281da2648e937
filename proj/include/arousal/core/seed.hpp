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
#include <random>
#include <string_view>

namespace arousal {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for one pipeline stage: splitmix64(root ^ fnv1a64(stage)). Stages used
// by the tools are "synth", "partition", "train", "init", "shuffle".
std::uint64_t derive_seed(std::uint64_t root, std::string_view stage);

// Seed for item `index` of a stage (record i, ensemble member k, ...).
std::uint64_t derive_seed(std::uint64_t root, std::string_view stage,
                          std::uint64_t index);

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
// Standard normal via Box-Muller (one draw per call, second value dropped).
double standard_normal(Rng& rng);
// Uniform integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace arousal
