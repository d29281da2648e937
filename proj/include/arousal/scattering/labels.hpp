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

#include <cstddef>
#include <span>
#include <vector>

#include "arousal/core/types.hpp"

namespace arousal::scattering {

// Per-frame labels from per-sample targets, windows of T samples (the tail is
// padded with PAD). A window is Arousal when arousal samples make up at least
// half of its non-PAD samples, Non-arousal when it has any other non-PAD
// sample, PAD otherwise.
std::vector<Label> frame_labels(std::span<const Label> targets, std::size_t T);

}  // namespace arousal::scattering
