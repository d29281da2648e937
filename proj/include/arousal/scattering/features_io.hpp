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

#include "arousal/scattering/features.hpp"

namespace arousal::scattering {

// Feature container: <dir>/features.json, features.dat (LE float32, frames x
// channels x paths), frame_targets.dat (one byte per frame). Paths are stored
// as [order, j1, j2] with -1 for absent scales.
void save_features(const ScatteringFeatures& features, const std::filesystem::path& dir);
ScatteringFeatures load_features(const std::filesystem::path& dir);

}  // namespace arousal::scattering
