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

#include "arousal/scattering/labels.hpp"

#include <algorithm>
#include <string>

#include "arousal/core/errors.hpp"

namespace arousal::scattering {

std::vector<Label> frame_labels(std::span<const Label> targets, std::size_t T) {
  if (T == 0) throw Error(ErrorKind::kConfig, "frame window T must be positive");
  const std::size_t frames = std::max<std::size_t>(1, (targets.size() + T - 1) / T);
  std::vector<Label> out(frames, Label::kPad);
  for (std::size_t f = 0; f < frames; ++f) {
    std::size_t labelled = 0, arousal = 0;
    const std::size_t end = std::min(targets.size(), (f + 1) * T);
    for (std::size_t i = f * T; i < end; ++i) {
      const auto v = static_cast<std::uint8_t>(targets[i]);
      if (!is_valid_label(v))
        throw Error(ErrorKind::kInput, "unknown label value " + std::to_string(v) +
                                           " at sample " + std::to_string(i));
      if (targets[i] == Label::kPad) continue;
      ++labelled;
      if (targets[i] == Label::kArousal) ++arousal;
    }
    if (labelled == 0) continue;
    out[f] = 2 * arousal >= labelled ? Label::kArousal : Label::kNonArousal;
  }
  return out;
}

}  // namespace arousal::scattering
