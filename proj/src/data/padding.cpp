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

#include "arousal/data/padding.hpp"

#include <string>

#include "arousal/core/errors.hpp"

namespace arousal::data {

scattering::ScatteringFeatures pad_features(const scattering::ScatteringFeatures& features,
                                            std::size_t max_length) {
  features.validate();
  if (features.n_frames > max_length)
    throw Error(ErrorKind::kLength, "features '" + features.record_id + "' have " +
                                        std::to_string(features.n_frames) +
                                        " frames, max_length is " + std::to_string(max_length));
  scattering::ScatteringFeatures out = features;
  out.n_frames = max_length;
  out.data.resize(max_length * features.frame_width(), 0.0);
  out.frame_targets.resize(max_length, Label::kPad);
  return out;
}

}  // namespace arousal::data
