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

#include "arousal/data/channels.hpp"

#include <algorithm>

#include "arousal/core/errors.hpp"

namespace arousal::data {

const std::vector<std::string>& default_channel_names() {
  static const std::vector<std::string> names = {
      "F3-M2", "F4-M1", "C3-M2", "C4-M1", "O1-M2",   "O2-M1", "E1-M2",
      "Chin1-Chin2", "ABD", "CHEST", "AIRFLOW", "SaO2", "ECG"};
  return names;
}

const std::vector<ChannelGroup>& default_channel_groups() {
  static const std::vector<ChannelGroup> groups = {
      {"All", default_channel_names()},
      {"All EMG", {"Chin1-Chin2", "ABD", "CHEST"}},
      {"SaO2", {"SaO2"}},
      {"All EEG", {"F3-M2", "F4-M1", "C3-M2", "C4-M1", "O1-M2", "O2-M1"}},
      {"F3-M2", {"F3-M2"}},
      {"ECG", {"ECG"}},
      {"AIRFLOW", {"AIRFLOW"}},
  };
  return groups;
}

const ChannelGroup& find_group(std::span<const ChannelGroup> groups, std::string_view name) {
  for (const auto& g : groups)
    if (g.name == name) return g;
  throw Error(ErrorKind::kLookup, "unknown channel group '" + std::string(name) + "'");
}

namespace {

std::vector<std::size_t> resolve(const std::vector<std::string>& available,
                                 const ChannelGroup& group) {
  for (const auto& ch : group.channels)
    if (std::find(available.begin(), available.end(), ch) == available.end())
      throw Error(ErrorKind::kLookup,
                  "channel '" + ch + "' of group '" + group.name + "' not present");
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < available.size(); ++c)
    if (std::find(group.channels.begin(), group.channels.end(), available[c]) !=
        group.channels.end())
      keep.push_back(c);
  return keep;
}

}  // namespace

Record select_channels(const Record& rec, const ChannelGroup& group) {
  const auto keep = resolve(rec.channel_names, group);
  Record out;
  out.id = rec.id;
  out.fs = rec.fs;
  out.targets = rec.targets;
  out.samples = MatrixF(rec.n_samples(), keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) out.channel_names.push_back(rec.channel_names[keep[k]]);
  for (std::size_t i = 0; i < rec.n_samples(); ++i)
    for (std::size_t k = 0; k < keep.size(); ++k) out.samples(i, k) = rec.samples(i, keep[k]);
  return out;
}

Record select_channels(const Record& rec, std::string_view group_name) {
  return select_channels(rec, find_group(default_channel_groups(), group_name));
}

scattering::ScatteringFeatures select_channels(const scattering::ScatteringFeatures& features,
                                               const ChannelGroup& group) {
  const auto keep = resolve(features.channel_names, group);
  scattering::ScatteringFeatures out;
  out.record_id = features.record_id;
  out.paths = features.paths;
  out.frame_rate = features.frame_rate;
  out.n_frames = features.n_frames;
  out.frame_targets = features.frame_targets;
  out.normalized = features.normalized;
  for (std::size_t k : keep) out.channel_names.push_back(features.channel_names[k]);
  out.data.resize(out.n_frames * out.frame_width());
  for (std::size_t t = 0; t < out.n_frames; ++t)
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (std::size_t m = 0; m < out.n_paths(); ++m) out.at(t, k, m) = features.at(t, keep[k], m);
  return out;
}

}  // namespace arousal::data
