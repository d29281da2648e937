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
#include <string>
#include <string_view>
#include <vector>

#include "arousal/data/record.hpp"
#include "arousal/scattering/features.hpp"

namespace arousal::data {

struct ChannelGroup {
  std::string name;
  std::vector<std::string> channels;

  bool operator==(const ChannelGroup&) const = default;
};

// F3-M2 F4-M1 C3-M2 C4-M1 O1-M2 O2-M1 E1-M2 Chin1-Chin2 ABD CHEST AIRFLOW SaO2 ECG
const std::vector<std::string>& default_channel_names();

// All, All EMG, SaO2, All EEG, F3-M2, ECG, AIRFLOW.
const std::vector<ChannelGroup>& default_channel_groups();

const ChannelGroup& find_group(std::span<const ChannelGroup> groups, std::string_view name);

// Restrict to the group's channels, keeping the record's channel order.
Record select_channels(const Record& rec, const ChannelGroup& group);
Record select_channels(const Record& rec, std::string_view group_name);

scattering::ScatteringFeatures select_channels(const scattering::ScatteringFeatures& features,
                                               const ChannelGroup& group);

}  // namespace arousal::data
