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
#include <cstdint>
#include <string>
#include <vector>

#include "arousal/data/record.hpp"

namespace arousal::data {

enum class Baseline {
  kColoredNoise,  // 1/f^exponent noise
  kRespiration,   // ~0.25 Hz breathing with wandering amplitude
  kSaturation,    // near-DC oxygen saturation around 96 %
  kCardiac,       // QRS-like pulse train at ~1.1 Hz
};

struct ChannelSpec {
  std::string name;
  Baseline baseline = Baseline::kColoredNoise;
  double exponent = 1.0;   // colored-noise exponent
  double amplitude = 1.0;  // baseline standard deviation (noise) or peak
  bool event_gain = false;  // amplitude x[2, 4] plus a high-band burst
  bool event_dip = false;   // lagged desaturation dip
  bool operator==(const ChannelSpec&) const = default;
};

struct SynthConfig {
  std::size_t n_records = 40;
  double duration_s = 600.0;
  double fs = 200.0;
  double prevalence = 0.07;
  double event_min_s = 3.0;
  double event_max_s = 15.0;
  std::vector<ChannelSpec> channels;  // empty: default_channel_specs()
  std::uint64_t seed = 0;
  std::string id_prefix = "synth";
  bool operator==(const SynthConfig&) const = default;

  // Throws kConfig when the invariants do not hold.
  void validate() const;
};

std::vector<ChannelSpec> default_channel_specs();

struct ArousalEvent {
  std::size_t start = 0;   // sample index
  std::size_t length = 0;  // samples

  bool operator==(const ArousalEvent&) const = default;
};

struct SynthRecord {
  Record record;
  std::vector<ArousalEvent> events;  // sorted by start
};

// Record i uses derive_seed(cfg.seed, "synth", i) and is independent of the
// others. Events are placed at uniform random non-overlapping positions until
// the arousal fraction reaches the target; the realized fraction always lies
// within +-20 % of cfg.prevalence or generation fails.
SynthRecord synth_record(const SynthConfig& cfg, std::size_t index);
std::vector<SynthRecord> synth_generate_with_events(const SynthConfig& cfg, int jobs = 0);
std::vector<Record> synth_generate(const SynthConfig& cfg, int jobs = 0);

}  // namespace arousal::data
