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

#include "arousal/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <iomanip>
#include <set>
#include <sstream>

#include <omp.h>

#include "arousal/core/errors.hpp"
#include "arousal/core/fft.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/data/channels.hpp"

namespace arousal::data {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::kConfig, "invalid synth config: " + what);
}

void normalize_std(std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  for (double& v : x) v = sd > 0.0 ? (v - mean) / sd : 0.0;
}

// Unit-variance noise with power spectrum ~ 1/f^exponent above 0.05 Hz.
std::vector<double> colored_noise(Rng& rng, std::size_t n, double fs, double exponent) {
  const std::size_t N = fft::good_size(n);
  std::vector<fft::Complex> buf(N);
  for (auto& v : buf) v = standard_normal(rng);
  fft::forward(buf);
  const double floor_hz = 0.05;
  buf[0] = 0.0;
  for (std::size_t k = 1; k < N; ++k) {
    const std::size_t kk = std::min(k, N - k);
    const double f = std::max(floor_hz, static_cast<double>(kk) * fs / static_cast<double>(N));
    buf[k] *= std::pow(f, -exponent / 2.0);
  }
  fft::inverse(buf);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf[i].real();
  normalize_std(out);
  return out;
}

std::vector<ArousalEvent> place_events(Rng& rng, std::size_t n, const SynthConfig& cfg) {
  const double target = cfg.prevalence * static_cast<double>(n);
  const double lo = 0.8 * target, hi = 1.2 * target;
  const auto dmin = static_cast<std::size_t>(std::llround(cfg.event_min_s * cfg.fs));
  const auto dmax = static_cast<std::size_t>(std::llround(cfg.event_max_s * cfg.fs));
  const std::size_t gap = dmin;
  const auto cap = static_cast<std::size_t>(std::floor(hi));

  std::vector<ArousalEvent> events;
  std::size_t count = 0;
  while (static_cast<double>(count) < target) {
    std::size_t d = dmin + uniform_index(rng, dmax - dmin + 1);
    if (count + d > cap) d = cap > count ? cap - count : 0;
    if (d < dmin || d > n) break;
    // a total below lo with no room for another event would be a dead end
    const std::size_t room = std::min(dmax, cap - count);
    if (static_cast<double>(count + d) < lo && cap - count - d < dmin) d = std::min(room, n);
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      const std::size_t s = uniform_index(rng, n - d + 1);
      placed = std::none_of(events.begin(), events.end(), [&](const ArousalEvent& e) {
        return s < e.start + e.length + gap && e.start < s + d + gap;
      });
      if (placed) events.push_back({s, d});
    }
    if (!placed)
      throw Error(ErrorKind::kGeneration, "no room left to place another arousal event");
    count += d;
  }
  if (static_cast<double>(count) < lo || static_cast<double>(count) > hi)
    throw Error(ErrorKind::kGeneration,
                "prevalence " + std::to_string(cfg.prevalence) +
                    " unreachable within the configured duration and event lengths");
  std::sort(events.begin(), events.end(),
            [](const ArousalEvent& a, const ArousalEvent& b) { return a.start < b.start; });
  return events;
}

// 1 inside [start, start+length) with raised-cosine edges of `ramp` samples
// inside the interval.
void add_window(std::vector<double>& env, std::size_t start, std::size_t length,
                std::size_t ramp, double weight) {
  ramp = std::min(ramp, length / 2);
  for (std::size_t i = 0; i < length && start + i < env.size(); ++i) {
    double w = 1.0;
    const std::size_t edge = std::min(i, length - 1 - i);
    if (edge < ramp)
      w = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(edge) /
                               static_cast<double>(ramp));
    env[start + i] += weight * w;
  }
}

std::vector<double> baseline(const ChannelSpec& spec, Rng& rng, std::size_t n, double fs) {
  std::vector<double> x(n);
  switch (spec.baseline) {
    case Baseline::kColoredNoise: {
      x = colored_noise(rng, n, fs, spec.exponent);
      for (double& v : x) v *= spec.amplitude;
      break;
    }
    case Baseline::kRespiration: {
      const double rate = uniform(rng, 0.2, 0.33);
      const double phase = uniform(rng, 0.0, kTwoPi);
      const auto wander = colored_noise(rng, n, fs, 2.0);
      const auto floor = colored_noise(rng, n, fs, spec.exponent);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        x[i] = spec.amplitude * ((1.0 + 0.2 * wander[i]) * std::sin(kTwoPi * rate * t + phase) +
                                 0.1 * floor[i]);
      }
      break;
    }
    case Baseline::kSaturation: {
      const auto slow = colored_noise(rng, n, fs, 2.0);
      double f1 = uniform(rng, 0.01, 0.05), f2 = uniform(rng, 0.01, 0.05);
      double p1 = uniform(rng, 0.0, kTwoPi), p2 = uniform(rng, 0.0, kTwoPi);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        x[i] = 96.0 + spec.amplitude * (0.3 * std::sin(kTwoPi * f1 * t + p1) +
                                        0.3 * std::sin(kTwoPi * f2 * t + p2) + 0.2 * slow[i]) +
               0.02 * standard_normal(rng);
      }
      break;
    }
    case Baseline::kCardiac: {
      const double hr = uniform(rng, 1.0, 1.25);
      double beat = uniform(rng, 0.0, 1.0 / hr);
      const double duration = static_cast<double>(n) / fs;
      for (std::size_t i = 0; i < n; ++i) x[i] = 0.05 * spec.amplitude * standard_normal(rng);
      while (beat < duration) {
        const auto centre = static_cast<std::ptrdiff_t>(beat * fs);
        for (std::ptrdiff_t k = -60; k <= 100; ++k) {
          const std::ptrdiff_t i = centre + k;
          if (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) continue;
          const double t = static_cast<double>(k) / fs;
          x[static_cast<std::size_t>(i)] +=
              spec.amplitude * (std::exp(-t * t / (2 * 0.012 * 0.012)) +
                                0.3 * std::exp(-(t - 0.25) * (t - 0.25) / (2 * 0.05 * 0.05)));
        }
        beat += (1.0 / hr) * (1.0 + 0.02 * standard_normal(rng));
      }
      break;
    }
  }
  return x;
}

}  // namespace

std::vector<ChannelSpec> default_channel_specs() {
  std::vector<ChannelSpec> specs;
  for (const auto& name : default_channel_names()) {
    ChannelSpec s;
    s.name = name;
    if (name == "E1-M2") {
      s.exponent = 1.5;
      s.amplitude = 30.0;
    } else if (name == "Chin1-Chin2") {
      s.exponent = 0.3;
      s.amplitude = 5.0;
      s.event_gain = true;
    } else if (name == "ABD" || name == "CHEST") {
      s.baseline = Baseline::kRespiration;
      s.exponent = 1.0;
      s.amplitude = 100.0;
    } else if (name == "AIRFLOW") {
      s.baseline = Baseline::kRespiration;
      s.exponent = 1.0;
      s.amplitude = 50.0;
      s.event_gain = true;
    } else if (name == "SaO2") {
      s.baseline = Baseline::kSaturation;
      s.amplitude = 1.0;
      s.event_dip = true;
    } else if (name == "ECG") {
      s.baseline = Baseline::kCardiac;
      s.amplitude = 1.0;
    } else {  // EEG derivations
      s.exponent = 1.0;
      s.amplitude = 20.0;
      s.event_gain = true;
    }
    specs.push_back(s);
  }
  return specs;
}

void SynthConfig::validate() const {
  if (n_records < 1) config_error("n_records must be >= 1");
  if (!(fs > 0.0)) config_error("fs must be positive");
  if (!(duration_s > 0.0)) config_error("duration_s must be positive");
  if (!(prevalence > 0.0 && prevalence < 0.5)) config_error("prevalence must lie in (0, 0.5)");
  if (!(event_min_s > 0.0 && event_min_s <= event_max_s && event_max_s < duration_s))
    config_error("event duration range must lie within (0, duration_s)");
  std::set<std::string> names;
  for (const auto& c : channels)
    if (!names.insert(c.name).second) config_error("duplicate channel '" + c.name + "'");
}

SynthRecord synth_record(const SynthConfig& cfg, std::size_t index) {
  cfg.validate();
  const auto specs = cfg.channels.empty() ? default_channel_specs() : cfg.channels;
  const std::uint64_t record_seed = derive_seed(cfg.seed, "synth", index);
  Rng rng(record_seed);
  const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.fs));

  SynthRecord out;
  out.events = place_events(rng, n, cfg);

  Record& rec = out.record;
  std::ostringstream id;
  id << cfg.id_prefix << '-' << std::setw(4) << std::setfill('0') << index;
  rec.id = id.str();
  rec.fs = cfg.fs;
  rec.targets.assign(n, Label::kNonArousal);
  for (const auto& e : out.events)
    std::fill_n(rec.targets.begin() + static_cast<std::ptrdiff_t>(e.start), e.length, Label::kArousal);
  rec.samples = MatrixF(n, specs.size());

  const auto ramp = static_cast<std::size_t>(0.25 * cfg.fs);
  for (std::size_t c = 0; c < specs.size(); ++c) {
    const ChannelSpec& spec = specs[c];
    rec.channel_names.push_back(spec.name);
    Rng crng(derive_seed(record_seed, "channel", c));
    std::vector<double> x = baseline(spec, crng, n, cfg.fs);

    if (spec.event_gain) {
      std::vector<double> gain(n, 0.0), burst_env(n, 0.0);
      std::vector<double> burst(n, 0.0);
      for (const auto& e : out.events) {
        add_window(gain, e.start, e.length, ramp, uniform(crng, 2.0, 4.0) - 1.0);
        const double f = uniform(crng, 0.1 * cfg.fs, 0.175 * cfg.fs);
        const double phase = uniform(crng, 0.0, kTwoPi);
        std::fill(burst_env.begin(), burst_env.end(), 0.0);
        add_window(burst_env, e.start, e.length, ramp, 1.0);
        for (std::size_t i = e.start; i < e.start + e.length; ++i)
          burst[i] += burst_env[i] * std::sin(kTwoPi * f * static_cast<double>(i) / cfg.fs + phase);
      }
      for (std::size_t i = 0; i < n; ++i)
        x[i] = x[i] * (1.0 + gain[i]) + spec.amplitude * burst[i];
    }
    if (spec.event_dip) {
      std::vector<double> dip(n, 0.0);
      const auto lag = static_cast<std::size_t>(5.0 * cfg.fs);
      for (const auto& e : out.events) {
        const std::size_t start = e.start + lag;
        if (start >= n) continue;
        const std::size_t length = e.length + lag;
        const double depth = uniform(crng, 2.0, 4.0);
        for (std::size_t i = 0; i < length && start + i < n; ++i)
          dip[start + i] += depth * std::pow(std::sin(std::numbers::pi * static_cast<double>(i) /
                                                      static_cast<double>(length)), 2);
      }
      for (std::size_t i = 0; i < n; ++i) x[i] -= dip[i];
    }
    for (std::size_t i = 0; i < n; ++i) rec.samples(i, c) = static_cast<float>(x[i]);
  }
  return out;
}

std::vector<SynthRecord> synth_generate_with_events(const SynthConfig& cfg, int jobs) {
  cfg.validate();
  std::vector<SynthRecord> out(cfg.n_records);
  std::vector<std::exception_ptr> errors(cfg.n_records);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < cfg.n_records; ++i) {
    try {
      out[i] = synth_record(cfg, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Record> synth_generate(const SynthConfig& cfg, int jobs) {
  auto with_events = synth_generate_with_events(cfg, jobs);
  std::vector<Record> out;
  out.reserve(with_events.size());
  for (auto& r : with_events) out.push_back(std::move(r.record));
  return out;
}

}  // namespace arousal::data
