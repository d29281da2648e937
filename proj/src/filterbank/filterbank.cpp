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

#include "arousal/filterbank/filterbank.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "arousal/core/errors.hpp"

namespace arousal::filterbank {
namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::kConfig, "invalid filter bank config: " + what);
}

double gaussian(double x, double sigma) {
  return std::exp(-(x * x) / (2.0 * sigma * sigma));
}

// Morlet spectrum with the DC correction subtracted; zero for hz <= 0.
double morlet(double hz, double center, double sigma) {
  if (hz <= 0.0) return 0.0;
  const double v = gaussian(hz - center, sigma) -
                   gaussian(center, sigma) * gaussian(hz, sigma);
  return std::max(v, 0.0);
}

double grid_frequency(std::size_t k, std::size_t n, double fs) {
  const double step = fs / static_cast<double>(n);
  return k <= n / 2 ? static_cast<double>(k) * step
                    : -static_cast<double>(n - k) * step;
}

struct RawBank {
  double phi_sigma;
  std::vector<double> centers;
  std::vector<double> sigmas;

  double phi(double hz) const { return gaussian(hz, phi_sigma); }

  double psi_energy(double hz) const {
    double s = 0.0;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double v = morlet(hz, centers[j], sigmas[j]);
      s += v * v;
    }
    return s;
  }

  // Largest gain^-2 for which phi^2 + gain^2 * psi_energy <= 1 at hz.
  double ratio(double hz) const {
    const double ph = phi(hz);
    const double room = 1.0 - ph * ph;
    if (room <= 1e-12) return 0.0;
    return psi_energy(hz) / room;
  }
};

// Maximum of RawBank::ratio over (0, fs/2]: dense log-spaced scan, then a
// golden-section refinement around the best sample.
double max_ratio(const RawBank& raw, double fs) {
  const double lowest = std::min(raw.centers.back(), raw.phi_sigma);
  const double f_lo = lowest * 1e-3;
  const double f_hi = fs / 2.0;
  constexpr double kPerOctave = 2048.0;
  const auto steps = static_cast<std::size_t>(
      std::ceil(std::log2(f_hi / f_lo) * kPerOctave));
  const double ratio_step = std::pow(f_hi / f_lo, 1.0 / static_cast<double>(steps));

  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double f = i == steps ? f_hi : f_lo * std::pow(ratio_step, static_cast<double>(i));
    const double r = raw.ratio(f);
    if (r > best) {
      best = r;
      best_i = i;
    }
  }

  double a = f_lo * std::pow(ratio_step, static_cast<double>(best_i == 0 ? 0 : best_i - 1));
  double b = std::min(f_hi, f_lo * std::pow(ratio_step, static_cast<double>(best_i + 1)));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = raw.ratio(c), fd = raw.ratio(d);
  for (int it = 0; it < 100; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = raw.ratio(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = raw.ratio(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

void validate(const FilterBankConfig& c) {
  std::ostringstream msg;
  if (!(c.fs > 0.0) || !std::isfinite(c.fs)) config_error("fs must be positive");
  if (c.T < 2 || !std::has_single_bit(c.T))
    config_error("T must be a power of two >= 2 (got " + std::to_string(c.T) + ")");
  if (c.J < 1) config_error("J must be >= 1");
  if (c.Q < 1) config_error("Q must be >= 1");
  if (c.m_max != 1 && c.m_max != 2) config_error("m_max must be 1 or 2");
  if (c.p != 1) config_error("p must be 1 for one-dimensional signals");
  if (c.J >= 63 || (std::size_t{1} << c.J) > c.T)
    config_error("2^J must not exceed T (J=" + std::to_string(c.J) +
                 ", T=" + std::to_string(c.T) + ")");
  if (c.n_fft < 2 * c.T)
    config_error("n_fft must be >= 2*T (n_fft=" + std::to_string(c.n_fft) +
                 ", T=" + std::to_string(c.T) + ")");
  if (!std::has_single_bit(c.n_fft)) config_error("n_fft must be a power of two");

  const double r = std::pow(2.0, 1.0 / c.Q);
  const double sigma0 = kMotherCenter * c.fs * (r - 1.0) / (r + 1.0) * kBandwidthFactor;
  const double sigma_last = sigma0 * std::pow(2.0, -static_cast<double>(c.J * c.Q - 1) / c.Q);
  const double bin = c.fs / static_cast<double>(c.n_fft);
  if (sigma_last < bin) {
    msg << "J=" << c.J << " too large for n_fft=" << c.n_fft
        << ": lowest filter bandwidth " << sigma_last << " Hz is below one frequency bin ("
        << bin << " Hz)";
    config_error(msg.str());
  }
}

double FilterBank::phi_at(double hz) const { return gaussian(hz, phi_sigma_hz_); }

double FilterBank::psi_at(std::size_t index, double hz) const {
  const BandPass& b = psi_[index];
  return psi_gain_ * morlet(hz, b.center_hz, b.sigma_hz);
}

void FilterBank::sample(std::size_t n, std::vector<double>& phi,
                        std::vector<std::vector<double>>& psi) const {
  phi.assign(n, 0.0);
  psi.assign(psi_.size(), std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const double f = grid_frequency(k, n, config_.fs);
    phi[k] = phi_at(f);
    if (f <= 0.0) continue;
    for (std::size_t j = 0; j < psi_.size(); ++j) psi[j][k] = psi_at(j, f);
  }
}

FilterBank build_filterbank(const FilterBankConfig& config) {
  validate(config);

  FilterBank fb;
  fb.config_ = config;
  const int count = config.J * config.Q;
  const double r = std::pow(2.0, 1.0 / config.Q);
  const double xi0 = kMotherCenter * config.fs;
  const double sigma0 = xi0 * (r - 1.0) / (r + 1.0) * kBandwidthFactor;

  // Low-pass: Gaussian with time-domain sigma T/4 samples.
  const double sigma_t = static_cast<double>(config.T) / 4.0;
  fb.phi_sigma_hz_ = config.fs / (2.0 * std::numbers::pi * sigma_t);

  RawBank raw{fb.phi_sigma_hz_, {}, {}};
  for (int j = 0; j < count; ++j) {
    const double scale = std::pow(2.0, -static_cast<double>(j) / config.Q);
    raw.centers.push_back(xi0 * scale);
    raw.sigmas.push_back(sigma0 * scale);
  }
  fb.psi_gain_ = 1.0 / std::sqrt(max_ratio(raw, config.fs));

  for (int j = 0; j < count; ++j)
    fb.psi_.push_back({j, raw.centers[j], raw.sigmas[j], {}});

  std::vector<std::vector<double>> psi_grid;
  fb.sample(config.n_fft, fb.phi_hat_, psi_grid);
  for (int j = 0; j < count; ++j) fb.psi_[j].spectrum = std::move(psi_grid[j]);

  fb.bounds_ = littlewood_paley_bounds(fb);
  return fb;
}

FrameBounds littlewood_paley_bounds(std::span<const double> phi,
                                    std::span<const std::vector<double>> psi,
                                    double fs, double lo_hz, double hi_hz) {
  const std::size_t n = phi.size();
  FrameBounds out{std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    const double f = grid_frequency(k, n, fs);
    if (f < lo_hz || f > hi_hz) continue;
    double s = phi[k] * phi[k];
    for (const auto& spec : psi) s += spec[k] * spec[k];
    out.low = std::min(out.low, s);
    out.high = std::max(out.high, s);
    any = true;
  }
  if (!any) return {0.0, 0.0};
  return out;
}

FrameBounds littlewood_paley_bounds(const FilterBank& fb) {
  return littlewood_paley_bounds(fb, 0.0, fb.config().fs / 2.0);
}

FrameBounds littlewood_paley_bounds(const FilterBank& fb, double lo_hz, double hi_hz) {
  std::vector<std::vector<double>> psi;
  psi.reserve(fb.psi().size());
  for (const auto& b : fb.psi()) psi.push_back(b.spectrum);
  return littlewood_paley_bounds(fb.phi_hat(), psi, fb.config().fs, lo_hz, hi_hz);
}

}  // namespace arousal::filterbank
