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

// Dyadic analytic Morlet filter bank for the scattering cascade.
//
// Spectra are defined analytically as functions of frequency in Hz, so the
// cascade can sample them on whatever FFT grid a signal needs. The bank also
// keeps a copy sampled on its own n_fft grid for inspection and dumping.
//
// Grid convention (all sampled spectra): bin k of an N-point grid sits at
// k*fs/N for k <= N/2 and at (k-N)*fs/N above that.
namespace arousal::filterbank {

struct FilterBankConfig {
  double fs = 200.0;          // Hz
  std::size_t n_fft = 4096;   // grid length for stored spectra; also the guard
                              // length appended before cascade FFTs
  int J = 8;                  // dyadic scales
  int Q = 1;                  // wavelets per octave
  int m_max = 2;              // deepest scattering order (1 or 2)
  std::size_t T = 512;        // averaging window and decimation stride
  int p = 1;                  // orientations; always 1 for 1-D signals
  bool include_order0 = false;  // emit the x*phi path as well

  bool operator==(const FilterBankConfig&) const = default;
};

// Throws ErrorKind::kConfig naming the violated constraint.
void validate(const FilterBankConfig& config);

struct BandPass {
  int j = 0;                 // filter index, 0 = highest frequency
  double center_hz = 0.0;    // xi_j
  double sigma_hz = 0.0;     // Gaussian bandwidth
  std::vector<double> spectrum;  // n_fft samples, zero on negative bins
};

struct FrameBounds {
  double low = 0.0;
  double high = 0.0;
};

class FilterBank {
 public:
  const FilterBankConfig& config() const noexcept { return config_; }
  std::size_t num_wavelets() const noexcept { return psi_.size(); }

  std::span<const double> phi_hat() const noexcept { return phi_hat_; }
  const std::vector<BandPass>& psi() const noexcept { return psi_; }
  FrameBounds frame_bounds() const noexcept { return bounds_; }

  double phi_sigma_hz() const noexcept { return phi_sigma_hz_; }
  // Scale applied to every raw Morlet spectrum so the Littlewood-Paley sum
  // stays below one.
  double psi_gain() const noexcept { return psi_gain_; }

  // Analytic spectra at a signed frequency in Hz.
  double phi_at(double hz) const;
  double psi_at(std::size_t index, double hz) const;

  // Samples phi and every psi on an n-point grid (see grid convention).
  void sample(std::size_t n, std::vector<double>& phi,
              std::vector<std::vector<double>>& psi) const;

 private:
  friend FilterBank build_filterbank(const FilterBankConfig& config);

  FilterBankConfig config_;
  double phi_sigma_hz_ = 0.0;
  double psi_gain_ = 1.0;
  std::vector<double> phi_hat_;
  std::vector<BandPass> psi_;
  FrameBounds bounds_;
};

// Mother center frequency as a fraction of fs, and the bandwidth factor k in
// sigma_0 = xi_0 * (2^(1/Q) - 1) / (2^(1/Q) + 1) * k.
inline constexpr double kMotherCenter = 0.425;
inline constexpr double kBandwidthFactor = 1.3;

FilterBank build_filterbank(const FilterBankConfig& config);

// Min/max of |phi|^2 + sum_j |psi_j|^2 over grid bins with frequency in
// [lo_hz, hi_hz]; the grid is `phi.size()` points at sampling rate fs.
FrameBounds littlewood_paley_bounds(std::span<const double> phi,
                                    std::span<const std::vector<double>> psi,
                                    double fs, double lo_hz, double hi_hz);

// Bounds of a built bank over [0, fs/2], or over a sub-band.
FrameBounds littlewood_paley_bounds(const FilterBank& fb);
FrameBounds littlewood_paley_bounds(const FilterBank& fb, double lo_hz,
                                    double hi_hz);

}  // namespace arousal::filterbank
