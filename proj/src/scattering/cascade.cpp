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

#include "arousal/scattering/cascade.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <string>

#include "arousal/core/errors.hpp"
#include "arousal/scattering/labels.hpp"
#include "cascade_internal.hpp"

namespace arousal::scattering {

using fft::Complex;

namespace detail {

CascadeGrid make_grid(std::size_t n_samples, const filterbank::FilterBank& fb) {
  const auto& cfg = fb.config();
  CascadeGrid g;
  g.n_samples = n_samples;
  g.T = cfg.T;
  g.frames = frame_count(n_samples, cfg.T);
  g.N = cascade_grid_length(n_samples, cfg);
  g.L = g.N / g.T;
  fb.sample(g.N, g.phi, g.psi);
  g.paths = enumerate_paths(static_cast<int>(fb.num_wavelets()), cfg.m_max,
                            cfg.include_order0);
  return g;
}

void check_finite(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]))
      throw Error(ErrorKind::kInput, "non-finite sample at index " + std::to_string(i));
}

std::vector<Complex> padded_spectrum(std::span<const double> x, std::size_t N) {
  std::vector<Complex> buf(N, Complex{});
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  fft::forward(buf);
  return buf;
}

}  // namespace detail

std::size_t frame_count(std::size_t n_samples, std::size_t T) {
  return std::max<std::size_t>(1, (n_samples + T - 1) / T);
}

std::size_t cascade_grid_length(std::size_t n_samples,
                                const filterbank::FilterBankConfig& config) {
  const std::size_t padded = frame_count(n_samples, config.T) * config.T;
  const std::size_t blocks = (padded + config.n_fft + config.T - 1) / config.T;
  return fft::good_size(blocks) * config.T;
}

namespace {

// Low-pass with phi and sample at n*T + T/2 for n < frames, computed from
// the full-grid spectrum by folding it onto L bins:
//   y[nT + T/2] = 1/T * IDFT_L( sum_r Y[m + rL] phi[m + rL] (-1)^r ) * e^{i pi m / L}
// which is exact for N = T*L.
void lowpass_decimate(std::span<const Complex> spectrum, const detail::CascadeGrid& g,
                      std::vector<Complex>& fold, std::span<double> out,
                      std::size_t stride, bool clamp) {
  const std::size_t L = g.L;
  fold.assign(L, Complex{});
  for (std::size_t r = 0; r < g.T; ++r) {
    const double sign = (r & 1) ? -1.0 : 1.0;
    const Complex* s = spectrum.data() + r * L;
    const double* ph = g.phi.data() + r * L;
    for (std::size_t m = 0; m < L; ++m) fold[m] += sign * ph[m] * s[m];
  }
  for (std::size_t m = 0; m < L; ++m)
    fold[m] *= std::polar(1.0, std::numbers::pi * static_cast<double>(m) / static_cast<double>(L));
  fft::inverse(fold);
  const double inv_t = 1.0 / static_cast<double>(g.T);
  for (std::size_t n = 0; n < g.frames; ++n) {
    const double v = fold[n].real() * inv_t;
    out[n * stride] = clamp ? std::max(0.0, v) : v;
  }
}

// Analytic band-pass of a spectrum, modulus in time, back to a spectrum.
void modulus_spectrum(std::span<const Complex> in, std::span<const double> psi,
                      std::vector<Complex>& work) {
  const std::size_t N = in.size();
  work.resize(N);
  for (std::size_t k = 0; k < N; ++k) work[k] = in[k] * psi[k];
  fft::inverse(work);
  for (auto& v : work) v = std::abs(v);
  fft::forward(work);
}

MatrixD scatter_on_grid(std::span<const double> x, const detail::CascadeGrid& g,
                        const filterbank::FilterBank& fb) {
  detail::check_finite(x);
  const auto& cfg = fb.config();
  const std::size_t n_wav = g.psi.size();
  const std::size_t M = g.paths.size();
  MatrixD out(g.frames, M);

  const std::vector<Complex> X = detail::padded_spectrum(x, g.N);
  std::vector<Complex> fold, u1, u2;
  std::span<double> flat = out.flat();

  std::size_t col = 0;
  if (cfg.include_order0) lowpass_decimate(X, g, fold, flat.subspan(col++), M, false);

  // Order-1 columns come first, then order-2 in (j1, j2) order.
  std::size_t col2 = col + n_wav;
  for (std::size_t j1 = 0; j1 < n_wav; ++j1) {
    modulus_spectrum(X, g.psi[j1], u1);
    lowpass_decimate(u1, g, fold, flat.subspan(col + j1), M, true);
    if (cfg.m_max < 2) continue;
    for (std::size_t j2 = j1 + 1; j2 < n_wav; ++j2) {
      modulus_spectrum(u1, g.psi[j2], u2);
      lowpass_decimate(u2, g, fold, flat.subspan(col2++), M, true);
    }
  }
  return out;
}

std::vector<double> channel_of(const data::Record& rec, std::size_t c) {
  return rec.channel(c);
}

}  // namespace

MatrixD scatter_channel(std::span<const double> x, const filterbank::FilterBank& fb) {
  const auto grid = detail::make_grid(x.size(), fb);
  return scatter_on_grid(x, grid, fb);
}

ScatteringFeatures scatter_record(const data::Record& rec,
                                  const filterbank::FilterBank& fb, int jobs) {
  rec.validate();
  if (rec.n_channels() == 0)
    throw Error(ErrorKind::kInput, "record " + rec.id + " has no channels");
  const auto grid = detail::make_grid(rec.n_samples(), fb);
  const std::size_t C = rec.n_channels();
  const std::size_t M = grid.paths.size();

  ScatteringFeatures out;
  out.record_id = rec.id;
  out.channel_names = rec.channel_names;
  out.paths = grid.paths;
  out.frame_rate = fb.config().fs / static_cast<double>(fb.config().T);
  out.n_frames = grid.frames;
  out.data.assign(grid.frames * C * M, 0.0);
  out.frame_targets = frame_labels(rec.targets, fb.config().T);

  std::vector<std::exception_ptr> errors(C);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t c = 0; c < C; ++c) {
    try {
      const MatrixD coeffs = scatter_on_grid(channel_of(rec, c), grid, fb);
      for (std::size_t f = 0; f < grid.frames; ++f)
        std::copy_n(coeffs.row(f).data(), M, out.data.data() + (f * C + c) * M);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (std::size_t c = 0; c < C; ++c) {
    if (!errors[c]) continue;
    try {
      std::rethrow_exception(errors[c]);
    } catch (const Error& e) {
      throw Error(e.kind(), "channel " + rec.channel_names[c] + ": " + e.what());
    }
  }
  return out;
}

}  // namespace arousal::scattering
