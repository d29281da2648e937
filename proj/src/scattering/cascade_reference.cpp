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

#include <algorithm>
#include <complex>

#include "arousal/core/errors.hpp"
#include "arousal/scattering/cascade.hpp"
#include "arousal/scattering/labels.hpp"
#include "cascade_internal.hpp"

namespace arousal::scattering::reference {

using fft::Complex;

namespace {

std::vector<Complex> filtered(const std::vector<Complex>& spectrum,
                              const std::vector<double>& filter) {
  std::vector<Complex> out(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) out[k] = spectrum[k] * filter[k];
  fft::inverse(out);
  return out;
}

std::vector<Complex> modulus_then_spectrum(std::vector<Complex> signal) {
  for (auto& v : signal) v = std::abs(v);
  fft::forward(signal);
  return signal;
}

void averaged_column(const std::vector<Complex>& spectrum, const detail::CascadeGrid& g,
                     MatrixD& out, std::size_t col, bool clamp) {
  const auto y = filtered(spectrum, g.phi);
  for (std::size_t n = 0; n < g.frames; ++n) {
    const double v = y[n * g.T + g.T / 2].real();
    out(n, col) = clamp ? std::max(0.0, v) : v;
  }
}

}  // namespace

MatrixD scatter_channel(std::span<const double> x, const filterbank::FilterBank& fb) {
  detail::check_finite(x);
  const auto g = detail::make_grid(x.size(), fb);
  MatrixD out(g.frames, g.paths.size());
  const auto X = detail::padded_spectrum(x, g.N);

  for (std::size_t col = 0; col < g.paths.size(); ++col) {
    const ScatteringPath& p = g.paths[col];
    if (p.order == 0) {
      averaged_column(X, g, out, col, false);
      continue;
    }
    auto u = modulus_then_spectrum(filtered(X, g.psi[p.j1]));
    if (p.order == 2) u = modulus_then_spectrum(filtered(u, g.psi[p.j2]));
    averaged_column(u, g, out, col, true);
  }
  return out;
}

ScatteringFeatures scatter_record(const data::Record& rec, const filterbank::FilterBank& fb) {
  rec.validate();
  if (rec.n_channels() == 0)
    throw Error(ErrorKind::kInput, "record " + rec.id + " has no channels");
  ScatteringFeatures out;
  out.record_id = rec.id;
  out.channel_names = rec.channel_names;
  out.frame_rate = fb.config().fs / static_cast<double>(fb.config().T);
  out.frame_targets = frame_labels(rec.targets, fb.config().T);
  for (std::size_t c = 0; c < rec.n_channels(); ++c) {
    MatrixD coeffs;
    try {
      coeffs = scatter_channel(rec.channel(c), fb);
    } catch (const Error& e) {
      throw Error(e.kind(), "channel " + rec.channel_names[c] + ": " + e.what());
    }
    if (c == 0) {
      out.n_frames = coeffs.rows();
      out.paths = enumerate_paths(static_cast<int>(fb.num_wavelets()), fb.config().m_max,
                                  fb.config().include_order0);
      out.data.assign(out.n_frames * rec.n_channels() * out.paths.size(), 0.0);
    }
    for (std::size_t f = 0; f < coeffs.rows(); ++f)
      for (std::size_t m = 0; m < coeffs.cols(); ++m) out.at(f, c, m) = coeffs(f, m);
  }
  return out;
}

}  // namespace arousal::scattering::reference
