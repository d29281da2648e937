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

#include "arousal/scattering/normalizer.hpp"

#include <algorithm>
#include <cmath>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"

namespace arousal::scattering {
namespace {

void check_layout(const ScatteringFeatures& f, const std::vector<std::string>& channels,
                  const std::vector<ScatteringPath>& paths, const std::string& what) {
  if (f.channel_names != channels || f.paths != paths)
    throw Error(ErrorKind::kShape, what + ": channel/path layout of record '" + f.record_id +
                                       "' does not match");
}

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

NormalizerParams fit_normalizer(std::span<const ScatteringFeatures> train,
                                std::vector<double> mu, double eps) {
  if (train.empty()) throw Error(ErrorKind::kFit, "cannot fit normalizer on an empty training set");
  if (!(eps > 0.0)) throw Error(ErrorKind::kConfig, "normalizer eps must be positive");

  const ScatteringFeatures& first = train.front();
  NormalizerParams norm;
  norm.channel_names = first.channel_names;
  norm.paths = first.paths;
  norm.eps = eps;
  const std::size_t C = first.n_channels(), M = first.n_paths();

  if (mu.empty()) mu.assign(M, 1.0);
  if (mu.size() != M)
    throw Error(ErrorKind::kShape, "mu has " + std::to_string(mu.size()) + " entries for " +
                                       std::to_string(M) + " paths");
  for (double m : mu)
    if (!(m > 0.0)) throw Error(ErrorKind::kConfig, "mu values must be positive");
  norm.mu = std::move(mu);

  std::size_t total_frames = 0;
  for (const auto& f : train) {
    if (f.normalized)
      throw Error(ErrorKind::kState, "fit_normalizer needs raw features ('" + f.record_id + "')");
    check_layout(f, norm.channel_names, norm.paths, "fit_normalizer");
    total_frames += f.n_frames;
  }
  if (total_frames == 0) throw Error(ErrorKind::kFit, "training features contain no frames");

  norm.medians.assign(C * M, eps);
  std::vector<double> pool;
  pool.reserve(total_frames);
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t m = 0; m < M; ++m) {
      pool.clear();
      for (const auto& f : train)
        for (std::size_t t = 0; t < f.n_frames; ++t) pool.push_back(f.at(t, c, m));
      norm.medians[c * M + m] = std::max(median_of(pool), eps);
    }
  }
  return norm;
}

ScatteringFeatures apply_normalizer(const ScatteringFeatures& features,
                                    const NormalizerParams& norm) {
  if (features.normalized)
    throw Error(ErrorKind::kState, "features of '" + features.record_id + "' are already normalized");
  check_layout(features, norm.channel_names, norm.paths, "apply_normalizer");
  ScatteringFeatures out = features;
  const std::size_t C = features.n_channels(), M = features.n_paths();
#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < features.n_frames; ++t)
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t m = 0; m < M; ++m)
        out.at(t, c, m) = std::log1p(norm.mu[m] * features.at(t, c, m) / norm.median(c, m));
  out.normalized = true;
  return out;
}

namespace {
io::Json paths_to_json(const std::vector<ScatteringPath>& paths) {
  io::Json arr = io::Json::array();
  for (const auto& p : paths) arr.push_back({p.order, p.j1, p.j2});
  return arr;
}
}  // namespace

void save_normalizer(const NormalizerParams& norm, const std::filesystem::path& file) {
  io::Json doc;
  doc["format_version"] = io::kFormatVersion;
  doc["channel_names"] = norm.channel_names;
  doc["paths"] = paths_to_json(norm.paths);
  doc["medians"] = norm.medians;
  doc["mu"] = norm.mu;
  doc["eps"] = norm.eps;
  io::write_json(file, doc);
}

NormalizerParams load_normalizer(const std::filesystem::path& file) {
  const io::Json doc = io::read_json(file);
  io::check_format_version(doc, file);
  NormalizerParams norm;
  try {
    norm.channel_names = doc.at("channel_names").get<std::vector<std::string>>();
    for (const auto& p : doc.at("paths"))
      norm.paths.push_back({p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()});
    norm.medians = doc.at("medians").get<std::vector<double>>();
    norm.mu = doc.at("mu").get<std::vector<double>>();
    norm.eps = doc.at("eps").get<double>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, file.string() + ": " + e.what());
  }
  if (norm.medians.size() != norm.channel_names.size() * norm.paths.size() ||
      norm.mu.size() != norm.paths.size())
    throw Error(ErrorKind::kDimension, file.string() + ": normalizer dimensions disagree");
  return norm;
}

std::vector<double> load_mu(const std::filesystem::path& file, std::size_t n_paths) {
  const io::Json doc = io::read_json(file);
  std::vector<double> mu;
  try {
    mu = (doc.is_object() ? doc.at("mu") : doc).get<std::vector<double>>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, file.string() + ": " + e.what());
  }
  if (mu.size() != n_paths)
    throw Error(ErrorKind::kDimension, file.string() + ": expected " + std::to_string(n_paths) +
                                           " mu values, found " + std::to_string(mu.size()));
  return mu;
}

}  // namespace arousal::scattering
