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

#include "arousal/ensemble/ensemble.hpp"

#include <algorithm>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"

namespace arousal::ensemble {

MatrixD average_posteriors(std::span<const MatrixD> members) {
  if (members.empty()) throw Error(ErrorKind::kInput, "ensemble needs at least one member");
  const std::size_t rows = members.front().rows(), cols = members.front().cols();
  for (const auto& m : members)
    if (m.rows() != rows || m.cols() != cols)
      throw Error(ErrorKind::kShape, "ensemble members differ in shape");
  MatrixD out(rows, cols);
  auto dst = out.flat();
  const double n = static_cast<double>(members.size());
  std::vector<double> v(members.size());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    for (std::size_t m = 0; m < members.size(); ++m) v[m] = members[m].flat()[i];
    std::sort(v.begin(), v.end());
    double acc = 0.0;
    for (double x : v) acc += x - v.front();
    dst[i] = v.front() + acc / n;
  }
  return out;
}

std::vector<Label> fuse_label(const MatrixD& averaged) {
  std::vector<Label> labels(averaged.rows());
  for (std::size_t t = 0; t < averaged.rows(); ++t) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < averaged.cols(); ++c)
      if (averaged(t, c) >= averaged(t, best)) best = c;
    labels[t] = static_cast<Label>(best);
  }
  return labels;
}

std::vector<double> arousal_score(const MatrixD& averaged) {
  std::vector<double> s(averaged.rows());
  for (std::size_t t = 0; t < s.size(); ++t) s[t] = averaged(t, 2);
  return s;
}

EnsemblePrediction fuse(std::vector<MatrixD> members) {
  EnsemblePrediction p;
  p.averaged = average_posteriors(members);
  p.labels = fuse_label(p.averaged);
  p.member_probs = std::move(members);
  return p;
}

void save_prediction(const PredictionFile& pred, const std::filesystem::path& dir) {
  if (pred.probs.cols() != 3) throw Error(ErrorKind::kShape, "predictions must have 3 columns");
  io::ensure_directory(dir);
  io::Json doc;
  doc["format_version"] = io::kFormatVersion;
  doc["record_id"] = pred.record_id;
  doc["n_members"] = pred.n_members;
  doc["frame_rate"] = pred.frame_rate;
  doc["n_frames"] = pred.probs.rows();
  io::write_json(dir / "pred.json", doc);
  io::write_f32(dir / "probs.dat", pred.probs.flat());
}

PredictionFile load_prediction(const std::filesystem::path& dir) {
  const auto header = dir / "pred.json";
  const io::Json doc = io::read_json(header);
  io::check_format_version(doc, header);
  PredictionFile p;
  std::size_t frames = 0;
  try {
    p.record_id = doc.at("record_id").get<std::string>();
    p.n_members = doc.at("n_members").get<std::size_t>();
    p.frame_rate = doc.at("frame_rate").get<double>();
    frames = doc.at("n_frames").get<std::size_t>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, header.string() + ": " + e.what());
  }
  const auto values = io::read_f32(dir / "probs.dat", frames * 3);
  p.probs = MatrixD(frames, 3);
  std::copy(values.begin(), values.end(), p.probs.data());
  return p;
}

}  // namespace arousal::ensemble
