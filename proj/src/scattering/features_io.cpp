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

#include "arousal/scattering/features_io.hpp"

#include <cmath>
#include <string>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"

namespace arousal::scattering {

MatrixD ScatteringFeatures::frame_matrix() const {
  MatrixD m(n_frames, frame_width());
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

void ScatteringFeatures::validate() const {
  if (data.size() != n_frames * frame_width())
    throw Error(ErrorKind::kShape, "features '" + record_id + "': tensor has " +
                                       std::to_string(data.size()) + " values, expected " +
                                       std::to_string(n_frames * frame_width()));
  if (frame_targets.size() != n_frames)
    throw Error(ErrorKind::kShape, "features '" + record_id + "': " +
                                       std::to_string(frame_targets.size()) +
                                       " frame targets for " + std::to_string(n_frames) + " frames");
}

void save_features(const ScatteringFeatures& f, const std::filesystem::path& dir) {
  f.validate();
  io::ensure_directory(dir);
  io::Json doc;
  doc["format_version"] = io::kFormatVersion;
  doc["record_id"] = f.record_id;
  doc["frame_rate"] = f.frame_rate;
  doc["channel_names"] = f.channel_names;
  io::Json paths = io::Json::array();
  for (const auto& p : f.paths) paths.push_back({p.order, p.j1, p.j2});
  doc["paths"] = paths;
  doc["normalized"] = f.normalized;
  doc["dims"] = {f.n_frames, f.n_channels(), f.n_paths()};
  io::write_json(dir / "features.json", doc);
  io::write_f32(dir / "features.dat", std::span<const double>(f.data));
  std::vector<std::uint8_t> targets(f.frame_targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    targets[i] = static_cast<std::uint8_t>(f.frame_targets[i]);
  io::write_u8(dir / "frame_targets.dat", targets);
}

ScatteringFeatures load_features(const std::filesystem::path& dir) {
  const auto header = dir / "features.json";
  const io::Json doc = io::read_json(header);
  io::check_format_version(doc, header);
  ScatteringFeatures f;
  std::size_t channels = 0, n_paths = 0;
  try {
    f.record_id = doc.at("record_id").get<std::string>();
    f.frame_rate = doc.at("frame_rate").get<double>();
    f.channel_names = doc.at("channel_names").get<std::vector<std::string>>();
    for (const auto& p : doc.at("paths"))
      f.paths.push_back({p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()});
    f.normalized = doc.at("normalized").get<bool>();
    const auto& dims = doc.at("dims");
    f.n_frames = dims.at(0).get<std::size_t>();
    channels = dims.at(1).get<std::size_t>();
    n_paths = dims.at(2).get<std::size_t>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, header.string() + ": " + e.what());
  }
  if (channels != f.channel_names.size() || n_paths != f.paths.size())
    throw Error(ErrorKind::kDimension,
                header.string() + ": dims disagree with channel/path lists");

  const auto values = io::read_f32(dir / "features.dat", f.n_frames * channels * n_paths);
  f.data.assign(values.begin(), values.end());
  const auto bytes = io::read_u8(dir / "frame_targets.dat", f.n_frames);
  f.frame_targets.resize(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (!is_valid_label(bytes[i]))
      throw Error(ErrorKind::kInput, (dir / "frame_targets.dat").string() +
                                         ": unknown label " + std::to_string(bytes[i]));
    f.frame_targets[i] = static_cast<Label>(bytes[i]);
  }
  return f;
}

}  // namespace arousal::scattering
