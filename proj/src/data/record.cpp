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

#include "arousal/data/record.hpp"

#include <cmath>
#include <string>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"

namespace arousal::data {

std::vector<double> Record::channel(std::size_t c) const {
  std::vector<double> out(n_samples());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = samples(i, c);
  return out;
}

void Record::validate() const {
  if (!(fs > 0.0)) throw Error(ErrorKind::kConfig, "record " + id + ": fs must be positive");
  if (channel_names.size() != n_channels())
    throw Error(ErrorKind::kShape, "record " + id + ": " + std::to_string(channel_names.size()) +
                                       " channel names for " + std::to_string(n_channels()) +
                                       " channels");
  if (targets.size() != n_samples())
    throw Error(ErrorKind::kShape, "record " + id + ": " + std::to_string(targets.size()) +
                                       " targets for " + std::to_string(n_samples()) + " samples");
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!is_valid_label(static_cast<std::uint8_t>(targets[i])))
      throw Error(ErrorKind::kInput, "record " + id + ": unknown label at sample " +
                                         std::to_string(i));
}

void save_record(const Record& rec, const std::filesystem::path& dir) {
  rec.validate();
  io::ensure_directory(dir);
  io::Json header;
  header["format_version"] = io::kFormatVersion;
  header["id"] = rec.id;
  header["fs"] = rec.fs;
  header["channel_names"] = rec.channel_names;
  header["n_samples"] = rec.n_samples();
  io::write_json(dir / "header.json", header);
  io::write_f32(dir / "signals.dat", rec.samples.flat());
  std::vector<std::uint8_t> bytes(rec.targets.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(rec.targets[i]);
  io::write_u8(dir / "targets.dat", bytes);
}

Record load_record(const std::filesystem::path& dir) {
  const auto header_path = dir / "header.json";
  const io::Json header = io::read_json(header_path);
  io::check_format_version(header, header_path);
  Record rec;
  std::size_t n_samples = 0;
  try {
    rec.id = header.at("id").get<std::string>();
    rec.fs = header.at("fs").get<double>();
    rec.channel_names = header.at("channel_names").get<std::vector<std::string>>();
    n_samples = header.at("n_samples").get<std::size_t>();
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, header_path.string() + ": " + e.what());
  }
  const std::size_t C = rec.channel_names.size();
  if (C == 0) throw Error(ErrorKind::kHeader, header_path.string() + ": no channels");

  const auto signals = dir / "signals.dat";
  std::error_code ec;
  const auto bytes = std::filesystem::file_size(signals, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot stat " + signals.string());
  // A whole number of samples at the wrong width is a dimension mismatch; any
  // other size is truncation, reported by read_f32.
  const std::uintmax_t sample_bytes = sizeof(float) * n_samples;
  if (n_samples > 0 && bytes % sample_bytes == 0 && bytes != sample_bytes * C) {
    throw Error(ErrorKind::kDimension,
                signals.string() + ": data holds " + std::to_string(bytes / sample_bytes) +
                    " channels per sample, header declares " + std::to_string(C));
  }
  const auto values = io::read_f32(signals, n_samples * C);
  rec.samples = MatrixF(n_samples, C);
  std::copy(values.begin(), values.end(), rec.samples.data());

  const auto raw = io::read_u8(dir / "targets.dat", n_samples);
  rec.targets.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (!is_valid_label(raw[i]))
      throw Error(ErrorKind::kInput, (dir / "targets.dat").string() + ": unknown label " +
                                         std::to_string(raw[i]) + " at sample " + std::to_string(i));
    rec.targets[i] = static_cast<Label>(raw[i]);
  }
  return rec;
}

}  // namespace arousal::data
