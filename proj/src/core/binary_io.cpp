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

#include "arousal/core/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "arousal/core/errors.hpp"

namespace arousal::io {
namespace {

static_assert(std::endian::native == std::endian::little,
              "on-disk formats assume a little-endian host");

void write_bytes(const fs::path& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

template <typename T>
std::vector<T> read_array(const fs::path& path, std::size_t count) {
  std::error_code ec;
  const auto actual = fs::file_size(path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot stat " + path.string() + ": " + ec.message());
  const std::uintmax_t expected = count * sizeof(T);
  if (actual != expected) {
    std::ostringstream msg;
    msg << path.string() << ": expected " << expected << " bytes, found " << actual;
    throw Error(ErrorKind::kTruncation, msg.str());
  }
  std::vector<T> values(count);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(expected));
  if (!in) throw Error(ErrorKind::kIo, "read failed: " + path.string());
  return values;
}

}  // namespace

void write_f32(const fs::path& path, std::span<const float> values) {
  write_bytes(path, values.data(), values.size_bytes());
}

void write_f32(const fs::path& path, std::span<const double> values) {
  std::vector<float> narrowed(values.begin(), values.end());
  write_f32(path, std::span<const float>(narrowed));
}

void write_f64(const fs::path& path, std::span<const double> values) {
  write_bytes(path, values.data(), values.size_bytes());
}

void write_u8(const fs::path& path, std::span<const std::uint8_t> values) {
  write_bytes(path, values.data(), values.size_bytes());
}

std::vector<float> read_f32(const fs::path& path, std::size_t count) {
  return read_array<float>(path, count);
}

std::vector<double> read_f64(const fs::path& path, std::size_t count) {
  return read_array<double>(path, count);
}

std::vector<std::uint8_t> read_u8(const fs::path& path, std::size_t count) {
  return read_array<std::uint8_t>(path, count);
}

void write_json(const fs::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kHeader, path.string() + ": " + e.what());
  }
}

void check_format_version(const Json& doc, const fs::path& path) {
  if (!doc.is_object() || !doc.contains("format_version") ||
      !doc["format_version"].is_number_integer())
    throw Error(ErrorKind::kHeader, path.string() + ": missing format_version");
  const int v = doc["format_version"].get<int>();
  if (v < 1 || v > kFormatVersion)
    throw Error(ErrorKind::kHeader,
                path.string() + ": unsupported format_version " + std::to_string(v));
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::kIo, "cannot create directory " + dir.string());
}

}  // namespace arousal::io
