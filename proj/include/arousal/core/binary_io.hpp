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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

// Little-endian array files and JSON headers shared by every on-disk
// container (records, features, models, predictions).
namespace arousal::io {

namespace fs = std::filesystem;
using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

void write_f32(const fs::path& path, std::span<const float> values);
void write_f32(const fs::path& path, std::span<const double> values);
void write_f64(const fs::path& path, std::span<const double> values);
void write_u8(const fs::path& path, std::span<const std::uint8_t> values);

// Readers check the file size against `count` and raise a truncation error
// naming both sizes when they disagree.
std::vector<float> read_f32(const fs::path& path, std::size_t count);
std::vector<double> read_f64(const fs::path& path, std::size_t count);
std::vector<std::uint8_t> read_u8(const fs::path& path, std::size_t count);

void write_json(const fs::path& path, const Json& doc);
Json read_json(const fs::path& path);

// Throws a header error if the document's format_version is missing or newer
// than this build understands.
void check_format_version(const Json& doc, const fs::path& path);

// Creates `dir` (and parents); raises an I/O error when that fails.
void ensure_directory(const fs::path& dir);

}  // namespace arousal::io
