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

#include "arousal/data/partition.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"

namespace arousal::data {

std::vector<std::string> DatasetIndex::held_out() const { return fold(kHeldOut); }

std::vector<std::string> DatasetIndex::fold(int k) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (assignment[i] == k) out.push_back(ids[i]);
  return out;
}

DatasetIndex partition(const std::vector<std::string>& ids, std::uint64_t seed) {
  if (ids.size() < 12)
    throw Error(ErrorKind::kPartition, "partition needs at least 12 records, got " +
                                           std::to_string(ids.size()));
  if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size())
    throw Error(ErrorKind::kPartition, "record ids must be unique");

  const std::size_t n = ids.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_index(rng, i + 1)]);

  DatasetIndex index;
  index.ids = ids;
  index.seed = seed;
  index.assignment.assign(n, kHeldOut);
  const std::size_t n_hot = (n + 9) / 10;
  const std::size_t pool = n - n_hot;
  const std::size_t base = pool / kNumFolds, extra = pool % kNumFolds;
  std::size_t pos = n_hot;
  for (int k = 0; k < kNumFolds; ++k) {
    const std::size_t size = base + (static_cast<std::size_t>(k) < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) index.assignment[order[pos++]] = k;
  }
  return index;
}

FoldRoles fold_roles(const DatasetIndex& index, int k) {
  if (k < 0 || k >= kNumFolds)
    throw Error(ErrorKind::kConfig, "fold must be in 0..9, got " + std::to_string(k));
  const int val = (k + 1) % kNumFolds;
  FoldRoles roles;
  for (std::size_t i = 0; i < index.ids.size(); ++i) {
    const int a = index.assignment[i];
    if (a == kHeldOut) continue;
    if (a == k) roles.test.push_back(index.ids[i]);
    else if (a == val) roles.val.push_back(index.ids[i]);
    else roles.train.push_back(index.ids[i]);
  }
  return roles;
}

void save_index(const DatasetIndex& index, const std::filesystem::path& file) {
  io::Json doc;
  doc["format_version"] = io::kFormatVersion;
  doc["seed"] = index.seed;
  io::Json records = io::Json::array();
  for (std::size_t i = 0; i < index.ids.size(); ++i) {
    const int a = index.assignment[i];
    records.push_back({{"id", index.ids[i]},
                       {"split", a == kHeldOut ? io::Json("hot") : io::Json(a)}});
  }
  doc["records"] = records;
  io::write_json(file, doc);
}

DatasetIndex load_index(const std::filesystem::path& file) {
  const io::Json doc = io::read_json(file);
  io::check_format_version(doc, file);
  DatasetIndex index;
  try {
    index.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& r : doc.at("records")) {
      index.ids.push_back(r.at("id").get<std::string>());
      const auto& split = r.at("split");
      if (split.is_string()) {
        if (split.get<std::string>() != "hot")
          throw Error(ErrorKind::kHeader, file.string() + ": unknown split " + split.dump());
        index.assignment.push_back(kHeldOut);
      } else {
        const int k = split.get<int>();
        if (k < 0 || k >= kNumFolds)
          throw Error(ErrorKind::kHeader, file.string() + ": fold out of range");
        index.assignment.push_back(k);
      }
    }
  } catch (const io::Json::exception& e) {
    throw Error(ErrorKind::kHeader, file.string() + ": " + e.what());
  }
  return index;
}

}  // namespace arousal::data
