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
#include <cmath>
#include <fstream>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/data/channels.hpp"
#include "arousal/data/padding.hpp"
#include "arousal/data/partition.hpp"
#include "arousal/data/record.hpp"
#include "arousal/data/synth.hpp"
#include "arousal/scattering/paths.hpp"
#include "test_util.hpp"

using namespace arousal;
using namespace arousal::data;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kUsage;
}

Record small_record() {
  Record r;
  r.id = "rec";
  r.fs = 200.0;
  r.channel_names = {"F3-M2", "SaO2", "ECG"};
  r.samples = MatrixF(50, 3);
  Rng rng(1);
  for (float& v : r.samples.flat()) v = static_cast<float>(standard_normal(rng));
  r.targets.assign(50, Label::kNonArousal);
  std::fill(r.targets.begin() + 10, r.targets.begin() + 20, Label::kArousal);
  return r;
}

std::vector<std::string> make_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("id" + std::to_string(i));
  return ids;
}

}  // namespace

TEST_CASE("record round-trip and container errors") {
  testing::TempDir dir("rec");
  const Record r = small_record();
  save_record(r, dir / "r");
  CHECK(load_record(dir / "r") == r);

  std::filesystem::copy(dir / "r", dir / "t");
  testing::truncate_file(dir / "t" / "signals.dat", 1);
  try {
    load_record(dir / "t");
    FAIL("expected truncation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTruncation);
    CHECK(std::string(e.what()).find("600") != std::string::npos);
    CHECK(std::string(e.what()).find("599") != std::string::npos);
  }

  // header claims two channels while the data has three columns
  std::filesystem::copy(dir / "r", dir / "d");
  auto header = io::read_json(dir / "d" / "header.json");
  header["channel_names"] = {"F3-M2", "SaO2"};
  io::write_json(dir / "d" / "header.json", header);
  CHECK(kind_of([&] { load_record(dir / "d"); }) == ErrorKind::kDimension);

  std::filesystem::copy(dir / "r", dir / "h");
  {
    std::ofstream out(dir / "h" / "header.json");
    out << "{\"id\": ";
  }
  CHECK(kind_of([&] { load_record(dir / "h"); }) == ErrorKind::kHeader);
  CHECK(kind_of([&] { load_record(dir / "missing"); }) == ErrorKind::kIo);
}

TEST_CASE("record validation") {
  Record r = small_record();
  r.targets.pop_back();
  CHECK_THROWS_AS(r.validate(), Error);
  r = small_record();
  r.fs = 0.0;
  CHECK_THROWS_AS(r.validate(), Error);
  r = small_record();
  r.channel_names.pop_back();
  CHECK_THROWS_AS(r.validate(), Error);
}

TEST_CASE("partition") {
  const auto ids = make_ids(20);
  const auto idx = partition(ids, 5);
  CHECK(idx.held_out().size() == 2);
  std::vector<std::size_t> sizes;
  for (int k = 0; k < 10; ++k) sizes.push_back(idx.fold(k).size());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 2, 2, 2, 2, 2, 2, 1, 1});
  CHECK(partition(ids, 5) == idx);
  CHECK_FALSE(partition(ids, 6) == idx);

  // disjoint cover
  std::multiset<std::string> seen;
  for (const auto& id : idx.held_out()) seen.insert(id);
  for (int k = 0; k < 10; ++k)
    for (const auto& id : idx.fold(k)) seen.insert(id);
  CHECK(seen == std::multiset<std::string>(ids.begin(), ids.end()));

  const auto roles = fold_roles(idx, 0);
  CHECK(roles.test == idx.fold(0));
  CHECK(roles.val == idx.fold(1));
  std::vector<std::string> expect_train;
  for (int k = 2; k < 10; ++k)
    for (const auto& id : idx.fold(k)) expect_train.push_back(id);
  std::sort(expect_train.begin(), expect_train.end());
  auto train = roles.train;
  std::sort(train.begin(), train.end());
  CHECK(train == expect_train);
  CHECK(fold_roles(idx, 9).val == idx.fold(0));

  CHECK(kind_of([] { partition(make_ids(11), 1); }) == ErrorKind::kPartition);
  auto dup = make_ids(12);
  dup[3] = dup[4];
  CHECK(kind_of([&] { partition(dup, 1); }) == ErrorKind::kPartition);

  testing::TempDir dir("idx");
  save_index(idx, dir / "index.json");
  CHECK(load_index(dir / "index.json") == idx);
  for (std::size_t n = 12; n < 60; ++n) {
    const auto p = partition(make_ids(n), n);
    CHECK(p.held_out().size() == (n + 9) / 10);
  }
}

TEST_CASE("padding") {
  scattering::ScatteringFeatures f;
  f.record_id = "x";
  f.channel_names = {"a"};
  f.paths = scattering::enumerate_paths(2, 1, false);
  f.frame_rate = 1.0;
  f.n_frames = 10;
  f.data.assign(20, 1.5);
  f.frame_targets.assign(10, Label::kArousal);
  const auto p = pad_features(f, 12);
  CHECK(p.n_frames == 12);
  CHECK(p.frame_targets[10] == Label::kPad);
  CHECK(p.frame_targets[11] == Label::kPad);
  CHECK(p.at(11, 0, 1) == 0.0);
  CHECK(p.at(9, 0, 1) == 1.5);
  CHECK(pad_features(f, 10) == f);
  CHECK(kind_of([&] { pad_features(f, 9); }) == ErrorKind::kLength);

  f.n_frames = 13372;
  f.data.assign(13372 * 2, 0.0);
  f.frame_targets.assign(13372, Label::kNonArousal);
  CHECK(kind_of([&] { pad_features(f, 13371); }) == ErrorKind::kLength);
}

TEST_CASE("channel groups") {
  const auto& groups = default_channel_groups();
  CHECK(default_channel_names().size() == 13);
  CHECK(find_group(groups, "SaO2").channels.size() == 1);
  CHECK(find_group(groups, "All").channels.size() == 13);
  CHECK(find_group(groups, "All EEG").channels.size() == 6);
  CHECK(kind_of([&] { find_group(groups, "EOG"); }) == ErrorKind::kLookup);

  const Record r = small_record();
  const Record s = select_channels(r, ChannelGroup{"x", {"ECG", "F3-M2"}});
  CHECK(s.channel_names == std::vector<std::string>{"F3-M2", "ECG"});
  CHECK(s.samples(7, 1) == r.samples(7, 2));
  CHECK(s.targets == r.targets);
  CHECK(select_channels(r, "SaO2").n_channels() == 1);
  CHECK(kind_of([&] { select_channels(r, "All"); }) == ErrorKind::kLookup);
}

TEST_CASE("synthetic records") {
  SynthConfig cfg;
  cfg.n_records = 3;
  cfg.seed = 17;
  const auto a = synth_generate_with_events(cfg, 1);
  const auto b = synth_generate_with_events(cfg, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].record == b[i].record);
    CHECK(a[i].events == b[i].events);
    const Record& r = a[i].record;
    CHECK(r.n_samples() == 120000);
    CHECK(r.channel_names == default_channel_names());
    std::size_t pos = 0;
    for (Label y : r.targets) {
      CHECK(y != Label::kPad);
      pos += y == Label::kArousal;
    }
    const double frac = double(pos) / double(r.n_samples());
    CHECK(frac >= 0.056);
    CHECK(frac <= 0.084);

    // targets are 2 exactly on the logged events
    std::vector<Label> rebuilt(r.n_samples(), Label::kNonArousal);
    for (const auto& e : a[i].events) {
      CHECK(e.length >= 600);
      CHECK(e.length <= 3000);
      std::fill(rebuilt.begin() + e.start, rebuilt.begin() + e.start + e.length, Label::kArousal);
    }
    CHECK(rebuilt == r.targets);
    for (float v : r.samples.flat()) CHECK(std::isfinite(v));
  }
  CHECK(a[0].record.id != a[1].record.id);
  cfg.seed = 18;
  CHECK_FALSE(synth_record(cfg, 0).record == a[0].record);
}

TEST_CASE("synthetic prevalence stays in band over many seeds") {
  SynthConfig cfg;
  cfg.channels = {ChannelSpec{"F3-M2", Baseline::kColoredNoise, 1.0, 1.0, true, false}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    cfg.seed = seed;
    cfg.prevalence = 0.02 + 0.3 * double(seed % 10) / 10.0;
    const auto r = synth_record(cfg, seed);
    std::size_t pos = 0;
    for (Label y : r.record.targets) pos += y == Label::kArousal;
    const double frac = double(pos) / double(r.record.n_samples());
    INFO("seed " << seed << " prevalence " << cfg.prevalence << " realized " << frac);
    CHECK(frac >= 0.8 * cfg.prevalence);
    CHECK(frac <= 1.2 * cfg.prevalence);
  }
}

TEST_CASE("synthetic config validation and unreachable targets") {
  SynthConfig cfg;
  cfg.prevalence = 0.6;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::kConfig);
  cfg = {};
  cfg.event_max_s = 700.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::kConfig);
  cfg = {};
  cfg.duration_s = 20.0;
  cfg.prevalence = 0.45;
  cfg.event_min_s = 14.0;
  cfg.event_max_s = 15.0;
  CHECK(kind_of([&] { synth_record(cfg, 0); }) == ErrorKind::kGeneration);
}

TEST_CASE("short records reach the prevalence band for many seeds") {
  SynthConfig cfg;
  cfg.channels = {ChannelSpec{"F3-M2", Baseline::kColoredNoise, 1.0, 1.0, true, false}};
  for (double dur : {60.0, 90.0, 120.0, 300.0})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      cfg.duration_s = dur;
      cfg.seed = seed;
      INFO("duration " << dur << " seed " << seed);
      const auto r = synth_record(cfg, 0);
      std::size_t pos = 0;
      for (Label y : r.record.targets) pos += y == Label::kArousal;
      const double frac = double(pos) / double(r.record.n_samples());
      REQUIRE(frac >= 0.056);
      REQUIRE(frac <= 0.084);
    }
}
