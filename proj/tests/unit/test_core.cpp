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

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/fft.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/core/types.hpp"
#include "test_util.hpp"

using namespace arousal;

TEST_CASE("exit codes follow the error table") {
  CHECK(exit_code(ErrorKind::kUsage) == 1);
  CHECK(exit_code(ErrorKind::kLookup) == 1);
  CHECK(exit_code(ErrorKind::kIo) == 2);
  CHECK(exit_code(ErrorKind::kTruncation) == 2);
  CHECK(exit_code(ErrorKind::kHeader) == 2);
  CHECK(exit_code(ErrorKind::kDimension) == 2);
  CHECK(exit_code(ErrorKind::kUndefinedMetric) == 3);
  CHECK(exit_code(ErrorKind::kDegenerateBatch) == 3);
  CHECK(exit_code(ErrorKind::kDivergence) == 4);
  CHECK(kind_name(ErrorKind::kUndefinedMetric) == "undefined-metric");
}

TEST_CASE("fft matches a direct DFT") {
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u, 64u, 97u}) {
    Rng rng(n);
    std::vector<fft::Complex> x(n);
    for (auto& v : x) v = {standard_normal(rng), standard_normal(rng)};
    std::vector<fft::Complex> X = x;
    fft::forward(X);
    for (std::size_t k = 0; k < n; ++k) {
      fft::Complex acc = 0;
      for (std::size_t t = 0; t < n; ++t)
        acc += x[t] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * t % n) / double(n));
      CHECK(std::abs(acc - X[k]) < 1e-10 * (1.0 + double(n)));
    }
    fft::inverse(X);
    for (std::size_t t = 0; t < n; ++t) CHECK(std::abs(X[t] - x[t]) < 1e-12);
  }
}

TEST_CASE("good_size returns 5-smooth lengths") {
  auto smooth = [](std::size_t n) {
    for (std::size_t p : {2u, 3u, 5u})
      while (n % p == 0) n /= p;
    return n == 1;
  };
  for (std::size_t n = 1; n < 3000; ++n) {
    const std::size_t g = fft::good_size(n);
    REQUIRE(g >= n);
    REQUIRE(smooth(g));
    for (std::size_t m = n; m < g; ++m) REQUIRE_FALSE(smooth(m));
  }
}

TEST_CASE("binary arrays round-trip and report truncation") {
  testing::TempDir dir("core");
  const std::vector<double> d{1.5, -2.25, 1e300, 0.0};
  io::write_f64(dir / "a.dat", d);
  CHECK(io::read_f64(dir / "a.dat", 4) == d);

  const std::vector<float> f{0.1f, -3.0f};
  io::write_f32(dir / "b.dat", f);
  CHECK(io::read_f32(dir / "b.dat", 2) == f);

  testing::truncate_file(dir / "b.dat", 1);
  try {
    io::read_f32(dir / "b.dat", 2);
    FAIL("expected truncation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTruncation);
    CHECK(std::string(e.what()).find("8") != std::string::npos);
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
  CHECK_THROWS_AS(io::read_u8(dir / "missing.dat", 1), Error);
}

TEST_CASE("json headers check the format version") {
  testing::TempDir dir("json");
  io::write_json(dir / "h.json", io::Json{{"format_version", io::kFormatVersion}});
  CHECK_NOTHROW(io::check_format_version(io::read_json(dir / "h.json"), dir / "h.json"));
  io::write_json(dir / "new.json", io::Json{{"format_version", io::kFormatVersion + 1}});
  CHECK_THROWS_AS(io::check_format_version(io::read_json(dir / "new.json"), dir / "new.json"), Error);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{ not json";
  }
  try {
    io::read_json(dir / "bad.json");
    FAIL("expected header error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kHeader);
  }
}

TEST_CASE("seed derivation is deterministic and stage-separated") {
  CHECK(derive_seed(7, "synth") == derive_seed(7, "synth"));
  CHECK(derive_seed(7, "synth") != derive_seed(7, "train"));
  CHECK(derive_seed(7, "synth") != derive_seed(8, "synth"));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(1, "init", i));
  CHECK(seen.size() == 1000);
}

TEST_CASE("rng helpers stay in range and have sane moments") {
  Rng rng(42);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = standard_normal(rng);
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);

  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[uniform_index(rng, 7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("matrix basics") {
  MatrixD m(2, 3, 1.0);
  m(1, 2) = 5.0;
  CHECK(m.row(1)[2] == 5.0);
  CHECK(m.flat().size() == 6);
  MatrixD n = m;
  CHECK(n == m);
  n(0, 0) = 0.0;
  CHECK_FALSE(n == m);
}
