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
#include <vector>

#include "catch_amalgamated.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/ensemble/ensemble.hpp"
#include "test_util.hpp"

using namespace arousal;
using namespace arousal::ensemble;
using Catch::Approx;

namespace {

MatrixD posteriors(std::size_t frames, Rng& rng) {
  MatrixD p(frames, 3);
  for (std::size_t t = 0; t < frames; ++t) {
    double s = 0;
    for (std::size_t c = 0; c < 3; ++c) s += (p(t, c) = uniform(rng, 0.01, 1.0));
    for (std::size_t c = 0; c < 3; ++c) p(t, c) /= s;
  }
  return p;
}

MatrixD row(double a, double b, double c) {
  MatrixD m(1, 3);
  m(0, 0) = a;
  m(0, 1) = b;
  m(0, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("average of two members") {
  const std::vector<MatrixD> m{row(0.2, 0.5, 0.3), row(0.4, 0.1, 0.5)};
  const MatrixD a = average_posteriors(m);
  CHECK(a(0, 0) == Approx(0.3).epsilon(1e-15));
  CHECK(a(0, 1) == Approx(0.3).epsilon(1e-15));
  CHECK(a(0, 2) == Approx(0.4).epsilon(1e-15));
}

TEST_CASE("identical members reproduce the member exactly") {
  Rng rng(1);
  for (std::size_t n = 1; n <= 12; ++n) {
    const MatrixD p = posteriors(50, rng);
    const std::vector<MatrixD> m(n, p);
    CHECK(average_posteriors(m) == p);
    CHECK(fuse_label(average_posteriors(m)) == fuse_label(p));
  }
}

TEST_CASE("member order does not change the average bitwise") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MatrixD> m;
    const std::size_t n = 2 + uniform_index(rng, 9);
    for (std::size_t i = 0; i < n; ++i) m.push_back(posteriors(20, rng));
    const MatrixD ref = average_posteriors(m);
    for (int s = 0; s < 5; ++s) {
      for (std::size_t i = n - 1; i > 0; --i) std::swap(m[i], m[uniform_index(rng, i + 1)]);
      CHECK(average_posteriors(m) == ref);
    }
    for (std::size_t t = 0; t < ref.rows(); ++t)
      CHECK(std::abs(ref(t, 0) + ref(t, 1) + ref(t, 2) - 1.0) < 1e-9);
  }
}

TEST_CASE("average errors") {
  CHECK_THROWS_AS(average_posteriors(std::vector<MatrixD>{}), Error);
  try {
    average_posteriors(std::vector<MatrixD>{MatrixD(2, 3), MatrixD(3, 3)});
    FAIL("expected shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kShape);
  }
}

TEST_CASE("fused labels and scores") {
  CHECK(fuse_label(row(0.3, 0.3, 0.4)) == std::vector<Label>{Label::kArousal});
  CHECK(fuse_label(row(0.4, 0.3, 0.3)) == std::vector<Label>{Label::kPad});
  CHECK(fuse_label(row(0.3, 0.35, 0.35)) == std::vector<Label>{Label::kArousal});
  CHECK(fuse_label(row(0.35, 0.35, 0.3)) == std::vector<Label>{Label::kNonArousal});
  CHECK(arousal_score(row(0.3, 0.3, 0.4)) == std::vector<double>{0.4});
  CHECK(arousal_score(row(1, 0, 0)) == std::vector<double>{0.0});

  Rng rng(3);
  const std::vector<MatrixD> m{posteriors(10, rng), posteriors(10, rng), posteriors(10, rng)};
  const auto s = arousal_score(average_posteriors(m));
  for (std::size_t t = 0; t < 10; ++t)
    CHECK(s[t] == Approx((m[0](t, 2) + m[1](t, 2) + m[2](t, 2)) / 3).epsilon(1e-14));
}

TEST_CASE("prediction files round-trip") {
  testing::TempDir dir("pred");
  Rng rng(4);
  MatrixD p = posteriors(7, rng);
  for (double& v : p.flat()) v = static_cast<float>(v);
  const PredictionFile f{"rec-1", 3, 0.390625, p};
  save_prediction(f, dir / "p");
  const auto back = load_prediction(dir / "p");
  CHECK(back.record_id == "rec-1");
  CHECK(back.n_members == 3);
  CHECK(back.frame_rate == 0.390625);
  CHECK(back.probs == p);
  testing::truncate_file(dir / "p" / "probs.dat", 1);
  CHECK_THROWS_AS(load_prediction(dir / "p"), Error);
}
