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
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/metrics/metrics.hpp"

using namespace arousal;
using namespace arousal::metrics;
using Catch::Approx;

namespace {

using Labels = std::vector<std::uint8_t>;

double pairs_oracle(const std::vector<double>& s, const Labels& y) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (y[i] && !y[j]) {
        den += 1;
        num += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
      }
  return num / den;
}

// Every distinct score as a threshold, descending; precision at each
// threshold weighted by the recall it adds.
double threshold_oracle(const std::vector<double>& s, const Labels& y) {
  std::set<double, std::greater<>> thr(s.begin(), s.end());
  double n_pos = 0;
  for (auto v : y) n_pos += v;
  double ap = 0, prev_recall = 0;
  for (double t : thr) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] >= t) (y[i] ? tp : fp) += 1;
    const double recall = tp / n_pos;
    ap += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
  }
  return ap;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kUsage;
}

}  // namespace

TEST_CASE("auroc examples") {
  CHECK(auroc(std::vector<double>{0.9, 0.1}, Labels{1, 0}) == 1.0);
  CHECK(auroc(std::vector<double>{0.1, 0.9}, Labels{1, 0}) == 0.0);
  CHECK(auroc(std::vector<double>(7, 0.3), Labels{1, 0, 0, 1, 0, 0, 0}) == 0.5);
  const std::vector<double> s{0.5, 0.5, 0.2, 0.9, 0.2, 0.5};
  const Labels y{1, 0, 1, 0, 0, 1};
  CHECK(std::abs(auroc(s, y) - pairs_oracle(s, y)) < 1e-12);
  CHECK(kind_of([] { auroc(std::vector<double>{1, 2}, Labels{1, 1}); }) == ErrorKind::kUndefinedMetric);
  CHECK(kind_of([] { auroc(std::vector<double>{1, 2}, Labels{0, 0}); }) == ErrorKind::kUndefinedMetric);
}

TEST_CASE("auprc examples") {
  CHECK(auprc(std::vector<double>{0.9, 0.8, 0.1, 0.05}, Labels{1, 1, 0, 0}) == 1.0);
  CHECK(auprc(std::vector<double>(8, 0.4), Labels{1, 0, 0, 0, 0, 0, 0, 1}) == Approx(0.25).epsilon(1e-15));
  const std::vector<double> s{0.9, 0.7, 0.7, 0.5, 0.4, 0.4, 0.2, 0.1};
  const Labels y{1, 0, 1, 1, 0, 0, 1, 0};
  CHECK(std::abs(auprc(s, y) - threshold_oracle(s, y)) < 1e-12);
  CHECK(kind_of([] { auprc(std::vector<double>{1, 2}, Labels{0, 0}); }) == ErrorKind::kUndefinedMetric);
}

TEST_CASE("metrics equal brute-force oracles on small random instances") {
  Rng rng(7);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 11);
    std::vector<double> s(n);
    Labels y(n);
    const std::size_t levels = 1 + uniform_index(rng, 6);  // few levels -> many ties
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(uniform_index(rng, levels)) / 7.0;
      y[i] = uniform_index(rng, 2);
    }
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == static_cast<long>(n)) continue;
    ++checked;
    REQUIRE(std::abs(auroc(s, y) - pairs_oracle(s, y)) < 1e-12);
    REQUIRE(std::abs(auprc(s, y) - threshold_oracle(s, y)) < 1e-12);
  }
  CHECK(checked > 1000);
}

TEST_CASE("rank-based invariances") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 30;
    std::vector<double> s(n), t(n), neg(n);
    Labels y(n), flip(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::round(uniform01(rng) * 10) / 10;
      y[i] = uniform01(rng) < 0.3;
    }
    y[0] = 1;
    y[1] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = std::exp(3 * s[i]) + 5;
      neg[i] = -s[i];
      flip[i] = 1 - y[i];
    }
    CHECK(auroc(t, y) == auroc(s, y));
    CHECK(auprc(t, y) == auprc(s, y));
    CHECK(std::abs(auroc(neg, flip) - auroc(s, y)) < 1e-15);
  }
}

TEST_CASE("curves") {
  const std::vector<double> s{0.9, 0.5, 0.5, 0.1};
  const Labels y{1, 1, 0, 0};
  const auto roc = roc_curve(s, y);
  REQUIRE(roc.size() == 4);
  CHECK(roc[0].x == 0.0);
  CHECK(roc[0].y == 0.0);
  CHECK(roc[1].y == 0.5);
  CHECK(roc[2].x == 0.5);
  CHECK(roc[2].y == 1.0);
  CHECK(roc[3].x == 1.0);
  const auto pr = pr_curve(s, y);
  REQUIRE(pr.size() == 3);
  CHECK(pr[0].y == 1.0);
  CHECK(pr[1].x == 1.0);
  CHECK(pr[1].y == Approx(2.0 / 3.0));
}

TEST_CASE("gross metrics pool records and drop PAD") {
  const std::vector<RecordScores> perfect{
      {"a", {0.9, 0.1, 0.8, 0.0}, {Label::kArousal, Label::kNonArousal, Label::kArousal, Label::kPad}},
      {"b", {0.2, 0.95}, {Label::kNonArousal, Label::kArousal}}};
  const auto r = gross_metrics(perfect);
  CHECK(r.auroc == 1.0);
  CHECK(r.auprc == 1.0);
  CHECK(r.n_pos == 3);
  CHECK(r.n_neg == 2);
  CHECK(r.prevalence == Approx(0.6));

  const std::vector<RecordScores> split{
      {"pos", {0.7, 0.8}, {Label::kArousal, Label::kArousal}},
      {"neg", {0.1, 0.2, 5.0}, {Label::kNonArousal, Label::kNonArousal, Label::kPad}}};
  const auto g = gross_metrics(split);
  CHECK(g.auroc == 1.0);
  CHECK(g.auprc == 1.0);

  const std::vector<RecordScores> single{{"x", {0.1, 0.2}, {Label::kNonArousal, Label::kPad}}};
  CHECK(kind_of([&] { gross_metrics(single); }) == ErrorKind::kUndefinedMetric);
  CHECK(kind_of([] { gross_metrics(std::vector<RecordScores>{}); }) == ErrorKind::kInput);
}

TEST_CASE("random scores give auroc near one half") {
  Rng rng(9);
  std::vector<RecordScores> recs(4);
  for (std::size_t r = 0; r < 4; ++r) {
    recs[r].record_id = "r" + std::to_string(r);
    for (int t = 0; t < 250; ++t) {
      recs[r].scores.push_back(uniform01(rng));
      recs[r].frame_labels.push_back(uniform01(rng) < 0.07 ? Label::kArousal : Label::kNonArousal);
    }
  }
  const auto rep = gross_metrics(recs);
  CHECK(std::abs(rep.auroc - 0.5) <= 0.05);
  CHECK(rep.n_pos + rep.n_neg == 1000);
}
