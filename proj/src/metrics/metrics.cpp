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

#include "arousal/metrics/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "arousal/core/errors.hpp"

namespace arousal::metrics {
namespace {

void check_lengths(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size())
    throw Error(ErrorKind::kShape, "scores and labels differ in length");
}

// Threshold blocks in descending score order: cumulative (tp, fp) after each.
struct Block {
  std::size_t tp = 0;
  std::size_t fp = 0;
};

std::vector<Block> descending_blocks(std::span<const double> scores,
                                     std::span<const std::uint8_t> labels) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<Block> blocks;
  Block cum;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (labels[order[i]] != 0) ++cum.tp; else ++cum.fp;
    if (i + 1 == order.size() || scores[order[i + 1]] != scores[order[i]]) blocks.push_back(cum);
  }
  return blocks;
}

std::pair<std::size_t, std::size_t> class_counts(std::span<const std::uint8_t> labels) {
  const auto pos = static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](std::uint8_t v) { return v != 0; }));
  return {pos, labels.size() - pos};
}

}  // namespace

double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const auto [n_pos, n_neg] = class_counts(labels);
  if (n_pos == 0 || n_neg == 0)
    throw Error(ErrorKind::kUndefinedMetric, "AUROC is undefined without both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of positive mid-ranks (1-based, doubled to stay integral).
  long double rank_sum2 = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const std::size_t twice_mid = i + 1 + j;  // 2 * mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] != 0) rank_sum2 += static_cast<long double>(twice_mid);
    i = j;
  }
  const long double np = static_cast<long double>(n_pos);
  const long double u = rank_sum2 / 2 - np * (np + 1) / 2;
  return static_cast<double>(u / (np * static_cast<long double>(n_neg)));
}

double auprc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const auto [n_pos, n_neg] = class_counts(labels);
  (void)n_neg;
  if (n_pos == 0) throw Error(ErrorKind::kUndefinedMetric, "AUPRC is undefined without positives");
  double ap = 0.0;
  std::size_t prev_tp = 0;
  for (const Block& b : descending_blocks(scores, labels)) {
    if (b.tp > prev_tp) {
      const double precision = static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fp);
      ap += static_cast<double>(b.tp - prev_tp) / static_cast<double>(n_pos) * precision;
    }
    prev_tp = b.tp;
  }
  return ap;
}

std::vector<CurvePoint> roc_curve(std::span<const double> scores,
                                  std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const auto [n_pos, n_neg] = class_counts(labels);
  if (n_pos == 0 || n_neg == 0)
    throw Error(ErrorKind::kUndefinedMetric, "ROC curve is undefined without both classes");
  std::vector<CurvePoint> pts{{0.0, 0.0}};
  for (const Block& b : descending_blocks(scores, labels))
    pts.push_back({static_cast<double>(b.fp) / static_cast<double>(n_neg),
                   static_cast<double>(b.tp) / static_cast<double>(n_pos)});
  return pts;
}

std::vector<CurvePoint> pr_curve(std::span<const double> scores,
                                 std::span<const std::uint8_t> labels) {
  check_lengths(scores, labels);
  const auto [n_pos, n_neg] = class_counts(labels);
  (void)n_neg;
  if (n_pos == 0) throw Error(ErrorKind::kUndefinedMetric, "PR curve is undefined without positives");
  std::vector<CurvePoint> pts;
  for (const Block& b : descending_blocks(scores, labels))
    pts.push_back({static_cast<double>(b.tp) / static_cast<double>(n_pos),
                   static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fp)});
  return pts;
}

MetricsReport gross_metrics(std::span<const RecordScores> records) {
  if (records.empty()) throw Error(ErrorKind::kInput, "no records to evaluate");
  std::vector<const RecordScores*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RecordScores* a, const RecordScores* b) { return a->record_id < b->record_id; });

  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  for (const RecordScores* r : sorted) {
    if (r->scores.size() != r->frame_labels.size())
      throw Error(ErrorKind::kShape, "record " + r->record_id + ": scores and labels differ in length");
    for (std::size_t t = 0; t < r->scores.size(); ++t) {
      if (r->frame_labels[t] == Label::kPad) continue;
      scores.push_back(r->scores[t]);
      labels.push_back(r->frame_labels[t] == Label::kArousal ? 1 : 0);
    }
  }
  MetricsReport rep;
  std::tie(rep.n_pos, rep.n_neg) = class_counts(labels);
  if (rep.n_pos == 0 || rep.n_neg == 0)
    throw Error(ErrorKind::kUndefinedMetric,
                "pooled frames contain a single class (" + std::to_string(rep.n_pos) + " arousal, " +
                    std::to_string(rep.n_neg) + " non-arousal)");
  rep.prevalence = static_cast<double>(rep.n_pos) / static_cast<double>(rep.n_pos + rep.n_neg);
  rep.auroc = auroc(scores, labels);
  rep.auprc = auprc(scores, labels);
  rep.roc_points = roc_curve(scores, labels);
  rep.pr_points = pr_curve(scores, labels);
  return rep;
}

}  // namespace arousal::metrics
