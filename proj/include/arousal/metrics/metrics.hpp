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
#include <span>
#include <string>
#include <vector>

#include "arousal/core/types.hpp"

// Threshold-free ranking metrics. Scores are compared with exact equality to
// form tie blocks, so they should be computed in 64-bit before comparison.
namespace arousal::metrics {

// Mann-Whitney AUROC: (#{pos > neg} + 0.5 #{pos == neg}) / (n_pos n_neg),
// computed from mid-ranks. Throws kUndefinedMetric unless both classes occur.
double auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

// Average precision: sum over descending-score threshold blocks of
// (recall gain) x (precision at the block). Throws kUndefinedMetric without
// positives.
double auprc(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

// (fpr, tpr) per threshold block, starting at (0, 0).
std::vector<CurvePoint> roc_curve(std::span<const double> scores,
                                  std::span<const std::uint8_t> labels);
// (recall, precision) per threshold block.
std::vector<CurvePoint> pr_curve(std::span<const double> scores,
                                 std::span<const std::uint8_t> labels);

struct RecordScores {
  std::string record_id;
  std::vector<double> scores;       // per frame
  std::vector<Label> frame_labels;  // per frame
};

struct MetricsReport {
  double auroc = 0.0;
  double auprc = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  double prevalence = 0.0;
  std::vector<CurvePoint> roc_points;
  std::vector<CurvePoint> pr_points;
};

// Pools frames across records in record-id order, drops PAD, maps Arousal to
// positive and Non-arousal to negative, then scores the pooled vectors.
MetricsReport gross_metrics(std::span<const RecordScores> records);

}  // namespace arousal::metrics
