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

#include "arousal/core/errors.hpp"

namespace arousal {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kInput: return "input";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kState: return "state";
    case ErrorKind::kLookup: return "lookup";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kHeader: return "header";
    case ErrorKind::kTruncation: return "truncation";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kPartition: return "partition";
    case ErrorKind::kLength: return "length";
    case ErrorKind::kGeneration: return "generation";
    case ErrorKind::kFit: return "fit";
    case ErrorKind::kStatistics: return "statistics";
    case ErrorKind::kDegenerateBatch: return "degenerate-batch";
    case ErrorKind::kTraining: return "training";
    case ErrorKind::kUndefinedMetric: return "undefined-metric";
    case ErrorKind::kDivergence: return "divergence";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kConfig:
    case ErrorKind::kLookup:
      return 1;
    case ErrorKind::kIo:
    case ErrorKind::kHeader:
    case ErrorKind::kTruncation:
    case ErrorKind::kDimension:
      return 2;
    case ErrorKind::kDivergence:
      return 4;
    default:
      return 3;
  }
}

}  // namespace arousal
