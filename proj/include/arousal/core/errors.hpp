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

#include <stdexcept>
#include <string>
#include <string_view>

namespace arousal {

// Failure categories. Each maps onto one process exit code (see exit_code).
enum class ErrorKind {
  kUsage,            // bad flags or arguments
  kConfig,           // invalid configuration value
  kInput,            // invalid input data (non-finite sample, unknown label)
  kShape,            // dimension / layout mismatch
  kState,            // operation not valid in the object's current state
  kLookup,           // unknown channel or group name
  kIo,               // generic filesystem failure
  kHeader,           // malformed JSON header
  kTruncation,       // data file shorter/longer than the header implies
  kDimension,        // header dimensions disagree with the data
  kPartition,        // too few records to partition
  kLength,           // sequence longer than max_length
  kGeneration,       // synthetic generator cannot meet its contract
  kFit,              // normalizer fit on an empty set
  kStatistics,       // batch statistics over fewer than two frames
  kDegenerateBatch,  // zero total loss weight
  kTraining,         // training data without labelled frames
  kUndefinedMetric,  // AUROC/AUPRC undefined for a single-class pool
  kDivergence,       // non-finite gradient or parameter
};

std::string_view kind_name(ErrorKind kind);

// Process exit code: 1 usage, 2 I/O, 3 undefined metric / degenerate data,
// 4 numerical divergence.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arousal
