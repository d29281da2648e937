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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "arousal/cli/config.hpp"
#include "arousal/metrics/metrics.hpp"
#include "arousal/model/network.hpp"
#include "arousal/model/train.hpp"
#include "arousal/scattering/features.hpp"
#include "arousal/scattering/normalizer.hpp"

namespace arousal::cli {

namespace fs = std::filesystem;

// Flags shared by every subcommand. Flags win over the config file.
struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
};

PipelineConfig resolve_config(const CommonOptions& common);

// Record selection against a dataset index: "all" ignores the index, "hot"
// is the held-out set, "train" / "val" / "test" are the roles of `fold`.
struct Selection {
  std::string index;
  std::string split = "all";
  int fold = 0;
};

// ---- library entry points used by the subcommands and the tests ----

// Subdirectories of `dir` that contain `marker`, sorted by name.
std::vector<fs::path> list_containers(const fs::path& dir, const std::string& marker);

std::vector<scattering::ScatteringFeatures> load_feature_set(const fs::path& dir,
                                                             const std::vector<std::string>& ids);

// Features flattened per frame and padded with PAD frames to max_length.
model::Sequence to_sequence(const scattering::ScatteringFeatures& features,
                            std::size_t max_length);

struct TrainedClassifier {
  model::Model model;
  std::optional<scattering::NormalizerParams> normalizer;
  model::TrainResult result;
  model::ClassWeights weights;
};

// Fits the normalizer on `train` (unless the features are already
// normalized), applies it to both sets and trains one classifier. Model init
// and epoch shuffling use derive_seed(config.seed, "init" / "shuffle", member).
TrainedClassifier train_classifier(const PipelineConfig& config,
                                   std::vector<scattering::ScatteringFeatures> train,
                                   std::vector<scattering::ScatteringFeatures> val,
                                   std::uint64_t member);

// Frames x 3 posteriors for one record (unpadded).
MatrixD predict_probs(const model::Model& model,
                      const std::optional<scattering::NormalizerParams>& normalizer,
                      const scattering::ScatteringFeatures& features);

metrics::RecordScores record_scores(const scattering::ScatteringFeatures& features,
                                    const MatrixD& probs);

io::Json report_to_json(const metrics::MetricsReport& report);

// ---- subcommands; each returns the process exit code ----

int cmd_synth(const PipelineConfig& config, const fs::path& out, std::ostream& os);

struct ScatterOptions {
  std::string records;
  std::string channels = "All";
  bool normalize = false;
  Selection selection;  // records to scatter; normalizer fit on the train role
};
int cmd_scatter(const PipelineConfig& config, const ScatterOptions& opt, const fs::path& out,
                std::ostream& os);

struct TrainOptions {
  std::string features;
  std::string index;
  int fold = 0;
};
int cmd_train(const PipelineConfig& config, const TrainOptions& opt, const fs::path& out,
              std::ostream& os);

struct PredictOptions {
  std::vector<std::string> models;  // members, sorted by directory name
  std::string features;
  Selection selection;
};
int cmd_predict(const PipelineConfig& config, const PredictOptions& opt, const fs::path& out,
                std::ostream& os);

struct EvaluateOptions {
  std::string predictions;
  std::string features;
  bool curves = false;
};
int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& opt, const fs::path& out,
                 std::ostream& os);

struct AblateOptions {
  std::string records;
  std::string index;  // empty: <records>/index.json, else a fresh partition
};
int cmd_ablate(const PipelineConfig& config, const AblateOptions& opt, const fs::path& out,
               std::ostream& os);

struct EnsembleCurveOptions {
  std::vector<std::string> models;
  std::string features;
  Selection selection;
};
int cmd_ensemble_curve(const PipelineConfig& config, const EnsembleCurveOptions& opt,
                       const fs::path& out, std::ostream& os);

int cmd_filterbank_dump(const PipelineConfig& config, const fs::path& out, std::ostream& os);

}  // namespace arousal::cli
