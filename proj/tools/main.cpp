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

// Command-line driver for the arousal pipeline.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "arousal/cli/commands.hpp"
#include "arousal/core/errors.hpp"

namespace {

using arousal::cli::CommonOptions;
using arousal::cli::Selection;

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "Pipeline config JSON");
  app->add_option("--seed", f.seed, "Root seed (overrides config)");
  app->add_option("--jobs", f.jobs, "Worker threads, 0 = runtime default (overrides config)");
  app->add_option("--out", f.out, "Output directory");
}

CommonOptions common(CLI::App* app, const Flags& f) {
  CommonOptions c;
  c.config = f.config;
  if (app->count("--seed")) c.seed = f.seed;
  if (app->count("--jobs")) c.jobs = f.jobs;
  c.out = f.out;
  return c;
}

void add_selection(CLI::App* app, Selection& s) {
  app->add_option("--index", s.index, "Dataset index.json");
  app->add_option("--split", s.split, "Records to use: all, hot, train, val, test")
      ->check(CLI::IsMember({"all", "hot", "train", "val", "test"}));
  app->add_option("--fold", s.fold, "Fold k for train/val/test splits")->check(CLI::Range(0, 9));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sleep-arousal scattering pipeline"};
  app.require_subcommand(1);

  Flags f;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  add_common(synth, f);

  arousal::cli::ScatterOptions scatter_opt;
  auto* scatter = app.add_subcommand("scatter", "Compute scattering features");
  add_common(scatter, f);
  scatter->add_option("--records", scatter_opt.records, "Directory of record containers");
  scatter->add_option("--channels", scatter_opt.channels, "Channel group");
  scatter->add_flag("--normalize", scatter_opt.normalize,
                    "Fit the log-median normalizer (train role of --fold when --index is given)");
  add_selection(scatter, scatter_opt.selection);

  arousal::cli::TrainOptions train_opt;
  auto* train = app.add_subcommand("train", "Train one classifier on a fold");
  add_common(train, f);
  train->add_option("--features", train_opt.features, "Directory of feature containers");
  train->add_option("--index", train_opt.index, "Dataset index.json");
  train->add_option("--fold", train_opt.fold, "Cross-validation fold k")->check(CLI::Range(0, 9));

  arousal::cli::PredictOptions predict_opt;
  auto* predict = app.add_subcommand("predict", "Per-frame posteriors, averaged over models");
  add_common(predict, f);
  predict->add_option("--model", predict_opt.models, "Model directory (repeatable)");
  predict->add_option("--features", predict_opt.features, "Directory of feature containers");
  add_selection(predict, predict_opt.selection);

  arousal::cli::EvaluateOptions eval_opt;
  auto* evaluate = app.add_subcommand("evaluate", "Gross AUROC / AUPRC");
  add_common(evaluate, f);
  evaluate->add_option("--predictions", eval_opt.predictions, "Directory of prediction containers");
  evaluate->add_option("--features", eval_opt.features, "Directory of feature containers");
  evaluate->add_flag("--curves", eval_opt.curves, "Write roc.csv and pr.csv to --out");

  arousal::cli::AblateOptions ablate_opt;
  auto* ablate = app.add_subcommand("ablate", "Channel-group experiment");
  add_common(ablate, f);
  ablate->add_option("--records", ablate_opt.records, "Directory of record containers");
  ablate->add_option("--index", ablate_opt.index, "Dataset index.json");

  arousal::cli::EnsembleCurveOptions curve_opt;
  auto* curve = app.add_subcommand("ensemble-curve", "AUPRC against ensemble size");
  add_common(curve, f);
  curve->add_option("--model", curve_opt.models, "Model directory (repeatable)");
  curve->add_option("--features", curve_opt.features, "Directory of feature containers");
  add_selection(curve, curve_opt.selection);

  auto* fbank = app.add_subcommand("filterbank", "Filter-bank utilities");
  fbank->require_subcommand(1);
  auto* dump = fbank->add_subcommand("dump", "Write sampled filter spectra");
  add_common(dump, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub == fbank) sub = dump;
    const CommonOptions c = common(sub, f);
    const auto config = arousal::cli::resolve_config(c);
    const std::filesystem::path out = c.out;
    if (sub == synth) return arousal::cli::cmd_synth(config, out, std::cout);
    if (sub == scatter) return arousal::cli::cmd_scatter(config, scatter_opt, out, std::cout);
    if (sub == train) return arousal::cli::cmd_train(config, train_opt, out, std::cout);
    if (sub == predict) return arousal::cli::cmd_predict(config, predict_opt, out, std::cout);
    if (sub == evaluate) return arousal::cli::cmd_evaluate(config, eval_opt, out, std::cout);
    if (sub == ablate) return arousal::cli::cmd_ablate(config, ablate_opt, out, std::cout);
    if (sub == curve) return arousal::cli::cmd_ensemble_curve(config, curve_opt, out, std::cout);
    if (sub == dump) return arousal::cli::cmd_filterbank_dump(config, out, std::cout);
    return 1;
  } catch (const arousal::Error& e) {
    std::cerr << "error [" << arousal::kind_name(e.kind()) << "]: " << e.what() << "\n";
    return arousal::exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error [io]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
