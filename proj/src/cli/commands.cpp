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

#include "arousal/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "arousal/core/binary_io.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/data/channels.hpp"
#include "arousal/data/padding.hpp"
#include "arousal/data/partition.hpp"
#include "arousal/data/record.hpp"
#include "arousal/data/synth.hpp"
#include "arousal/ensemble/ensemble.hpp"
#include "arousal/filterbank/filterbank.hpp"
#include "arousal/model/model_io.hpp"
#include "arousal/scattering/cascade.hpp"
#include "arousal/scattering/features_io.hpp"

namespace arousal::cli {
namespace {

using io::Json;
using scattering::ScatteringFeatures;

void require_dir(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorKind::kUsage, std::string("missing ") + what + " directory");
  if (!fs::is_directory(path))
    throw Error(ErrorKind::kIo, std::string(what) + " directory not found: " + path);
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorKind::kUsage, std::string("missing ") + what + " file");
  if (!fs::is_regular_file(path))
    throw Error(ErrorKind::kIo, std::string(what) + " file not found: " + path);
}

void require_out(const fs::path& out) {
  if (out.empty()) throw Error(ErrorKind::kUsage, "missing --out directory");
  io::ensure_directory(out);
}

std::string pick(const std::string& flag, const std::string& fallback) {
  return flag.empty() ? fallback : flag;
}

std::vector<std::string> container_ids(const fs::path& dir, const std::string& marker) {
  std::vector<std::string> ids;
  for (const auto& p : list_containers(dir, marker)) ids.push_back(p.filename().string());
  return ids;
}

// Ids chosen by `sel`, restricted to those available in `available`.
std::vector<std::string> select_ids(const Selection& sel, const std::vector<std::string>& available) {
  if (sel.split == "all") return available;
  require_file(sel.index, "index");
  const data::DatasetIndex index = data::load_index(sel.index);
  std::vector<std::string> ids;
  if (sel.split == "hot") {
    ids = index.held_out();
  } else {
    const data::FoldRoles roles = data::fold_roles(index, sel.fold);
    if (sel.split == "train") ids = roles.train;
    else if (sel.split == "val") ids = roles.val;
    else if (sel.split == "test") ids = roles.test;
    else throw Error(ErrorKind::kUsage, "unknown split '" + sel.split + "' (all, hot, train, val, test)");
  }
  std::sort(ids.begin(), ids.end());
  for (const auto& id : ids)
    if (!std::binary_search(available.begin(), available.end(), id))
      throw Error(ErrorKind::kIo, "container for record '" + id + "' not found");
  return ids;
}

std::vector<double> resolve_mu(const PipelineConfig& config, std::size_t n_paths) {
  if (!config.paths.mu.empty()) return scattering::load_mu(config.paths.mu, n_paths);
  if (!config.mu.empty() && config.mu.size() != n_paths)
    throw Error(ErrorKind::kConfig, "normalizer.mu has " + std::to_string(config.mu.size()) +
                                        " values for " + std::to_string(n_paths) + " paths");
  return config.mu;
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + file.string());
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<fs::path> sorted_models(const std::vector<std::string>& models) {
  if (models.empty()) throw Error(ErrorKind::kUsage, "at least one --model is required");
  std::vector<fs::path> dirs;
  for (const auto& m : models) {
    require_dir(m, "model");
    dirs.emplace_back(m);
  }
  std::sort(dirs.begin(), dirs.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string() ||
           (a.filename() == b.filename() && a.string() < b.string());
  });
  return dirs;
}

struct LoadedMember {
  model::Model model;
  std::optional<scattering::NormalizerParams> normalizer;
};

LoadedMember load_member(const fs::path& dir) {
  LoadedMember m;
  m.model = model::load_model(dir);
  if (fs::exists(dir / "normalizer.json")) m.normalizer = scattering::load_normalizer(dir / "normalizer.json");
  return m;
}

}  // namespace

PipelineConfig resolve_config(const CommonOptions& common) {
  PipelineConfig c = common.config.empty() ? default_config() : load_config(common.config);
  if (common.seed) c.seed = *common.seed;
  if (common.jobs) c.jobs = *common.jobs;
  validate(c);
  return c;
}

std::vector<fs::path> list_containers(const fs::path& dir, const std::string& marker) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::kIo, "directory not found: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory() && fs::exists(entry.path() / marker)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ScatteringFeatures> load_feature_set(const fs::path& dir,
                                                 const std::vector<std::string>& ids) {
  std::vector<ScatteringFeatures> set;
  set.reserve(ids.size());
  for (const auto& id : ids) set.push_back(scattering::load_features(dir / id));
  return set;
}

model::Sequence to_sequence(const ScatteringFeatures& features, std::size_t max_length) {
  const ScatteringFeatures padded = data::pad_features(features, max_length);
  return {padded.frame_matrix(), padded.frame_targets};
}

TrainedClassifier train_classifier(const PipelineConfig& config,
                                   std::vector<ScatteringFeatures> train,
                                   std::vector<ScatteringFeatures> val, std::uint64_t member) {
  if (train.empty()) throw Error(ErrorKind::kTraining, "no training records");
  if (val.empty()) throw Error(ErrorKind::kTraining, "no validation records");
  TrainedClassifier out;
  if (!train.front().normalized) {
    auto norm = scattering::fit_normalizer(train, resolve_mu(config, train.front().n_paths()),
                                           config.normalizer_eps);
    for (auto& f : train) f = scattering::apply_normalizer(f, norm);
    for (auto& f : val) f = scattering::apply_normalizer(f, norm);
    out.normalizer = std::move(norm);
  }

  model::TrainConfig tc = config.train;
  tc.seed = derive_seed(config.seed, "shuffle", member);
  tc.jobs = config.jobs;
  if (config.auto_class_weight) {
    std::vector<Label> pooled;
    for (const auto& f : train) pooled.insert(pooled.end(), f.frame_targets.begin(), f.frame_targets.end());
    tc.class_weights = model::class_weight_from_prevalence(pooled).weights;
  }
  out.weights = tc.class_weights;

  std::vector<model::Sequence> train_seq, val_seq;
  for (const auto& f : train) train_seq.push_back(to_sequence(f, tc.max_length));
  for (const auto& f : val) val_seq.push_back(to_sequence(f, tc.max_length));

  model::ModelConfig mc = config.model;
  mc.input_dim = train.front().frame_width();
  mc.seed = derive_seed(config.seed, "init", member);
  out.result = model::train(mc, train_seq, val_seq, tc);
  out.model = out.result.best;
  return out;
}

MatrixD predict_probs(const model::Model& model,
                      const std::optional<scattering::NormalizerParams>& normalizer,
                      const ScatteringFeatures& features) {
  if (normalizer && features.normalized)
    throw Error(ErrorKind::kState, features.record_id +
                                       ": features are already normalized but the model carries its own normalizer");
  if (!normalizer && !features.normalized)
    throw Error(ErrorKind::kState, features.record_id +
                                       ": raw features given to a model trained on normalized features");
  const ScatteringFeatures input = normalizer ? scattering::apply_normalizer(features, *normalizer) : features;
  if (input.frame_width() != model.config.input_dim)
    throw Error(ErrorKind::kShape, features.record_id + ": feature width " +
                                       std::to_string(input.frame_width()) + " != model input_dim " +
                                       std::to_string(model.config.input_dim));
  return model::forward(model, input.frame_matrix(), model::Mode::kInfer);
}

metrics::RecordScores record_scores(const ScatteringFeatures& features, const MatrixD& probs) {
  if (probs.rows() != features.n_frames)
    throw Error(ErrorKind::kDimension, features.record_id + ": " + std::to_string(probs.rows()) +
                                           " prediction frames for " +
                                           std::to_string(features.n_frames) + " feature frames");
  return {features.record_id, ensemble::arousal_score(probs), features.frame_targets};
}

Json report_to_json(const metrics::MetricsReport& r) {
  Json roc = Json::array(), pr = Json::array();
  for (const auto& p : r.roc_points) roc.push_back({p.x, p.y});
  for (const auto& p : r.pr_points) pr.push_back({p.x, p.y});
  return {{"auroc", r.auroc},           {"auprc", r.auprc},   {"n_pos", r.n_pos},
          {"n_neg", r.n_neg},           {"prevalence", r.prevalence},
          {"roc_points", roc},          {"pr_points", pr}};
}

int cmd_synth(const PipelineConfig& config, const fs::path& out, std::ostream& os) {
  require_out(out);
  data::SynthConfig sc = config.synth;
  sc.seed = derive_seed(config.seed, "synth");
  const auto records = data::synth_generate_with_events(sc, config.jobs);

  Json summary;
  summary["n_records"] = records.size();
  Json list = Json::array();
  std::vector<std::string> ids;
  for (const auto& r : records) {
    data::save_record(r.record, out / r.record.id);
    ids.push_back(r.record.id);
    std::size_t pos = 0;
    for (Label y : r.record.targets) pos += (y == Label::kArousal);
    list.push_back({{"id", r.record.id},
                    {"n_samples", r.record.n_samples()},
                    {"n_events", r.events.size()},
                    {"arousal_fraction", static_cast<double>(pos) / static_cast<double>(r.record.n_samples())}});
  }
  summary["records"] = list;
  if (ids.size() >= 12) {
    const auto index = data::partition(ids, derive_seed(config.seed, "partition"));
    data::save_index(index, out / "index.json");
    summary["index"] = (out / "index.json").string();
  }
  os << summary.dump(2) << "\n";
  return 0;
}

int cmd_scatter(const PipelineConfig& config, const ScatterOptions& opt, const fs::path& out,
                std::ostream& os) {
  const std::string records_dir = pick(opt.records, config.paths.records);
  require_dir(records_dir, "records");
  Selection sel = opt.selection;
  sel.index = pick(sel.index, config.paths.index);
  const auto ids = select_ids(sel, container_ids(records_dir, "header.json"));
  if (ids.empty()) throw Error(ErrorKind::kIo, "no record containers in " + records_dir);
  const auto& group = data::find_group(data::default_channel_groups(), opt.channels);
  std::vector<std::string> fit_ids;
  if (opt.normalize) {
    Selection fit = sel;
    if (!fit.index.empty() && sel.split != "all") fit.split = "train";
    else fit.split = "all";
    fit_ids = fit.split == "all" ? ids : select_ids(fit, container_ids(records_dir, "header.json"));
  }
  require_out(out);

  const auto fb = filterbank::build_filterbank(config.filterbank);
  std::map<std::string, ScatteringFeatures> feats;
  for (const auto& id : ids) {
    const auto rec = data::select_channels(data::load_record(fs::path(records_dir) / id), group);
    feats.emplace(id, scattering::scatter_record(rec, fb, config.jobs));
  }
  for (const auto& id : fit_ids)
    if (!feats.count(id)) {
      const auto rec = data::select_channels(data::load_record(fs::path(records_dir) / id), group);
      feats.emplace(id, scattering::scatter_record(rec, fb, config.jobs));
    }

  Json summary;
  if (opt.normalize) {
    std::vector<ScatteringFeatures> fit_set;
    for (const auto& id : fit_ids) fit_set.push_back(feats.at(id));
    const auto norm = scattering::fit_normalizer(
        fit_set, resolve_mu(config, fit_set.front().n_paths()), config.normalizer_eps);
    scattering::save_normalizer(norm, out / "normalizer.json");
    for (auto& [id, f] : feats) f = scattering::apply_normalizer(f, norm);
    summary["normalizer_fit_records"] = fit_ids.size();
  }
  for (const auto& id : ids) scattering::save_features(feats.at(id), out / id);

  const auto& first = feats.at(ids.front());
  summary["n_records"] = ids.size();
  summary["channels"] = first.channel_names;
  summary["paths_per_channel"] = first.n_paths();
  summary["frame_rate"] = first.frame_rate;
  summary["normalized"] = opt.normalize;
  os << summary.dump(2) << "\n";
  return 0;
}

int cmd_train(const PipelineConfig& config, const TrainOptions& opt, const fs::path& out,
              std::ostream& os) {
  const std::string features_dir = pick(opt.features, config.paths.features);
  const std::string index_file = pick(opt.index, config.paths.index);
  require_dir(features_dir, "features");
  require_file(index_file, "index");
  if (opt.fold < 0 || opt.fold >= data::kNumFolds)
    throw Error(ErrorKind::kUsage, "--fold must be in 0..9");
  const auto available = container_ids(features_dir, "features.json");
  const auto train_ids = select_ids({index_file, "train", opt.fold}, available);
  const auto val_ids = select_ids({index_file, "val", opt.fold}, available);
  require_out(out);

  const auto trained = train_classifier(config, load_feature_set(features_dir, train_ids),
                                        load_feature_set(features_dir, val_ids),
                                        static_cast<std::uint64_t>(opt.fold));
  model::save_model(trained.model,
                    {trained.result.best_epoch, trained.result.best_val_loss, config.seed}, out);
  if (trained.normalizer) scattering::save_normalizer(*trained.normalizer, out / "normalizer.json");
  model::save_history(trained.result.history, out / "history.csv");

  Json summary{{"fold", opt.fold},
               {"best_epoch", trained.result.best_epoch},
               {"best_val_loss", trained.result.best_val_loss},
               {"initial_val_loss", trained.result.initial_val_loss},
               {"epochs_run", trained.result.history.size()},
               {"early_stopped", trained.result.early_stopped},
               {"class_weights", trained.weights.w},
               {"n_train", train_ids.size()},
               {"n_val", val_ids.size()}};
  io::write_json(out / "train.json", summary);
  os << summary.dump(2) << "\n";
  return 0;
}

int cmd_predict(const PipelineConfig& config, const PredictOptions& opt, const fs::path& out,
                std::ostream& os) {
  const std::string features_dir = pick(opt.features, config.paths.features);
  require_dir(features_dir, "features");
  const auto model_dirs = sorted_models(opt.models);
  Selection sel = opt.selection;
  sel.index = pick(sel.index, config.paths.index);
  const auto ids = select_ids(sel, container_ids(features_dir, "features.json"));
  if (ids.empty()) throw Error(ErrorKind::kIo, "no feature containers in " + features_dir);
  require_out(out);

  std::vector<LoadedMember> members;
  for (const auto& d : model_dirs) members.push_back(load_member(d));
  for (const auto& id : ids) {
    const auto f = scattering::load_features(fs::path(features_dir) / id);
    std::vector<MatrixD> probs;
    for (const auto& m : members) probs.push_back(predict_probs(m.model, m.normalizer, f));
    ensemble::PredictionFile pred{id, members.size(), f.frame_rate,
                                  ensemble::average_posteriors(probs)};
    ensemble::save_prediction(pred, out / id);
  }
  Json summary{{"n_records", ids.size()}, {"n_members", members.size()}};
  Json names = Json::array();
  for (const auto& d : model_dirs) names.push_back(d.filename().string());
  summary["members"] = names;
  os << summary.dump(2) << "\n";
  return 0;
}

int cmd_evaluate(const PipelineConfig& config, const EvaluateOptions& opt, const fs::path& out,
                 std::ostream& os) {
  const std::string pred_dir = pick(opt.predictions, config.paths.predictions);
  const std::string features_dir = pick(opt.features, config.paths.features);
  require_dir(pred_dir, "predictions");
  require_dir(features_dir, "features");
  if (opt.curves && out.empty()) throw Error(ErrorKind::kUsage, "--curves needs --out");
  const auto ids = container_ids(pred_dir, "pred.json");
  if (ids.empty()) throw Error(ErrorKind::kIo, "no prediction containers in " + pred_dir);

  std::vector<metrics::RecordScores> scores;
  for (const auto& id : ids) {
    const auto pred = ensemble::load_prediction(fs::path(pred_dir) / id);
    const auto f = scattering::load_features(fs::path(features_dir) / id);
    scores.push_back(record_scores(f, pred.probs));
  }
  const auto report = metrics::gross_metrics(scores);
  Json doc = report_to_json(report);
  doc["n_records"] = ids.size();
  if (!out.empty()) {
    require_out(out);
    io::write_json(out / "metrics.json", doc);
    if (opt.curves) {
      std::string roc = "fpr,tpr\n", pr = "recall,precision\n";
      for (const auto& p : report.roc_points) roc += fmt(p.x) + "," + fmt(p.y) + "\n";
      for (const auto& p : report.pr_points) pr += fmt(p.x) + "," + fmt(p.y) + "\n";
      write_text(out / "roc.csv", roc);
      write_text(out / "pr.csv", pr);
    }
  }
  Json brief = doc;
  brief.erase("roc_points");
  brief.erase("pr_points");
  os << brief.dump(2) << "\n";
  return 0;
}

int cmd_ablate(const PipelineConfig& config, const AblateOptions& opt, const fs::path& out,
               std::ostream& os) {
  const std::string records_dir = pick(opt.records, config.paths.records);
  require_dir(records_dir, "records");
  const auto available = container_ids(records_dir, "header.json");
  std::string index_file = pick(opt.index, config.paths.index);
  if (index_file.empty() && fs::exists(fs::path(records_dir) / "index.json"))
    index_file = (fs::path(records_dir) / "index.json").string();
  if (!index_file.empty()) require_file(index_file, "index");
  require_out(out);
  if (index_file.empty()) {
    data::save_index(data::partition(available, derive_seed(config.seed, "partition")),
                     out / "index.json");
    index_file = (out / "index.json").string();
  }
  const int k = config.ablation.fold;
  const auto train_ids = select_ids({index_file, "train", k}, available);
  const auto val_ids = select_ids({index_file, "val", k}, available);
  const auto eval_ids = select_ids({index_file, config.ablation.split, k}, available);

  // Channels are scattered independently, so group features are column
  // subsets of the all-channel features.
  const auto fb = filterbank::build_filterbank(config.filterbank);
  std::map<std::string, ScatteringFeatures> all;
  for (const auto* list : {&train_ids, &val_ids, &eval_ids})
    for (const auto& id : *list)
      if (!all.count(id))
        all.emplace(id, scattering::scatter_record(data::load_record(fs::path(records_dir) / id), fb,
                                                   config.jobs));

  std::string csv = "group,auroc,auprc\n";
  Json rows = Json::array();
  for (const auto& name : config.ablation.groups) {
    const auto& group = data::find_group(data::default_channel_groups(), name);
    auto subset = [&](const std::vector<std::string>& ids) {
      std::vector<ScatteringFeatures> v;
      for (const auto& id : ids) v.push_back(data::select_channels(all.at(id), group));
      return v;
    };
    const auto trained = train_classifier(config, subset(train_ids), subset(val_ids),
                                          static_cast<std::uint64_t>(k));
    std::vector<metrics::RecordScores> scores;
    for (const auto& f : subset(eval_ids))
      scores.push_back(record_scores(f, predict_probs(trained.model, trained.normalizer, f)));
    const auto report = metrics::gross_metrics(scores);
    csv += name + "," + fmt(report.auroc) + "," + fmt(report.auprc) + "\n";
    rows.push_back({{"group", name},
                    {"auroc", report.auroc},
                    {"auprc", report.auprc},
                    {"prevalence", report.prevalence},
                    {"best_epoch", trained.result.best_epoch}});
  }
  write_text(out / "ablation.csv", csv);
  io::write_json(out / "ablation.json", Json{{"fold", k}, {"split", config.ablation.split}, {"rows", rows}});
  os << csv;
  return 0;
}

int cmd_ensemble_curve(const PipelineConfig& config, const EnsembleCurveOptions& opt,
                       const fs::path& out, std::ostream& os) {
  const std::string features_dir = pick(opt.features, config.paths.features);
  require_dir(features_dir, "features");
  const auto model_dirs = sorted_models(opt.models);
  Selection sel = opt.selection;
  sel.index = pick(sel.index, config.paths.index);
  const auto ids = select_ids(sel, container_ids(features_dir, "features.json"));
  if (ids.empty()) throw Error(ErrorKind::kIo, "no feature containers in " + features_dir);
  if (!out.empty()) require_out(out);

  const auto features = load_feature_set(features_dir, ids);
  // member_probs[m][r]
  std::vector<std::vector<MatrixD>> member_probs;
  for (const auto& d : model_dirs) {
    const auto m = load_member(d);
    std::vector<MatrixD> per_record;
    for (const auto& f : features) per_record.push_back(predict_probs(m.model, m.normalizer, f));
    member_probs.push_back(std::move(per_record));
  }

  std::string csv = "size,auroc,auprc\n";
  for (std::size_t n = 1; n <= member_probs.size(); ++n) {
    std::vector<metrics::RecordScores> scores;
    for (std::size_t r = 0; r < features.size(); ++r) {
      std::vector<MatrixD> members;
      for (std::size_t m = 0; m < n; ++m) members.push_back(member_probs[m][r]);
      scores.push_back(record_scores(features[r], ensemble::average_posteriors(members)));
    }
    const auto report = metrics::gross_metrics(scores);
    csv += std::to_string(n) + "," + fmt(report.auroc) + "," + fmt(report.auprc) + "\n";
  }
  if (!out.empty()) write_text(out / "ensemble_curve.csv", csv);
  os << csv;
  return 0;
}

int cmd_filterbank_dump(const PipelineConfig& config, const fs::path& out, std::ostream& os) {
  require_out(out);
  const auto fb = filterbank::build_filterbank(config.filterbank);
  const auto bounds = fb.frame_bounds();
  Json wavelets = Json::array();
  std::vector<double> psi;
  for (const auto& bp : fb.psi()) {
    wavelets.push_back({{"j", bp.j}, {"center_hz", bp.center_hz}, {"sigma_hz", bp.sigma_hz}});
    psi.insert(psi.end(), bp.spectrum.begin(), bp.spectrum.end());
  }
  const auto& c = fb.config();
  Json doc{{"format_version", io::kFormatVersion},
           {"fs", c.fs},
           {"n_fft", c.n_fft},
           {"J", c.J},
           {"Q", c.Q},
           {"T", c.T},
           {"psi_gain", fb.psi_gain()},
           {"phi_sigma_hz", fb.phi_sigma_hz()},
           {"frame_bounds", {{"low", bounds.low}, {"high", bounds.high}}},
           {"wavelets", wavelets},
           {"phi_file", "phi.dat"},
           {"psi_file", "psi.dat"},
           {"layout", "float64 little-endian; psi.dat is n_wavelets x n_fft row-major"}};
  io::write_f64(out / "phi.dat", fb.phi_hat());
  io::write_f64(out / "psi.dat", psi);
  io::write_json(out / "filterbank.json", doc);
  os << doc.dump(2) << "\n";
  return 0;
}

}  // namespace arousal::cli
