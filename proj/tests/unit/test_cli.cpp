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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "arousal/cli/commands.hpp"
#include "arousal/cli/config.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/ensemble/ensemble.hpp"
#include "arousal/model/model_io.hpp"
#include "arousal/scattering/features_io.hpp"
#include "test_util.hpp"

using namespace arousal;
using namespace arousal::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AROUSAL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

PipelineConfig tiny_config() {
  PipelineConfig c = default_config();
  c.seed = 3;
  c.jobs = 1;
  c.synth.n_records = 12;
  c.synth.duration_s = 60.0;
  c.model.hidden_units = 4;
  c.model.n_layers = 1;
  c.train.max_epochs = 3;
  c.train.max_length = 32;
  return c;
}

// one shared pipeline run for the tests below
struct Pipeline {
  testing::TempDir dir{"cli"};
  PipelineConfig config = tiny_config();
  std::ostringstream log;
  Pipeline() {
    cmd_synth(config, dir / "recs", log);
    ScatterOptions so;
    so.records = (dir / "recs").string();
    so.normalize = true;
    so.selection = {(dir / "recs" / "index.json").string(), "test", 0};
    cmd_scatter(config, so, dir / "feats", log);
    ScatterOptions all;
    all.records = so.records;
    cmd_scatter(config, all, dir / "raw", log);
    cmd_train(config, {(dir / "raw").string(), (dir / "recs" / "index.json").string(), 0},
              dir / "m0", log);
  }
  fs::path operator/(const std::string& s) const { return dir / s; }
};

Pipeline& pipeline() {
  static Pipeline p;
  return p;
}

}  // namespace

TEST_CASE("config defaults and JSON") {
  const auto c = default_config();
  CHECK(c.train.max_length == 256);
  CHECK(c.train.learning_rate == 1e-3);
  CHECK(c.ablation.groups.size() == 7);
  CHECK(config_from_json(config_to_json(c)) == c);
  CHECK(config_from_json(io::Json::object()) == c);

  auto doc = io::Json::parse(R"({"seed": 9, "model": {"hidden_units": 8}})");
  const auto d = config_from_json(doc);
  CHECK(d.seed == 9);
  CHECK(d.model.hidden_units == 8);

  for (const char* bad : {R"({"sed": 1})", R"({"model": {"hidden": 8}})",
                          R"({"seed": "x"})", R"({"filterbank": {"Q": 0}})"}) {
    INFO(bad);
    try {
      config_from_json(io::Json::parse(bad));
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kConfig);
    }
  }
  CommonOptions co;
  co.config = "/nonexistent/config.json";
  CHECK_THROWS_AS(resolve_config(co), Error);
  co.config.clear();
  co.seed = 11;
  co.jobs = 2;
  const auto r = resolve_config(co);
  CHECK(r.seed == 11);
  CHECK(r.jobs == 2);
}

TEST_CASE("synth and scatter outputs") {
  auto& p = pipeline();
  CHECK(list_containers(p / "recs", "header.json").size() == 12);
  CHECK(fs::exists(p / "recs" / "index.json"));
  const auto feats = list_containers(p / "feats", "features.json");
  REQUIRE(feats.size() == 1);  // test role of fold 0: 10 pooled ids, one per fold
  const auto f = scattering::load_features(feats.front());
  CHECK(f.n_paths() == 36);
  CHECK(f.frame_rate == 0.390625);
  CHECK(f.n_channels() == 13);
  CHECK(f.normalized);
  CHECK(fs::exists(p / "feats" / "normalizer.json"));
  CHECK(list_containers(p / "raw", "features.json").size() == 12);
}

TEST_CASE("train writes a loadable model") {
  auto& p = pipeline();
  for (const char* file : {"model.json", "normalizer.json", "history.csv", "train.json"})
    CHECK(fs::exists(p / "m0" / file));
  const auto hist = slurp(p / "m0" / "history.csv");
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 4);
}

TEST_CASE("predict, evaluate and identical ensembles") {
  auto& p = pipeline();
  const std::string idx = (p / "recs" / "index.json").string();
  std::ostringstream os;
  PredictOptions po;
  po.models = {(p / "m0").string()};
  po.features = (p / "raw").string();
  po.selection = {idx, "test", 0};
  CHECK(cmd_predict(p.config, po, p / "pred1", os) == 0);

  fs::copy(p / "m0", p / "m1", fs::copy_options::recursive);
  fs::copy(p / "m0", p / "m2", fs::copy_options::recursive);
  po.models = {(p / "m2").string(), (p / "m0").string(), (p / "m1").string()};
  CHECK(cmd_predict(p.config, po, p / "pred3", os) == 0);
  const auto ids = list_containers(p / "pred1", "pred.json");
  REQUIRE(ids.size() == 1);
  for (const auto& d : ids) {
    const auto a = ensemble::load_prediction(d);
    const auto b = ensemble::load_prediction(p / "pred3" / d.filename());
    CHECK(a.probs == b.probs);
    CHECK(b.n_members == 3);
  }

  // rerun is byte-identical
  CHECK(cmd_predict(p.config, po, p / "pred3b", os) == 0);
  for (const auto& d : ids)
    CHECK(slurp(d.parent_path().parent_path() / "pred3" / d.filename() / "probs.dat") ==
          slurp(p / "pred3b" / d.filename() / "probs.dat"));

  EvaluateOptions eo{(p / "pred1").string(), (p / "raw").string(), true};
  try {
    cmd_evaluate(p.config, eo, p / "eval", os);
    CHECK(fs::exists(p / "eval" / "metrics.json"));
    CHECK(slurp(p / "eval" / "roc.csv").rfind("fpr,tpr\n", 0) == 0);
    CHECK(slurp(p / "eval" / "pr.csv").rfind("recall,precision\n", 0) == 0);
    const auto m = io::read_json(p / "eval" / "metrics.json");
    CHECK(m["auroc"].get<double>() >= 0.0);
    CHECK(m["auroc"].get<double>() <= 1.0);
  } catch (const Error& e) {
    // one short record may lack arousal frames entirely
    CHECK(e.kind() == ErrorKind::kUndefinedMetric);
  }
}

TEST_CASE("library helpers reject mismatched inputs") {
  auto& p = pipeline();
  const auto raw = list_containers(p / "raw", "features.json");
  const auto f = scattering::load_features(raw.front());
  const auto m = model::load_model(p / "m0");
  // raw features without the normalizer the model was trained with
  CHECK_THROWS_AS(predict_probs(m, std::nullopt, f), Error);
  MatrixD wrong(f.n_frames + 1, 3);
  try {
    record_scores(f, wrong);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimension);
  }
  const auto seq = to_sequence(f, 32);
  CHECK(seq.targets.size() == 32);
  CHECK(seq.features.rows() == 32);
  CHECK(seq.targets.back() == Label::kPad);
}

TEST_CASE("binary exit codes") {
  auto& p = pipeline();
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 1);
  CHECK(run_cli("synth --bogus") == 1);
  CHECK(run_cli("train --features /nonexistent --index /nonexistent --out " +
                (p / "x").string()) == 2);
  CHECK(run_cli("scatter --records " + (p / "recs").string() + " --channels EOG --out " +
                (p / "y").string()) == 1);

  // single-class labels make the metrics undefined
  fs::create_directories(p / "oneclass" / "feats");
  const auto src = list_containers(p / "raw", "features.json").front();
  auto f = scattering::load_features(src);
  std::fill(f.frame_targets.begin(), f.frame_targets.end(), Label::kNonArousal);
  scattering::save_features(f, p / "oneclass" / "feats" / src.filename());
  MatrixD probs(f.n_frames, 3, 1.0 / 3.0);
  const ensemble::PredictionFile pred{f.record_id, 1, f.frame_rate, probs};
  ensemble::save_prediction(pred, p / "oneclass" / "pred" / src.filename());
  CHECK(run_cli("evaluate --predictions " + (p / "oneclass" / "pred").string() +
                " --features " + (p / "oneclass" / "feats").string()) == 3);

  CHECK(run_cli("filterbank dump --out " + (p / "fb").string()) == 0);
  CHECK(fs::exists(p / "fb" / "filterbank.json"));
  CHECK(fs::file_size(p / "fb" / "psi.dat") > 0);
}
