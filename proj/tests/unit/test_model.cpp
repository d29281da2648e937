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
#include <fstream>
#include <limits>
#include <vector>

#include "catch_amalgamated.hpp"
#include "arousal/core/errors.hpp"
#include "arousal/core/seed.hpp"
#include "arousal/model/layers.hpp"
#include "arousal/model/model_io.hpp"
#include "arousal/model/network.hpp"
#include "arousal/model/optimizer.hpp"
#include "arousal/model/params.hpp"
#include "arousal/model/train.hpp"
#include "test_util.hpp"

using namespace arousal;
using namespace arousal::model;
using Catch::Approx;

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

MatrixD random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
  MatrixD m(r, c);
  for (double& v : m.flat()) v = scale * standard_normal(rng);
  return m;
}

std::vector<Label> random_targets(std::size_t n, Rng& rng, bool allow_pad = true) {
  std::vector<Label> t(n);
  for (auto& y : t) y = static_cast<Label>(allow_pad ? uniform_index(rng, 3) : 1 + uniform_index(rng, 2));
  // keep at least two labelled frames for batch statistics
  t[0] = Label::kArousal;
  t[1] = Label::kNonArousal;
  return t;
}

Model tiny_model(std::size_t in, std::size_t H, std::uint64_t seed) {
  ModelConfig c;
  c.input_dim = in;
  c.hidden_units = H;
  c.seed = seed;
  Model m = make_model(c);
  // move BN affine parameters away from (1, 0) so their gradients are generic
  Rng rng(seed + 100);
  for (auto& bn : m.params.bn) {
    for (double& g : bn.gamma) g = 1.0 + 0.3 * standard_normal(rng);
    for (double& b : bn.beta) b = 0.3 * standard_normal(rng);
  }
  return m;
}

double train_loss(const Model& m, const MatrixD& x, const std::vector<Label>& y, const ClassWeights& w) {
  const auto mask = labelled_mask(y);
  return weighted_cross_entropy(forward(m, x, Mode::kTrain, mask), y, w).loss;
}

}  // namespace

TEST_CASE("lstm: zero parameters give zero hidden state") {
  LstmLayer l{MatrixD(8, 3), MatrixD(8, 2), std::vector<double>(8, 0.0)};
  Rng rng(1);
  const MatrixD h = lstm_forward(l, random_matrix(5, 3, rng));
  for (double v : h.flat()) CHECK(v == 0.0);
  CHECK(lstm_forward(l, MatrixD(0, 3)).rows() == 0);
  CHECK_THROWS_AS(lstm_forward(l, MatrixD(2, 4)), Error);
}

TEST_CASE("lstm: hand-computed scalar recurrence") {
  // H = 1, in = 1; rows i, f, g, o
  LstmLayer l{MatrixD(4, 1), MatrixD(4, 1), {0.1, -0.2, 0.3, 0.05}};
  const double w[4] = {0.5, -0.4, 0.9, 1.1}, u[4] = {0.2, 0.7, -0.6, 0.3};
  for (int k = 0; k < 4; ++k) {
    l.W(k, 0) = w[k];
    l.U(k, 0) = u[k];
  }
  const double xs[2] = {0.8, -1.3};
  MatrixD x(2, 1);
  x(0, 0) = xs[0];
  x(1, 0) = xs[1];
  const MatrixD h = lstm_forward(l, x);
  double hp = 0, cp = 0;
  for (int t = 0; t < 2; ++t) {
    const double i = sigmoid(w[0] * xs[t] + u[0] * hp + 0.1);
    const double f = sigmoid(w[1] * xs[t] + u[1] * hp - 0.2);
    const double g = std::tanh(w[2] * xs[t] + u[2] * hp + 0.3);
    const double o = sigmoid(w[3] * xs[t] + u[3] * hp + 0.05);
    cp = f * cp + i * g;
    hp = o * std::tanh(cp);
    CHECK(std::abs(h(t, 0) - hp) < 1e-12);
  }
}

TEST_CASE("batch norm examples") {
  BatchNorm bn{{1.0}, {0.0}, {0.0}, {1.0}};
  MatrixD x(3, 1);
  x(0, 0) = 2.0;
  x(1, 0) = -1.0;
  x(2, 0) = 0.5;
  const MatrixD y = bn_infer_forward(x, bn, 1e-5);
  for (std::size_t t = 0; t < 3; ++t) CHECK(y(t, 0) == Approx(x(t, 0) / std::sqrt(1 + 1e-5)).epsilon(1e-15));

  BatchNorm bn2{{1.0}, {0.7}, {0.0}, {1.0}};
  MatrixD c(4, 1, 3.0);
  BnCache cache;
  const MatrixD cy = bn_train_forward(c, bn2, 1e-5, {}, cache);
  for (double v : cy.flat()) CHECK(v == Approx(0.7).margin(1e-12));

  BatchNorm bn3{{2.0}, {1.0}, {0.0}, {1.0}};
  MatrixD pm(2, 1);
  pm(0, 0) = -1.0;
  pm(1, 0) = 1.0;
  const MatrixD z = bn_train_forward(pm, bn3, 1e-5, {}, cache);
  CHECK(z(0, 0) == Approx(1.0 - 2.0 / std::sqrt(1 + 1e-5)).epsilon(1e-14));
  CHECK(z(1, 0) == Approx(1.0 + 2.0 / std::sqrt(1 + 1e-5)).epsilon(1e-14));

  try {
    bn_train_forward(MatrixD(1, 1), bn3, 1e-5, {}, cache);
    FAIL("expected statistics error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kStatistics);
  }
  // mask leaves a single frame in the pool
  const std::vector<std::uint8_t> mask{1, 0};
  CHECK_THROWS_AS(bn_train_forward(pm, bn3, 1e-5, mask, cache), Error);
}

TEST_CASE("batch norm running statistics use momentum") {
  BatchNorm bn{{1.0}, {0.0}, {0.0}, {1.0}};
  MatrixD x(2, 1);
  x(0, 0) = 1.0;
  x(1, 0) = 3.0;
  bn_forward(x, bn, Mode::kTrain, 1e-5, 0.9);
  CHECK(bn.running_mean[0] == Approx(0.1 * 2.0));
  CHECK(bn.running_var[0] == Approx(0.9 + 0.1 * 1.0));
  const auto before = bn;
  bn_forward(x, bn, Mode::kInfer, 1e-5, 0.9);
  CHECK(bn == before);
}

TEST_CASE("forward: softmax rows and zero model") {
  Model m = tiny_model(4, 5, 3);
  Rng rng(4);
  const MatrixD x = random_matrix(9, 4, rng);
  for (Mode mode : {Mode::kInfer, Mode::kTrain}) {
    const MatrixD p = forward(m, x, mode);
    for (std::size_t t = 0; t < p.rows(); ++t) {
      double s = 0;
      for (double v : p.row(t)) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        s += v;
      }
      CHECK(std::abs(s - 1.0) < 1e-9);
    }
  }
  CHECK(forward(m, x, Mode::kInfer) == forward(m, x, Mode::kInfer));
  CHECK_THROWS_AS(forward(m, random_matrix(3, 5, rng), Mode::kInfer), Error);

  Model z = m;
  for (auto& t : trainable(z.params))
    std::fill(t.values.begin(), t.values.end(), 0.0);
  const MatrixD pz = forward(z, x, Mode::kInfer);
  for (double v : pz.flat()) CHECK(v == Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("weighted cross-entropy examples") {
  const ClassWeights w;
  MatrixD p(1, 3);
  p(0, 0) = 0.25;
  p(0, 1) = 0.25;
  p(0, 2) = 0.5;
  const std::vector<Label> a{Label::kArousal};
  CHECK(std::abs(weighted_cross_entropy(p, a, w).loss - std::log(2.0)) < 1e-12);

  MatrixD one(1, 3);
  one(0, 2) = 1.0;
  CHECK(weighted_cross_entropy(one, a, w).per_frame[0] == 0.0);

  MatrixD two(2, 3, 1.0 / 3.0);
  const std::vector<Label> mixed{Label::kPad, Label::kNonArousal};
  const auto r = weighted_cross_entropy(two, mixed, w);
  CHECK(r.per_frame[0] == 0.0);
  CHECK(r.total_weight == 1.0);

  try {
    weighted_cross_entropy(two, std::vector<Label>{Label::kPad, Label::kPad}, w);
    FAIL("expected degenerate batch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateBatch);
  }
}

TEST_CASE("backward matches central finite differences") {
  const ClassWeights w;
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 6; ++trial) {
    Rng rng(1000 + trial);
    const std::size_t in = 2 + trial % 3, H = 2 + trial % 2, T = 5 + trial % 3;
    Model m = tiny_model(in, H, trial);
    const MatrixD x = random_matrix(T, in, rng);
    const auto y = random_targets(T, rng);
    const BackwardResult g = backward(m, x, y, w);
    CHECK(g.loss == Approx(train_loss(m, x, y, w)).epsilon(1e-13));

    auto params = trainable(m.params);
    const auto grads = trainable(g.grads);
    REQUIRE(params.size() == grads.size());
    const double h = 1e-5;
    for (std::size_t k = 0; k < params.size(); ++k)
      for (std::size_t i = 0; i < params[k].values.size(); ++i) {
        double& theta = params[k].values[i];
        const double saved = theta;
        theta = saved + h;
        const double lp = train_loss(m, x, y, w);
        theta = saved - h;
        const double lm = train_loss(m, x, y, w);
        theta = saved;
        const double numeric = (lp - lm) / (2 * h);
        const double analytic = grads[k].values[i];
        const double rel = std::abs(analytic - numeric) /
                           std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        worst = std::max(worst, rel);
        INFO(params[k].name << "[" << i << "] analytic " << analytic << " numeric " << numeric);
        CHECK(rel < 1e-4);
      }
  }
  INFO("worst relative error " << worst);
  CHECK(worst < 1e-4);
}

TEST_CASE("all-PAD targets give zero gradients") {
  Model m = tiny_model(3, 3, 7);
  Rng rng(8);
  const auto g = backward(m, random_matrix(4, 3, rng), std::vector<Label>(4, Label::kPad), ClassWeights{});
  CHECK(g.loss == 0.0);
  for (const auto& t : trainable(g.grads))
    for (double v : t.values) CHECK(v == 0.0);
}

TEST_CASE("appending PAD frames leaves loss and gradients unchanged") {
  Model m = tiny_model(3, 4, 9);
  Rng rng(10);
  const MatrixD x = random_matrix(6, 3, rng);
  const auto y = random_targets(6, rng, false);
  MatrixD xp(10, 3);
  for (std::size_t t = 0; t < 6; ++t)
    for (std::size_t c = 0; c < 3; ++c) xp(t, c) = x(t, c);
  for (std::size_t t = 6; t < 10; ++t)
    for (std::size_t c = 0; c < 3; ++c) xp(t, c) = 50.0 * standard_normal(rng);
  auto yp = y;
  yp.resize(10, Label::kPad);
  const auto a = backward(m, x, y, ClassWeights{});
  const auto b = backward(m, xp, yp, ClassWeights{});
  CHECK(std::abs(a.loss - b.loss) < 1e-9);
  const auto ga = trainable(a.grads), gb = trainable(b.grads);
  for (std::size_t k = 0; k < ga.size(); ++k)
    for (std::size_t i = 0; i < ga[k].values.size(); ++i)
      CHECK(std::abs(ga[k].values[i] - gb[k].values[i]) <= 1e-12 * (1 + std::abs(ga[k].values[i])));
}

TEST_CASE("batch gradients: duplicates, thread count and reference") {
  Model m = tiny_model(3, 4, 11);
  Rng rng(12);
  std::vector<Sequence> seqs;
  for (int i = 0; i < 5; ++i) seqs.push_back({random_matrix(6 + i, 3, rng), random_targets(6 + i, rng)});
  const Sequence* one[] = {&seqs[0]};
  const Sequence* dup[] = {&seqs[0], &seqs[0]};
  const auto g1 = batch_gradient(m, one, ClassWeights{});
  const auto g2 = batch_gradient(m, dup, ClassWeights{});
  const auto t1 = trainable(g1.grads), t2 = trainable(g2.grads);
  for (std::size_t k = 0; k < t1.size(); ++k)
    for (std::size_t i = 0; i < t1[k].values.size(); ++i)
      CHECK(std::abs(t1[k].values[i] - t2[k].values[i]) <= 1e-12 * (1 + std::abs(t1[k].values[i])));

  std::vector<const Sequence*> all;
  for (const auto& s : seqs) all.push_back(&s);
  const auto a = batch_gradient(m, all, ClassWeights{}, 1);
  const auto b = batch_gradient(m, all, ClassWeights{}, 4);
  const auto r = reference::batch_gradient(m, all, ClassWeights{});
  CHECK(a.grads == b.grads);
  CHECK(a.grads == r.grads);
  CHECK(a.mean_loss == r.mean_loss);
}

TEST_CASE("rmsprop examples") {
  RmsPropSettings s{0.1, 0.9, 1e-8};
  std::vector<double> theta{0.0}, v{0.0};
  const std::vector<double> g{1.0};
  rmsprop_update(theta, g, v, s);
  CHECK(v[0] == Approx(0.1).epsilon(1e-15));
  CHECK(theta[0] == Approx(-0.1 / std::sqrt(0.1 + 1e-8)).epsilon(1e-14));
  CHECK(theta[0] == Approx(-0.31623).epsilon(1e-5));
  const double before = theta[0];
  rmsprop_update(theta, g, v, s);
  CHECK(v[0] == Approx(0.19).epsilon(1e-14));
  CHECK(theta[0] - before == Approx(-0.22942).epsilon(1e-4));

  std::vector<double> t2{1.0, 2.0}, v2{0.5, 0.2};
  const std::vector<double> zero{0.0, 0.0};
  rmsprop_update(t2, zero, v2, s);
  CHECK(t2 == std::vector<double>{1.0, 2.0});
  CHECK(v2[0] == Approx(0.45));
  CHECK(v2[1] == Approx(0.18));

  std::vector<double> bad{std::numeric_limits<double>::quiet_NaN(), 0.0};
  std::vector<double> t3{1.0, 1.0}, v3{0.0, 0.0};
  try {
    rmsprop_update(t3, bad, v3, s, "lstm0.W");
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDivergence);
    CHECK(std::string(e.what()).find("lstm0.W") != std::string::npos);
  }
  CHECK(t3 == std::vector<double>{1.0, 1.0});
}

TEST_CASE("early stopping rule") {
  EarlyStopping es(1);
  CHECK_FALSE(es.observe(1, 1.0));
  CHECK(es.observe(2, 1.5));
  CHECK(es.best_epoch() == 1);

  EarlyStopping p3(3);
  const double losses[] = {5, 4, 4.5, 3, 3.1, 3.2, 3.3};
  std::size_t stop = 0;
  for (std::size_t e = 1; e <= 7 && !stop; ++e)
    if (p3.observe(e, losses[e - 1])) stop = e;
  CHECK(stop == 7);
  CHECK(p3.best_epoch() == 4);
}

namespace {

// Two-class toy task: arousal frames shifted by 3 sigma in every feature.
std::vector<Sequence> toy_set(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Sequence> out;
  for (std::size_t s = 0; s < n; ++s) {
    Sequence q{MatrixD(20, 2), std::vector<Label>(20)};
    for (std::size_t t = 0; t < 20; ++t) {
      const bool a = uniform01(rng) < 0.3;
      q.targets[t] = a ? Label::kArousal : Label::kNonArousal;
      for (std::size_t c = 0; c < 2; ++c) q.features(t, c) = standard_normal(rng) + (a ? 3.0 : 0.0);
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

TEST_CASE("training: toy task, determinism, best epoch") {
  ModelConfig mc;
  mc.input_dim = 2;
  mc.hidden_units = 8;
  mc.seed = 5;
  TrainConfig tc;
  tc.learning_rate = 0.01;
  tc.max_epochs = 200;
  tc.patience = 20;
  tc.class_weights = ClassWeights{{0.0, 1.0, 1.0}};
  tc.seed = 6;
  const auto train_set = toy_set(8, 1), val_set = toy_set(3, 2);
  const auto r = train(mc, train_set, val_set, tc);
  CHECK(r.best_val_loss < 0.1 * r.initial_val_loss);
  double min_val = r.initial_val_loss;
  for (const auto& h : r.history) min_val = std::min(min_val, h.val_loss);
  CHECK(r.best_val_loss == min_val);
  CHECK(evaluation_loss(r.best, val_set, tc.class_weights) == r.best_val_loss);

  tc.max_epochs = 15;
  const auto a = train(mc, train_set, val_set, tc);
  tc.jobs = 3;
  const auto b = train(mc, train_set, val_set, tc);
  CHECK(a.best == b.best);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].train_loss == b.history[i].train_loss);
    CHECK(a.history[i].val_loss == b.history[i].val_loss);
  }
}

TEST_CASE("training rejects degenerate data") {
  ModelConfig mc;
  mc.input_dim = 2;
  mc.hidden_units = 3;
  std::vector<Sequence> pad{{MatrixD(4, 2), std::vector<Label>(4, Label::kPad)}};
  try {
    train(mc, pad, pad, TrainConfig{});
    FAIL("expected training error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTraining);
  }
  TrainConfig tc;
  tc.max_length = 3;
  auto ok = toy_set(1, 3);
  try {
    train(mc, ok, ok, tc);
    FAIL("expected length error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLength);
  }
}

TEST_CASE("class weight from prevalence") {
  auto make = [](std::size_t non, std::size_t aro, std::size_t pad) {
    std::vector<Label> t(non, Label::kNonArousal);
    t.insert(t.end(), aro, Label::kArousal);
    t.insert(t.end(), pad, Label::kPad);
    return t;
  };
  CHECK(class_weight_from_prevalence(make(14, 1, 5)).weights.w[2] == 14.0);
  CHECK(class_weight_from_prevalence(make(5, 5, 0)).weights.w[2] == 1.0);
  CHECK(class_weight_from_prevalence(make(7, 2, 0)).weights.w[2] == 4.0);
  CHECK(class_weight_from_prevalence(make(1, 9, 0)).weights.w[2] == 1.0);
  CHECK(class_weight_from_prevalence(make(5000, 1, 0)).weights.w[2] == 1000.0);
  const auto none = class_weight_from_prevalence(make(5, 0, 0));
  CHECK(none.no_arousal);
  CHECK(none.weights.w[2] == 1000.0);
  CHECK(none.weights.w[0] == 0.0);
  CHECK(none.weights.w[1] == 1.0);
  CHECK_THROWS_AS(class_weight_from_prevalence(make(0, 0, 3)), Error);
}

TEST_CASE("model files round-trip bit-exactly") {
  testing::TempDir dir("model");
  Model m = tiny_model(5, 4, 21);
  m.params.bn[0].running_mean[1] = 0.123456789012345;
  save_model(m, {7, 0.5, 99}, dir / "m");
  ModelMeta meta;
  const Model back = load_model(dir / "m", &meta);
  CHECK(back == m);
  CHECK(meta.epoch == 7);
  CHECK(meta.seed == 99);
  CHECK(std::filesystem::file_size(dir / "m" / "model.dat") ==
        8 * (parameter_count(m.params) + 2 * 2 * 4));

  const std::vector<EpochRecord> hist{{1, 0.5, 0.6}, {2, 0.25, 0.3}};
  save_history(hist, dir / "h.csv");
  std::ifstream in(dir / "h.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "epoch,train_loss,val_loss");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);

  testing::truncate_file(dir / "m" / "model.dat", 8);
  CHECK_THROWS_AS(load_model(dir / "m"), Error);
}
