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

// Reference (serial) kernels against the OpenMP ones.
//
//   bench_kernels --benchmark_filter=Scatter

#include <benchmark/benchmark.h>

#include <vector>

#include "arousal/core/seed.hpp"
#include "arousal/data/record.hpp"
#include "arousal/filterbank/filterbank.hpp"
#include "arousal/model/network.hpp"
#include "arousal/model/params.hpp"
#include "arousal/scattering/cascade.hpp"

using namespace arousal;

namespace {

data::Record bench_record(std::size_t channels, double seconds) {
  data::Record r;
  r.id = "bench";
  r.fs = 200.0;
  for (std::size_t c = 0; c < channels; ++c) r.channel_names.push_back("ch" + std::to_string(c));
  r.samples = MatrixF(static_cast<std::size_t>(seconds * r.fs), channels);
  Rng rng(1);
  for (float& v : r.samples.flat()) v = static_cast<float>(standard_normal(rng));
  r.targets.assign(r.n_samples(), Label::kNonArousal);
  return r;
}

const filterbank::FilterBank& bank() {
  static const auto fb = filterbank::build_filterbank({});
  return fb;
}

void BM_ScatterReference(benchmark::State& state) {
  const auto rec = bench_record(static_cast<std::size_t>(state.range(0)), 600.0);
  for (auto _ : state) benchmark::DoNotOptimize(scattering::reference::scatter_record(rec, bank()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScatterParallel(benchmark::State& state) {
  const auto rec = bench_record(static_cast<std::size_t>(state.range(0)), 600.0);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(scattering::scatter_record(rec, bank(), jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct GradientSetup {
  model::Model model;
  std::vector<model::Sequence> seqs;
  std::vector<const model::Sequence*> ptrs;

  GradientSetup(std::size_t batch, std::size_t frames) {
    model::ModelConfig c;
    c.input_dim = 36 * 13;
    c.hidden_units = 16;
    c.seed = 3;
    model = model::make_model(c);
    Rng rng(4);
    for (std::size_t b = 0; b < batch; ++b) {
      model::Sequence s{MatrixD(frames, c.input_dim), std::vector<Label>(frames)};
      for (double& v : s.features.flat()) v = standard_normal(rng);
      for (auto& y : s.targets) y = uniform01(rng) < 0.1 ? Label::kArousal : Label::kNonArousal;
      seqs.push_back(std::move(s));
    }
    for (const auto& s : seqs) ptrs.push_back(&s);
  }
};

void BM_GradientReference(benchmark::State& state) {
  GradientSetup g(static_cast<std::size_t>(state.range(0)), 256);
  for (auto _ : state)
    benchmark::DoNotOptimize(model::reference::batch_gradient(g.model, g.ptrs, model::ClassWeights{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GradientParallel(benchmark::State& state) {
  GradientSetup g(static_cast<std::size_t>(state.range(0)), 256);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(model::batch_gradient(g.model, g.ptrs, model::ClassWeights{}, jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScatterReference)->Arg(1)->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScatterParallel)
    ->Args({1, 1})
    ->Args({13, 1})
    ->Args({13, 0})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientReference)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientParallel)->Args({8, 1})->Args({8, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
