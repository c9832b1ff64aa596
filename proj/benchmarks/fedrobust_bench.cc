// Copyright 2026 The fedrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <array>
#include <memory>
#include <numeric>

#include "fedrobust/augmix/augmix.h"
#include "fedrobust/common/rng.h"
#include "fedrobust/data/corruption.h"
#include "fedrobust/data/synthetic.h"
#include "fedrobust/losses/losses.h"
#include "fedrobust/model/classifier.h"
#include "fedrobust/model/network.h"

namespace {

using namespace fedrobust;

const data::LabeledDataset& Digits() {
  static const auto ds = data::GenerateSynthetic(data::SyntheticKind::kDigits, 64, 16, 1);
  return ds;
}

std::shared_ptr<const model::Network> SmallNet() {
  static const auto net = std::make_shared<model::Network>(
      model::MakeArchitecture("cnn", Digits().images.shape, 10));
  return net;
}

void BM_Forward(benchmark::State& state) {
  const auto net = SmallNet();
  model::Classifier clf(net, net->InitParameters(3));
  std::vector<size_t> idx(static_cast<size_t>(state.range(0)));
  std::iota(idx.begin(), idx.end(), size_t{0});
  const ImageBatch batch = Digits().images.Batch(idx);
  for (auto _ : state) benchmark::DoNotOptimize(clf.PredictProba(batch));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(32);

void BM_CrossEntropyGradient(benchmark::State& state) {
  const auto net = SmallNet();
  model::Classifier clf(net, net->InitParameters(3));
  std::vector<size_t> idx(32);
  std::iota(idx.begin(), idx.end(), size_t{0});
  const std::array<ImageBatch, 1> inputs = {Digits().images.Batch(idx)};
  std::vector<uint16_t> labels(Digits().labels.begin(), Digits().labels.begin() + 32);
  const auto loss = losses::CrossEntropyLoss(labels);
  for (auto _ : state) benchmark::DoNotOptimize(model::Gradient(clf, inputs, loss));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_CrossEntropyGradient);

void BM_AugMix(benchmark::State& state) {
  const augmix::AugMixConfig cfg;
  const Image img = Digits().images.ImageAt(0);
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(augmix::AugMix(img, cfg, rng));
}
BENCHMARK(BM_AugMix);

void BM_Corrupt(benchmark::State& state) {
  const auto filter = static_cast<data::Filter>(state.range(0));
  const Image img = Digits().images.ImageAt(0);
  uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(data::Corrupt(img, {filter, 3}, ++seed));
  state.SetLabel(std::string(data::FilterName(filter)));
}
BENCHMARK(BM_Corrupt)->DenseRange(1, 6);

}  // namespace

BENCHMARK_MAIN();
