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


#include "fedrobust/dart/dart.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fedrobust/data/partition.h"
#include "test_support.h"

namespace fedrobust::dart {
namespace {

using testing::Gen;

struct Fixture {
  std::shared_ptr<const model::Network> net;
  model::Classifier pretrained;
  data::UnlabeledDataset proxy;
};

Fixture MakeFixture(size_t proxy_size = 20, uint64_t seed = 1) {
  Gen g(seed);
  const ImageShape shape{8, 8, 1};
  auto net = testing::TinyNetwork(shape, 3);
  Fixture f{net, model::Classifier(net, net->InitParameters(seed)), {}};
  f.proxy = data::DropLabels(testing::RandomDataset(g, proxy_size, shape, 3, "proxy"));
  return f;
}

DartConfig SmallConfig() {
  DartConfig cfg;
  cfg.max_epochs = 10;
  cfg.patience = 3;
  cfg.lr = 0.05;
  cfg.batch_size = 8;
  cfg.seed = 9;
  return cfg;
}

// Independent statement of the stopping rule: an epoch whose loss does not
// exceed the running minimum resets the counter and becomes the selection;
// training stops once the counter reaches patience - 1.
std::pair<int, int> StoppingOracle(const std::vector<double>& schedule, int patience,
                                   int max_epochs) {
  double best = std::numeric_limits<double>::infinity();
  int counter = 0, selected = 0, epoch = 0;
  while (epoch < max_epochs) {
    const double v = schedule.at(epoch++);
    if (v <= best) {
      best = v;
      selected = epoch;
      counter = 0;
    } else {
      ++counter;
    }
    if (counter == patience - 1) break;
  }
  return {epoch, selected};
}

TEST(DartConfig, ValidateRejectsBadFields) {
  EXPECT_NO_THROW(SmallConfig().Validate());
  auto c = SmallConfig();
  c.max_epochs = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.patience = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.lr = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.val_fraction = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.weights.alpha = -2;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(DartTrain, InjectedScheduleSelectsEpochTwo) {
  const auto f = MakeFixture();
  const std::vector<double> schedule = {5, 4, 6, 7, 8};
  std::vector<model::ParameterVector> seen;
  auto cfg = SmallConfig();
  cfg.max_epochs = 5;
  cfg.patience = 3;
  const auto r = DartTrain(f.pretrained, f.proxy, cfg, nullptr,
                           [&](int epoch, const model::ParameterVector& w) {
                             seen.push_back(w);
                             return schedule[epoch - 1];
                           });
  EXPECT_EQ(r.report.selected_epoch, 2);
  EXPECT_EQ(r.report.epochs_run, 4);
  EXPECT_TRUE(r.report.stopped_early);
  EXPECT_EQ(r.report.val_loss, (std::vector<double>{5, 4, 6, 7}));
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(r.weights, seen[1]);
  EXPECT_FALSE(r.weights == f.pretrained.params());
}

TEST(DartTrain, PropertyStoppingMatchesOracleOnRandomSchedules) {
  const auto f = MakeFixture(10);
  Gen g(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto cfg = SmallConfig();
    cfg.max_epochs = g.Int(1, 8);
    cfg.patience = g.Int(1, 4);
    cfg.lr = 0.0;
    std::vector<double> schedule(cfg.max_epochs);
    for (auto& v : schedule) v = g.Int(0, 4);  // small range forces ties
    const auto r = DartTrain(f.pretrained, f.proxy, cfg, nullptr,
                             [&](int epoch, const model::ParameterVector&) {
                               return schedule[epoch - 1];
                             });
    const auto [epochs, selected] = StoppingOracle(schedule, cfg.patience, cfg.max_epochs);
    ASSERT_EQ(r.report.epochs_run, epochs) << trial;
    ASSERT_EQ(r.report.selected_epoch, selected) << trial;
    ASSERT_EQ(r.report.stopped_early, epochs < cfg.max_epochs);
  }
}

TEST(DartTrain, ZeroLearningRateReturnsTheInputWeights) {
  const auto f = MakeFixture();
  auto cfg = SmallConfig();
  cfg.lr = 0.0;
  cfg.max_epochs = 4;
  const auto r = DartTrain(f.pretrained, f.proxy, cfg);
  EXPECT_EQ(r.weights, f.pretrained.params());
  // Validation views are redrawn every epoch, so the loss still moves and the
  // stopping rule applies to it as usual.
  const auto [epochs, selected] = StoppingOracle(r.report.val_loss, cfg.patience, cfg.max_epochs);
  EXPECT_EQ(r.report.epochs_run, epochs);
  EXPECT_EQ(r.report.selected_epoch, selected);
}

TEST(DartTrain, PassCountsFollowTheProxySplit) {
  const auto f = MakeFixture(20);
  auto cfg = SmallConfig();
  cfg.max_epochs = 2;
  cfg.patience = 5;
  const auto [tr, va] = data::SplitIndices(20, cfg.val_fraction, cfg.seed);
  model::PassCounter c;
  const auto r = DartTrain(f.pretrained, f.proxy, cfg, &c);
  ASSERT_EQ(r.report.epochs_run, 2);
  const uint64_t n_tr = tr.size(), n_va = va.size();
  EXPECT_EQ(c.forward, n_tr + n_va + 2 * (3 * n_tr + 3 * n_va));
  EXPECT_EQ(c.backward, 2 * 3 * n_tr);
}

TEST(DartTrain, DeterministicAndSeedSensitive) {
  const auto f = MakeFixture();
  auto cfg = SmallConfig();
  cfg.max_epochs = 3;
  const auto a = DartTrain(f.pretrained, f.proxy, cfg);
  const auto b = DartTrain(f.pretrained, f.proxy, cfg);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.report.val_loss, b.report.val_loss);
  EXPECT_EQ(a.report.ToJson(), b.report.ToJson());
  cfg.seed = 10;
  EXPECT_FALSE(DartTrain(f.pretrained, f.proxy, cfg).weights == a.weights);
}

TEST(DartTrain, SelectedEpochHasTheMinimumValidationLoss) {
  const auto f = MakeFixture(24, 3);
  auto cfg = SmallConfig();
  cfg.lr = 0.5;
  const auto r = DartTrain(f.pretrained, f.proxy, cfg);
  ASSERT_GE(r.report.selected_epoch, 1);
  const double chosen = r.report.val_loss[r.report.selected_epoch - 1];
  for (double v : r.report.val_loss) EXPECT_LE(chosen, v);
  // The reported validation loss can be recomputed from the returned weights.
  const auto [tr, va] = data::SplitIndices(f.proxy.size(), cfg.val_fraction, cfg.seed);
  EXPECT_NEAR(EvaluateDartValLoss(f.pretrained.WithParams(r.weights), f.pretrained,
                                  f.proxy.Subset(va), cfg, r.report.selected_epoch),
              chosen, 1e-12);
}

TEST(DartTrain, DivergenceCarriesTheReport) {
  const auto f = MakeFixture();
  auto cfg = SmallConfig();
  try {
    DartTrain(f.pretrained, f.proxy, cfg, nullptr, [](int epoch, const model::ParameterVector&) {
      return epoch == 2 ? std::nan("") : 1.0;
    });
    FAIL() << "expected DartDiverged";
  } catch (const DartDiverged& e) {
    EXPECT_EQ(e.report().epochs_run, 2);
    EXPECT_FALSE(e.report().diagnostic.empty());
  }
}

TEST(DartTrain, RejectsNonFiniteInputsAndEmptyProxy) {
  auto f = MakeFixture();
  auto w = f.pretrained.params();
  w[0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(DartTrain(f.pretrained.WithParams(w), f.proxy, SmallConfig()), NumericalError);
  auto cfg = SmallConfig();
  cfg.val_fraction = 0.01;
  EXPECT_THROW(DartTrain(f.pretrained, f.proxy, cfg), ConfigError);
}

TEST(DartReport, JsonFields) {
  DartReport r;
  r.epochs_run = 2;
  r.train_loss = {1.5, 1.0};
  r.val_loss = {2.0, 1.0};
  r.selected_epoch = 2;
  const std::string j = r.ToJson();
  EXPECT_NE(j.find("\"selected_epoch\": 2"), std::string::npos);
  EXPECT_EQ(j.find("diagnostic"), std::string::npos);
}

}  // namespace
}  // namespace fedrobust::dart
