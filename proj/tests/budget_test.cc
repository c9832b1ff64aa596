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


#include "fedrobust/budget/budget.h"

#include <gtest/gtest.h>

#include <cmath>

#include "fedrobust/common/error.h"
#include "test_support.h"

namespace fedrobust::budget {
namespace {

using fed::Method;
using testing::Gen;

TEST(Modes, MethodsMapToClientTrainingModes) {
  EXPECT_EQ(ClientMode(Method::kCleanFL), TrainingMode::kClean);
  EXPECT_EQ(ClientMode(Method::kFedERL), TrainingMode::kClean);
  EXPECT_EQ(ClientMode(Method::kRobustFL), TrainingMode::kRobust);
  EXPECT_EQ(ParseMode(ModeName(TrainingMode::kRobust)), TrainingMode::kRobust);
  EXPECT_THROW(ParseMode("turbo"), ConfigError);
  for (Method m : {Method::kCleanFL, Method::kRobustFL, Method::kFedERL})
    EXPECT_EQ(fed::ParseMethod(fed::MethodName(m)), m);
  EXPECT_THROW(fed::ParseMethod("FedProx"), ConfigError);
}

TEST(CostModel, DefaultRatios) {
  const auto m = CostModel::FromRatios("cnn", {2.0, 5.0});
  EXPECT_EQ(EpochCost(m, "cnn", TrainingMode::kClean), (Cost{2.0, 5.0}));
  const Cost r = EpochCost(m, "cnn", TrainingMode::kRobust);
  EXPECT_DOUBLE_EQ(r.time_s, 2.0 * 3.4);
  EXPECT_DOUBLE_EQ(r.energy_j, 5.0 * 3.2);
  EXPECT_THROW(EpochCost(m, "mlp", TrainingMode::kClean), ConfigError);
}

TEST(CostModel, ValidateRejectsNonPositiveOrInvertedCosts) {
  EXPECT_THROW(CostModel{}.Validate(), ConfigError);
  EXPECT_THROW(CostModel::FromRatios("cnn", {0.0, 1.0}).Validate(), ConfigError);
  EXPECT_THROW(CostModel::FromRatios("cnn", {1.0, 1.0}, 0.5).Validate(), ConfigError);
  auto m = CostModel::FromRatios("cnn", {1.0, 1.0});
  m.server_dart_epoch = {-1.0, 1.0};
  EXPECT_THROW(m.Validate(), ConfigError);
}

TEST(CostModel, JsonRoundTripAndErrors) {
  auto m = CostModel::FromRatios("cnn", {12.0, 30.0});
  m.per_architecture["mlp"] = {{1.0, 2.0}, {3.0, 4.0}};
  m.server_dart_epoch = {0.5, 7.0};
  const auto back = CostModel::FromJson(m.ToJson());
  EXPECT_EQ(back.ToJson(), m.ToJson());
  EXPECT_EQ(back.server_dart_epoch, m.server_dart_epoch);
  EXPECT_EQ(back.per_architecture.at("mlp").robust, (Cost{3.0, 4.0}));
  EXPECT_THROW(CostModel::FromJson("{"), ConfigError);
  EXPECT_THROW(CostModel::FromJson(R"({"gpu": 1})"), ConfigError);
  EXPECT_THROW(CostModel::FromJson(
                   R"({"architectures": {"cnn": {"clean": {"time_s": 1, "energy_J": 1},
                      "robust": {"time_s": 1, "energy_J": 1, "watts": 3}}}})"),
               ConfigError);
}

TEST(RoundsWithinBudget, ImpliedPerEpochCostsGiveEightyThreeAndTwentySeven) {
  CostModel m;
  m.per_architecture["resnet18"] = {{12.0, 1.0}, {36.5, 2.0}};
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kTime, 1000.0, Method::kCleanFL, 1, m, "resnet18"), 83);
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kTime, 1000.0, Method::kFedERL, 1, m, "resnet18"), 83);
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kTime, 1000.0, Method::kRobustFL, 1, m, "resnet18"), 27);
}

TEST(RoundsWithinBudget, PropertyMatchesFloorOracleAtDefaultRatio) {
  Gen g(1);
  for (int trial = 0; trial < 500; ++trial) {
    const double clean = g.Real(0.5, 20.0);
    const int epochs = g.Int(1, 3);
    const double budget = g.Real(clean * epochs, 5000.0);
    const auto m = CostModel::FromRatios("cnn", {clean, clean});
    const int c = RoundsWithinBudget(BudgetKind::kTime, budget, Method::kCleanFL, epochs, m, "cnn");
    const int r = RoundsWithinBudget(BudgetKind::kTime, budget, Method::kRobustFL, epochs, m, "cnn");
    const double per_c = epochs * clean, per_r = epochs * clean * 3.4;
    ASSERT_LE(c * per_c, budget);
    ASSERT_GT((c + 1) * per_c, budget);
    ASSERT_LE(r * per_r, budget);
    ASSERT_GT((r + 1) * per_r, budget);
    // Floor effects bound how far the count ratio can sit from 3.4.
    if (r > 0) {
      ASSERT_LE(c, 3.4 * (r + 1));
      ASSERT_GE(c + 1, 3.4 * r);
    }
  }
}

TEST(RoundsWithinBudget, EnergyKindUsesEnergyCosts) {
  const auto m = CostModel::FromRatios("cnn", {1.0, 10.0});
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kEnergy, 100.0, Method::kCleanFL, 1, m, "cnn"), 10);
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kEnergy, 100.0, Method::kRobustFL, 1, m, "cnn"), 3);
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kEnergy, 100.0, Method::kCleanFL, 2, m, "cnn"), 5);
  EXPECT_EQ(RoundsWithinBudget(BudgetKind::kEnergy, 5.0, Method::kCleanFL, 1, m, "cnn"), 0);
  EXPECT_THROW(RoundsWithinBudget(BudgetKind::kEnergy, 0.0, Method::kCleanFL, 1, m, "cnn"),
               ConfigError);
  EXPECT_THROW(RoundsWithinBudget(BudgetKind::kTime, 10.0, Method::kCleanFL, 0, m, "cnn"),
               ConfigError);
}

TEST(BudgetLedger, ChargeRoundAndCaps) {
  const auto m = CostModel::FromRatios("cnn", {2.0, 3.0});
  BudgetLedger l(3, 10.0);
  for (int i = 0; i < 5; ++i) l = ChargeRound(l, Method::kCleanFL, 1, m, "cnn");
  EXPECT_EQ(l.MaxSpent(), (Cost{10.0, 15.0}));
  EXPECT_FALSE(l.CanCharge({0.1, 0.0}));
  const BudgetLedger before = l;
  EXPECT_THROW(ChargeRound(l, Method::kCleanFL, 1, m, "cnn"), BudgetExhausted);
  EXPECT_THROW(l.Charge({0.1, 0.0}), BudgetExhausted);
  EXPECT_EQ(l, before);
  EXPECT_THROW(BudgetLedger(0), ConfigError);
  EXPECT_THROW(l.Charge({-1.0, 0.0}), ConfigError);
}

TEST(BudgetLedger, PropertyMonotoneUnderRandomCharges) {
  Gen g(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = g.Int(1, 6);
    std::optional<double> tcap, ecap;
    if (g.Coin()) tcap = g.Real(1.0, 50.0);
    if (g.Coin()) ecap = g.Real(1.0, 50.0);
    BudgetLedger l(k, tcap, ecap);
    for (int step = 0; step < 60; ++step) {
      const BudgetLedger before = l;
      const Cost c{g.Real(0.0, 3.0), g.Real(0.0, 3.0)};
      const int who = g.Int(-1, k - 1);
      bool ok = true;
      try {
        if (who < 0)
          l.Charge(c);
        else
          l.ChargeClient(who, c);
      } catch (const BudgetExhausted&) {
        ok = false;
      }
      if (!ok) {
        ASSERT_EQ(l, before);
        continue;
      }
      for (int i = 0; i < k; ++i) {
        ASSERT_GE(l.client(i).time_s, before.client(i).time_s);
        ASSERT_GE(l.client(i).energy_j, before.client(i).energy_j);
        if (tcap) ASSERT_LE(l.client(i).time_s, *tcap * (1 + 1e-12));
        if (ecap) ASSERT_LE(l.client(i).energy_j, *ecap * (1 + 1e-12));
      }
      ASSERT_GE(l.MaxSpent().time_s, before.MaxSpent().time_s);
    }
  }
}

}  // namespace
}  // namespace fedrobust::budget
