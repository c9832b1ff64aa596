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


#include "fedrobust/model/parameters.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fedrobust/common/error.h"
#include "test_support.h"

namespace fedrobust::model {
namespace {

std::shared_ptr<const ParameterLayout> Layout(std::vector<std::pair<std::string, int>> parts) {
  std::vector<Segment> segs;
  size_t offset = 0;
  for (auto& [name, n] : parts) {
    segs.push_back({name, {n}, offset, static_cast<size_t>(n)});
    offset += n;
  }
  return std::make_shared<ParameterLayout>(segs);
}

ParameterVector Vec(const std::shared_ptr<const ParameterLayout>& l, std::vector<double> v) {
  return ParameterVector(l, std::move(v));
}

TEST(ParameterVector, SizeMustMatchLayout) {
  const auto l = Layout({{"w", 3}, {"b", 1}});
  EXPECT_EQ(l->total_size(), 4u);
  EXPECT_THROW(Vec(l, {1, 2, 3}), ConfigError);
  EXPECT_EQ(ParameterVector(l).size(), 4u);
  EXPECT_EQ(l->Describe(), "w 3\nb 1\n");
}

TEST(ParameterVector, EqualityIsBitwise) {
  const auto l = Layout({{"w", 2}});
  EXPECT_EQ(Vec(l, {0.1, 0.2}), Vec(l, {0.1, 0.2}));
  EXPECT_FALSE(Vec(l, {0.0, 0.2}) == Vec(l, {-0.0, 0.2}));
  EXPECT_FALSE(Vec(l, {0.1, 0.2}) == Vec(Layout({{"v", 2}}), {0.1, 0.2}));
}

TEST(Mean, OfIdenticalVectorsIsExactlyThatVector) {
  testing::Gen g(1);
  const auto l = Layout({{"w", 50}});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(50);
    for (auto& x : v) x = g.Real(-1e3, 1e3) * std::pow(10.0, g.Int(-8, 8));
    const ParameterVector p = Vec(l, v);
    const std::vector<ParameterVector> copies(static_cast<size_t>(g.Int(1, 13)), p);
    ASSERT_EQ(Mean(copies), p);
  }
}

TEST(Mean, TwoVectorsHandValue) {
  const auto l = Layout({{"w", 3}});
  const std::vector<ParameterVector> v = {Vec(l, {1, 2, 3}), Vec(l, {3, 6, -3})};
  EXPECT_EQ(Mean(v), Vec(l, {2, 4, 0}));
}

TEST(Mean, PropertyLiesBetweenMinAndMaxAndMatchesSum) {
  testing::Gen g(2);
  const auto l = Layout({{"w", 20}});
  for (int trial = 0; trial < 100; ++trial) {
    const int k = g.Int(1, 10);
    std::vector<ParameterVector> vs;
    for (int i = 0; i < k; ++i) {
      std::vector<double> v(20);
      for (auto& x : v) x = g.Real(-5, 5);
      vs.push_back(Vec(l, v));
    }
    const auto m = Mean(vs);
    for (size_t j = 0; j < 20; ++j) {
      double lo = 1e9, hi = -1e9, sum = 0;
      for (const auto& v : vs) {
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
        sum += v[j];
      }
      ASSERT_GE(m[j], lo - 1e-12);
      ASSERT_LE(m[j], hi + 1e-12);
      ASSERT_NEAR(m[j], sum / k, 1e-12);
    }
  }
}

TEST(Mean, Errors) {
  EXPECT_THROW(Mean({}), ConfigError);
  const std::vector<ParameterVector> mixed = {Vec(Layout({{"a", 2}}), {1, 2}),
                                              Vec(Layout({{"b", 2}}), {1, 2})};
  EXPECT_THROW(Mean(mixed), ConfigError);
}

TEST(SgdStep, HandValueAndZeroRate) {
  const auto l = Layout({{"w", 2}});
  const auto w = Vec(l, {1.0, -2.0});
  const auto g = Vec(l, {0.5, 4.0});
  EXPECT_EQ(SgdStep(w, g, 0.1), Vec(l, {1.0 - 0.1 * 0.5, -2.0 - 0.1 * 4.0}));
  EXPECT_EQ(SgdStep(w, g, 0.0), w);
}

TEST(SgdStep, NonFiniteResultIsANumericalError) {
  const auto l = Layout({{"w", 1}});
  EXPECT_THROW(SgdStep(Vec(l, {1.0}), Vec(l, {std::numeric_limits<double>::infinity()}), 0.1),
               NumericalError);
  EXPECT_THROW(SgdStep(Vec(l, {1.0}), Vec(Layout({{"v", 1}}), {1.0}), 0.1), ConfigError);
}

TEST(MaxAbsDiff, HandValue) {
  const auto l = Layout({{"w", 3}});
  EXPECT_DOUBLE_EQ(MaxAbsDiff(Vec(l, {1, 2, 3}), Vec(l, {1, -2, 3.5})), 4.0);
  EXPECT_FALSE(Vec(l, {1, 2, std::nan("")}).AllFinite());
}

}  // namespace
}  // namespace fedrobust::model
