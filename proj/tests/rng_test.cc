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


#include "fedrobust/common/rng.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "fedrobust/common/error.h"

namespace fedrobust {
namespace {

TEST(SplitMix64, MatchesReferenceSequence) {
  // First two outputs of the reference generator started from state 0.
  EXPECT_EQ(SplitMix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(SplitMix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

TEST(DeriveSeed, DependsOnEveryInput) {
  const uint64_t a = DeriveSeed(1, Stream::kPartition);
  EXPECT_EQ(a, DeriveSeed(1, Stream::kPartition));
  EXPECT_NE(a, DeriveSeed(2, Stream::kPartition));
  EXPECT_NE(a, DeriveSeed(1, Stream::kInit));
  EXPECT_NE(DeriveSeed(1, Stream::kClientShuffle, {1, 2}),
            DeriveSeed(1, Stream::kClientShuffle, {2, 1}));
  EXPECT_NE(DeriveSeed(1, Stream::kClientShuffle, {0}),
            DeriveSeed(1, Stream::kClientShuffle));
}

TEST(DeriveSeed, NoCollisionsOverSmallGrid) {
  std::set<uint64_t> seen;
  for (uint64_t base = 0; base < 8; ++base)
    for (uint64_t k = 0; k < 8; ++k)
      for (uint64_t t = 0; t < 8; ++t)
        seen.insert(DeriveSeed(base, Stream::kClientShuffle, {k, t}));
  EXPECT_EQ(seen.size(), 512u);
}

TEST(UniformUnit, RangeAndMean) {
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Standard error of the mean of U(0,1) is sqrt(1/12 / n).
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(UniformIndex, CoversRangeUniformly) {
  Rng rng(11);
  const int n = 7, draws = 70000;
  std::vector<int> counts(n, 0);
  for (int i = 0; i < draws; ++i) {
    const uint64_t k = UniformIndex(rng, n);
    ASSERT_LT(k, static_cast<uint64_t>(n));
    ++counts[k];
  }
  // Pearson chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
  double chi2 = 0.0;
  const double expected = static_cast<double>(draws) / n;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);
}

TEST(UniformIndex, RejectsZeroBound) {
  Rng rng(1);
  EXPECT_THROW(UniformIndex(rng, 0), ConfigError);
  EXPECT_EQ(UniformIndex(rng, 1), 0u);
}

TEST(StandardNormal, Moments) {
  Rng rng(3);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = StandardNormal(rng);
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
  // Var of x^2 for a standard normal is 2.
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

class GammaMoments : public ::testing::TestWithParam<double> {};

TEST_P(GammaMoments, MeanAndVarianceEqualShape) {
  const double shape = GetParam();
  Rng rng(static_cast<uint64_t>(shape * 1000));
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = Gamma(rng, shape);
    ASSERT_GT(x, 0.0);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, shape, 5.0 * std::sqrt(shape / n));
  EXPECT_NEAR(var / shape, 1.0, 0.05);
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaMoments, ::testing::Values(0.3, 1.0, 2.5, 7.0));

TEST(Shuffle, IsAPermutationAndReplays) {
  std::vector<int> a(50);
  std::iota(a.begin(), a.end(), 0);
  auto b = a;
  Rng r1(5), r2(5);
  Shuffle(a.begin(), a.end(), r1);
  Shuffle(b.begin(), b.end(), r2);
  EXPECT_EQ(a, b);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(50);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(sorted, expected);
  EXPECT_NE(a, expected);
}

TEST(Shuffle, EveryPositionEquallyLikely) {
  // Each element of a 4-element sequence should land in each slot 1/4 of the time.
  const int trials = 40000;
  int counts[4][4] = {};
  Rng rng(9);
  for (int t = 0; t < trials; ++t) {
    int v[4] = {0, 1, 2, 3};
    Shuffle(v, v + 4, rng);
    for (int pos = 0; pos < 4; ++pos) ++counts[v[pos]][pos];
  }
  const double p = 0.25, sd = std::sqrt(trials * p * (1 - p));
  for (auto& row : counts)
    for (int c : row) EXPECT_NEAR(c, trials * p, 4.5 * sd);
}

}  // namespace
}  // namespace fedrobust
