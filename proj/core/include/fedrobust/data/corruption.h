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

#ifndef FEDROBUST_DATA_CORRUPTION_H_
#define FEDROBUST_DATA_CORRUPTION_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fedrobust/common/image.h"
#include "fedrobust/data/dataset.h"

namespace fedrobust::data {

// Test-time corruption filters. kIdentity is reserved for tests and never
// appears in the default suite.
enum class Filter {
  kIdentity,
  kGaussianNoise,
  kImpulseNoise,
  kGaussianBlur,
  kContrast,
  kBrightness,
  kPixelate,
};

inline constexpr int kMinSeverity = 1;
inline constexpr int kMaxSeverity = 5;

// Severity parameter tables, index s-1. Every row is strictly increasing so
// that a larger severity always means a stronger corruption:
//   gaussian_noise  additive noise standard deviation
//   impulse_noise   fraction of pixels replaced by 0 or 1
//   gaussian_blur   blur kernel standard deviation in pixels
//   contrast        contrast reduction r; x -> mean + (1 - r)(x - mean)
//   brightness      additive offset
//   pixelate        resolution reduction r; blocks of side 1 / (1 - r)
inline constexpr std::array<double, 5> kGaussianNoiseSigma = {0.08, 0.12, 0.18, 0.26, 0.38};
inline constexpr std::array<double, 5> kImpulseNoiseAmount = {0.03, 0.06, 0.09, 0.14, 0.20};
inline constexpr std::array<double, 5> kGaussianBlurSigma = {0.5, 0.75, 1.0, 1.25, 1.5};
inline constexpr std::array<double, 5> kContrastReduction = {0.4, 0.6, 0.7, 0.8, 0.9};
inline constexpr std::array<double, 5> kBrightnessOffset = {0.1, 0.2, 0.3, 0.4, 0.5};
inline constexpr std::array<double, 5> kPixelateReduction = {0.2, 0.3, 0.4, 0.5, 0.6};

struct CorruptionSpec {
  Filter filter = Filter::kIdentity;
  int severity = 1;

  bool operator==(const CorruptionSpec&) const = default;
  std::string ToString() const;  // e.g. "gaussian_noise_3"
};

std::string_view FilterName(Filter f);
// Throws ConfigError for an unknown name.
Filter ParseFilter(std::string_view name);
// The six filters of the default suite.
const std::vector<Filter>& DefaultFilters();
// Names of every registered filter, identity included.
std::vector<std::string> FilterNames();

// Looks up the table entry above. Throws ConfigError when severity is outside
// [1, 5]. Identity has parameter 0 at every severity.
double SeverityParameter(Filter f, int severity);

void ValidateSpec(const CorruptionSpec& spec);

// Returns kappa(image, s). Output has the input's shape and lies in [0, 1].
// Noise filters draw from a stream seeded by `seed`.
Image Corrupt(const Image& image, const CorruptionSpec& spec, uint64_t seed);

struct CorruptedSet {
  CorruptionSpec spec;
  LabeledDataset data;
};

struct CorruptedTestSuite {
  LabeledDataset base;
  std::vector<CorruptedSet> entries;
};

// Every combination of `filters` and `severities`.
std::vector<CorruptionSpec> CrossSpecs(const std::vector<Filter>& filters,
                                       const std::vector<int>& severities);

CorruptedTestSuite BuildCorruptionSuite(const LabeledDataset& test,
                                        const std::vector<CorruptionSpec>& specs,
                                        uint64_t seed);

// Corrupts one dataset; image i uses the seed derived from (seed, spec, i).
LabeledDataset CorruptDataset(const LabeledDataset& test,
                              const CorruptionSpec& spec, uint64_t seed);

}  // namespace fedrobust::data

#endif  // FEDROBUST_DATA_CORRUPTION_H_
