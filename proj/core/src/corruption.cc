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

#include "fedrobust/data/corruption.h"

#include <algorithm>
#include <cmath>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::data {
namespace {

struct FilterEntry {
  Filter filter;
  std::string_view name;
};

constexpr FilterEntry kFilterTable[] = {
    {Filter::kIdentity, "identity"},
    {Filter::kGaussianNoise, "gaussian_noise"},
    {Filter::kImpulseNoise, "impulse_noise"},
    {Filter::kGaussianBlur, "gaussian_blur"},
    {Filter::kContrast, "contrast"},
    {Filter::kBrightness, "brightness"},
    {Filter::kPixelate, "pixelate"},
};

void GaussianNoise(Image& img, double sigma, Rng& rng) {
  for (float& p : img.pixels) p += static_cast<float>(sigma * StandardNormal(rng));
}

void ImpulseNoise(Image& img, double amount, Rng& rng) {
  for (float& p : img.pixels) {
    if (UniformUnit(rng) < amount) p = UniformUnit(rng) < 0.5 ? 0.0f : 1.0f;
  }
}

void GaussianBlur(Image& img, double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    total += kernel[i + radius];
  }
  for (double& k : kernel) k /= total;

  const auto [h, w, c] = img.shape;
  Image tmp(img.shape);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < c; ++ch) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * img.at(y, ReflectIndex(x + i, w), ch);
        tmp.at(y, x, ch) = static_cast<float>(acc);
      }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < c; ++ch) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i)
          acc += kernel[i + radius] * tmp.at(ReflectIndex(y + i, h), x, ch);
        img.at(y, x, ch) = static_cast<float>(acc);
      }
}

void Contrast(Image& img, double reduction) {
  const auto [h, w, c] = img.shape;
  const double keep = 1.0 - reduction;
  for (int ch = 0; ch < c; ++ch) {
    double mean = 0.0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) mean += img.at(y, x, ch);
    mean /= static_cast<double>(h) * w;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        float& p = img.at(y, x, ch);
        p = static_cast<float>(mean + keep * (p - mean));
      }
  }
}

void Brightness(Image& img, double offset) {
  for (float& p : img.pixels) p += static_cast<float>(offset);
}

void Pixelate(Image& img, double reduction) {
  const auto [h, w, c] = img.shape;
  const int small_h = std::max(1, static_cast<int>(std::lround(h * (1.0 - reduction))));
  const int small_w = std::max(1, static_cast<int>(std::lround(w * (1.0 - reduction))));
  // Box downsample to small_h x small_w, then nearest-neighbour upsample.
  Image small(ImageShape{small_h, small_w, c});
  for (int sy = 0; sy < small_h; ++sy) {
    const int y0 = sy * h / small_h, y1 = std::max(y0 + 1, (sy + 1) * h / small_h);
    for (int sx = 0; sx < small_w; ++sx) {
      const int x0 = sx * w / small_w, x1 = std::max(x0 + 1, (sx + 1) * w / small_w);
      for (int ch = 0; ch < c; ++ch) {
        double acc = 0.0;
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x) acc += img.at(y, x, ch);
        small.at(sy, sx, ch) = static_cast<float>(acc / ((y1 - y0) * (x1 - x0)));
      }
    }
  }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int ch = 0; ch < c; ++ch)
        img.at(y, x, ch) = small.at(y * small_h / h, x * small_w / w, ch);
}

}  // namespace

std::string CorruptionSpec::ToString() const {
  return std::string(FilterName(filter)) + "_" + std::to_string(severity);
}

std::string_view FilterName(Filter f) {
  for (const auto& e : kFilterTable)
    if (e.filter == f) return e.name;
  throw ConfigError("unregistered corruption filter");
}

Filter ParseFilter(std::string_view name) {
  for (const auto& e : kFilterTable)
    if (e.name == name) return e.filter;
  throw ConfigError("unknown corruption filter '" + std::string(name) + "'");
}

const std::vector<Filter>& DefaultFilters() {
  static const std::vector<Filter> kDefault = {
      Filter::kGaussianNoise, Filter::kImpulseNoise, Filter::kGaussianBlur,
      Filter::kContrast,      Filter::kBrightness,   Filter::kPixelate};
  return kDefault;
}

std::vector<std::string> FilterNames() {
  std::vector<std::string> out;
  for (const auto& e : kFilterTable) out.emplace_back(e.name);
  return out;
}

double SeverityParameter(Filter f, int severity) {
  if (severity < kMinSeverity || severity > kMaxSeverity)
    throw ConfigError("severity " + std::to_string(severity) +
                      " outside [1, 5]");
  const size_t i = static_cast<size_t>(severity - 1);
  switch (f) {
    case Filter::kIdentity: return 0.0;
    case Filter::kGaussianNoise: return kGaussianNoiseSigma[i];
    case Filter::kImpulseNoise: return kImpulseNoiseAmount[i];
    case Filter::kGaussianBlur: return kGaussianBlurSigma[i];
    case Filter::kContrast: return kContrastReduction[i];
    case Filter::kBrightness: return kBrightnessOffset[i];
    case Filter::kPixelate: return kPixelateReduction[i];
  }
  throw ConfigError("unregistered corruption filter");
}

void ValidateSpec(const CorruptionSpec& spec) {
  FilterName(spec.filter);
  SeverityParameter(spec.filter, spec.severity);
}

Image Corrupt(const Image& image, const CorruptionSpec& spec, uint64_t seed) {
  const double param = SeverityParameter(spec.filter, spec.severity);
  Image out = image;
  Rng rng(seed);
  switch (spec.filter) {
    case Filter::kIdentity: break;
    case Filter::kGaussianNoise: GaussianNoise(out, param, rng); break;
    case Filter::kImpulseNoise: ImpulseNoise(out, param, rng); break;
    case Filter::kGaussianBlur: GaussianBlur(out, param); break;
    case Filter::kContrast: Contrast(out, param); break;
    case Filter::kBrightness: Brightness(out, param); break;
    case Filter::kPixelate: Pixelate(out, param); break;
  }
  ClipUnit(out.pixels);
  return out;
}

std::vector<CorruptionSpec> CrossSpecs(const std::vector<Filter>& filters,
                                       const std::vector<int>& severities) {
  std::vector<CorruptionSpec> specs;
  for (Filter f : filters)
    for (int s : severities) {
      CorruptionSpec spec{f, s};
      ValidateSpec(spec);
      specs.push_back(spec);
    }
  return specs;
}

LabeledDataset CorruptDataset(const LabeledDataset& test,
                              const CorruptionSpec& spec, uint64_t seed) {
  ValidateSpec(spec);
  LabeledDataset out = test;
  out.images.name = test.name() + "/" + spec.ToString();
  for (size_t i = 0; i < test.size(); ++i) {
    const uint64_t s = DeriveSeed(
        seed, Stream::kCorruption,
        {static_cast<uint64_t>(spec.filter),
         static_cast<uint64_t>(spec.severity), static_cast<uint64_t>(i)});
    Image img = Corrupt(test.images.ImageAt(i), spec, s);
    std::copy(img.pixels.begin(), img.pixels.end(),
              out.images.mutable_image(i).begin());
  }
  return out;
}

CorruptedTestSuite BuildCorruptionSuite(
    const LabeledDataset& test, const std::vector<CorruptionSpec>& specs,
    uint64_t seed) {
  if (specs.empty()) throw ConfigError("corruption suite needs at least one spec");
  CorruptedTestSuite suite;
  suite.base = test;
  suite.entries.reserve(specs.size());
  for (const auto& spec : specs)
    suite.entries.push_back({spec, CorruptDataset(test, spec, seed)});
  return suite;
}

}  // namespace fedrobust::data
