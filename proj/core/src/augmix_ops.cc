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

#include "fedrobust/augmix/ops.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fedrobust/common/error.h"
#include "fedrobust/data/corruption.h"

namespace fedrobust::augmix {
namespace {

struct OpEntry {
  OpId op;
  std::string_view name;
};

constexpr OpEntry kOpTable[] = {
    {OpId::kIdentity, "identity"},     {OpId::kRotate, "rotate"},
    {OpId::kTranslateX, "translate_x"}, {OpId::kTranslateY, "translate_y"},
    {OpId::kShearX, "shear_x"},        {OpId::kShearY, "shear_y"},
    {OpId::kPosterize, "posterize"},   {OpId::kEqualize, "equalize"},
    {OpId::kSolarize, "solarize"},     {OpId::kAutocontrast, "autocontrast"},
};

int To8Bit(float v) {
  return std::clamp(static_cast<int>(std::floor(v * 255.0f + 0.5f)), 0, 255);
}

// Output pixel (x, y) samples input at affine(x + 0.5, y + 0.5) where the map
// is given as [a b c; d e f] on pixel-centre coordinates.
Image AffineSample(const Image& img, double a, double b, double c, double d,
                   double e, double f) {
  const auto [h, w, ch] = img.shape;
  Image out(img.shape);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      const double sx = a * px + b * py + c;
      const double sy = d * px + e * py + f;
      const int ix = ReflectIndex(static_cast<int>(std::floor(sx)), w);
      const int iy = ReflectIndex(static_cast<int>(std::floor(sy)), h);
      for (int k = 0; k < ch; ++k) out.at(y, x, k) = img.at(iy, ix, k);
    }
  return out;
}

Image Rotate(const Image& img, double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(t), sn = std::sin(t);
  const double cx = 0.5 * img.shape.width, cy = 0.5 * img.shape.height;
  // Inverse rotation about the centre.
  return AffineSample(img, cs, sn, cx - cs * cx - sn * cy, -sn, cs,
                      cy + sn * cx - cs * cy);
}

Image Posterize(const Image& img, int bits) {
  const int mask = (0xff << (8 - bits)) & 0xff;
  Image out = img;
  for (float& p : out.pixels) p = static_cast<float>(To8Bit(p) & mask) / 255.0f;
  return out;
}

Image Solarize(const Image& img, double threshold) {
  Image out = img;
  for (float& p : out.pixels)
    if (p >= threshold) p = 1.0f - p;
  return out;
}

// PIL ImageOps.equalize on an 8-bit quantization of each channel.
Image Equalize(const Image& img) {
  const auto [h, w, ch] = img.shape;
  Image out = img;
  for (int k = 0; k < ch; ++k) {
    std::array<int, 256> hist{};
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) ++hist[To8Bit(img.at(y, x, k))];
    int last = 255;
    while (last > 0 && hist[last] == 0) --last;
    const int total = h * w;
    const int step = (total - hist[last]) / 255;
    if (step == 0) continue;
    std::array<int, 256> lut{};
    int n = step / 2;
    for (int i = 0; i < 256; ++i) {
      lut[i] = std::min(255, n / step);
      n += hist[i];
    }
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        out.at(y, x, k) = static_cast<float>(lut[To8Bit(img.at(y, x, k))]) / 255.0f;
  }
  return out;
}

Image Autocontrast(const Image& img) {
  const auto [h, w, ch] = img.shape;
  Image out = img;
  for (int k = 0; k < ch; ++k) {
    float lo = 1.0f, hi = 0.0f;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        lo = std::min(lo, img.at(y, x, k));
        hi = std::max(hi, img.at(y, x, k));
      }
    if (hi <= lo) continue;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        out.at(y, x, k) = (img.at(y, x, k) - lo) / (hi - lo);
  }
  return out;
}

}  // namespace

std::string_view OpName(OpId op) {
  for (const auto& e : kOpTable)
    if (e.op == op) return e.name;
  throw ConfigError("unregistered augmentation op");
}

OpId ParseOp(std::string_view name) {
  for (const auto& e : kOpTable)
    if (e.name == name) return e.op;
  throw ConfigError("unknown augmentation op '" + std::string(name) + "'");
}

const std::vector<OpId>& DefaultOps() {
  static const std::vector<OpId> kOps = {
      OpId::kRotate,    OpId::kTranslateX, OpId::kTranslateY,
      OpId::kShearX,    OpId::kShearY,     OpId::kPosterize,
      OpId::kEqualize,  OpId::kSolarize,   OpId::kAutocontrast};
  return kOps;
}

OpDraw SampleOpDraw(OpId op, int severity, Rng& rng) {
  OpDraw d;
  d.op = op;
  const double s = static_cast<double>(severity);
  d.level = (0.1 + (s - 0.1) * UniformUnit(rng)) / 10.0;
  d.negate = UniformUnit(rng) < 0.5;
  return d;
}

Image ApplyOp(const Image& image, const OpDraw& draw) {
  const double sign = draw.negate ? -1.0 : 1.0;
  const double lv = std::clamp(draw.level, 0.0, 1.0);
  Image out;
  switch (draw.op) {
    case OpId::kIdentity:
      return image;
    case OpId::kRotate:
      out = Rotate(image, sign * lv * kMaxRotateDegrees);
      break;
    case OpId::kTranslateX:
      out = AffineSample(image, 1, 0, sign * lv * kMaxTranslateFraction * image.shape.width,
                         0, 1, 0);
      break;
    case OpId::kTranslateY:
      out = AffineSample(image, 1, 0, 0, 0, 1,
                         sign * lv * kMaxTranslateFraction * image.shape.height);
      break;
    case OpId::kShearX:
      out = AffineSample(image, 1, sign * lv * kMaxShear, 0, 0, 1, 0);
      break;
    case OpId::kShearY:
      out = AffineSample(image, 1, 0, 0, sign * lv * kMaxShear, 1, 0);
      break;
    case OpId::kPosterize:
      out = Posterize(image, std::max(1, 4 - static_cast<int>(lv * kMaxPosterizeDrop)));
      break;
    case OpId::kEqualize:
      out = Equalize(image);
      break;
    case OpId::kSolarize:
      out = Solarize(image, 1.0 - lv * kMaxSolarize);
      break;
    case OpId::kAutocontrast:
      out = Autocontrast(image);
      break;
  }
  ClipUnit(out.pixels);
  return out;
}

void CheckDisjointFromCorruptions(const std::vector<OpId>& ops) {
  const auto filters = data::FilterNames();
  for (OpId op : ops) {
    if (op == OpId::kIdentity) continue;
    const auto name = OpName(op);
    if (std::find(filters.begin(), filters.end(), name) != filters.end())
      throw ConfigError("augmentation op '" + std::string(name) +
                        "' duplicates a test-time corruption");
  }
}

}  // namespace fedrobust::augmix
