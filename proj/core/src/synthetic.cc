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

#include "fedrobust/data/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::data {
namespace {

using Glyph = std::array<const char*, 7>;

constexpr Glyph kDigitGlyphs[10] = {
    {"01110", "10001", "10011", "10101", "11001", "10001", "01110"},
    {"00100", "01100", "00100", "00100", "00100", "00100", "01110"},
    {"01110", "10001", "00001", "00010", "00100", "01000", "11111"},
    {"11111", "00010", "00100", "00010", "00001", "10001", "01110"},
    {"00010", "00110", "01010", "10010", "11111", "00010", "00010"},
    {"11111", "10000", "11110", "00001", "00001", "10001", "01110"},
    {"00110", "01000", "10000", "11110", "10001", "10001", "01110"},
    {"11111", "00001", "00010", "00100", "01000", "01000", "01000"},
    {"01110", "10001", "10001", "01110", "10001", "10001", "01110"},
    {"01110", "10001", "10001", "01111", "00001", "00010", "01100"},
};

constexpr Glyph kLetterGlyphs[26] = {
    {"01110", "10001", "10001", "11111", "10001", "10001", "10001"},
    {"11110", "10001", "10001", "11110", "10001", "10001", "11110"},
    {"01110", "10001", "10000", "10000", "10000", "10001", "01110"},
    {"11100", "10010", "10001", "10001", "10001", "10010", "11100"},
    {"11111", "10000", "10000", "11110", "10000", "10000", "11111"},
    {"11111", "10000", "10000", "11110", "10000", "10000", "10000"},
    {"01110", "10001", "10000", "10111", "10001", "10001", "01111"},
    {"10001", "10001", "10001", "11111", "10001", "10001", "10001"},
    {"01110", "00100", "00100", "00100", "00100", "00100", "01110"},
    {"00111", "00010", "00010", "00010", "00010", "10010", "01100"},
    {"10001", "10010", "10100", "11000", "10100", "10010", "10001"},
    {"10000", "10000", "10000", "10000", "10000", "10000", "11111"},
    {"10001", "11011", "10101", "10101", "10001", "10001", "10001"},
    {"10001", "10001", "11001", "10101", "10011", "10001", "10001"},
    {"01110", "10001", "10001", "10001", "10001", "10001", "01110"},
    {"11110", "10001", "10001", "11110", "10000", "10000", "10000"},
    {"01110", "10001", "10001", "10001", "10101", "10010", "01101"},
    {"11110", "10001", "10001", "11110", "10100", "10010", "10001"},
    {"01111", "10000", "10000", "01110", "00001", "00001", "11110"},
    {"11111", "00100", "00100", "00100", "00100", "00100", "00100"},
    {"10001", "10001", "10001", "10001", "10001", "10001", "01110"},
    {"10001", "10001", "10001", "10001", "10001", "01010", "00100"},
    {"10001", "10001", "10001", "10101", "10101", "10101", "01010"},
    {"10001", "10001", "01010", "00100", "01010", "10001", "10001"},
    {"10001", "10001", "10001", "01010", "00100", "00100", "00100"},
    {"11111", "00001", "00010", "00100", "01000", "10000", "11111"},
};

constexpr int kShapeClasses = 8;
constexpr int kSupersample = 3;

// Coverage test in normalized glyph coordinates (u, v) in [-1, 1]^2.
using InsideFn = std::function<bool(double u, double v)>;

InsideFn GlyphInside(const Glyph& g) {
  return [&g](double u, double v) {
    const int col = static_cast<int>(std::floor((u + 1.0) * 0.5 * 5.0));
    const int row = static_cast<int>(std::floor((v + 1.0) * 0.5 * 7.0));
    if (col < 0 || col >= 5 || row < 0 || row >= 7) return false;
    return g[row][col] == '1';
  };
}

InsideFn ShapeInside(int cls) {
  switch (cls) {
    case 0: return [](double u, double v) { return u * u + v * v <= 0.8; };
    case 1:
      return [](double u, double v) {
        const double r2 = u * u + v * v;
        return r2 <= 0.9 && r2 >= 0.4;
      };
    case 2:
      return [](double u, double v) {
        const double m = std::max(std::abs(u), std::abs(v));
        return m <= 0.85 && m >= 0.55;
      };
    case 3:
      return [](double u, double v) { return std::abs(u) <= 0.9 && std::abs(v) <= 0.45; };
    case 4:
      return [](double u, double v) { return v <= 0.8 && v >= -0.8 + 1.8 * std::abs(u); };
    case 5:
      return [](double u, double v) {
        return (std::abs(u) <= 0.22 || std::abs(v) <= 0.22) &&
               std::abs(u) <= 0.9 && std::abs(v) <= 0.9;
      };
    case 6:
      return [](double u, double v) {
        return (std::abs(u - v) <= 0.3 || std::abs(u + v) <= 0.3) &&
               std::abs(u) <= 0.85 && std::abs(v) <= 0.85;
      };
    default:
      return [](double u, double v) {
        return std::abs(u) <= 0.9 &&
               (std::abs(v - 0.55) <= 0.18 || std::abs(v + 0.55) <= 0.18);
      };
  }
}

// Draws one jittered instance of `inside` onto a size x size canvas.
void Render(const InsideFn& inside, double aspect, int size, Rng& rng,
            std::span<float> out) {
  const double half = 0.5 * size;
  const double scale = half * (0.62 + 0.18 * UniformUnit(rng));
  const double sx = scale * aspect, sy = scale;
  const double angle = (UniformUnit(rng) - 0.5) * 2.0 * 12.0 * std::numbers::pi / 180.0;
  const double shear = (UniformUnit(rng) - 0.5) * 0.3;
  const double cx = half + (UniformUnit(rng) - 0.5) * 3.0;
  const double cy = half + (UniformUnit(rng) - 0.5) * 3.0;
  const double fg = 0.65 + 0.35 * UniformUnit(rng);
  const double bg = 0.25 * UniformUnit(rng);
  const double ca = std::cos(angle), sa = std::sin(angle);

  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      int hits = 0;
      for (int j = 0; j < kSupersample; ++j)
        for (int i = 0; i < kSupersample; ++i) {
          const double px = x + (i + 0.5) / kSupersample - cx;
          const double py = y + (j + 0.5) / kSupersample - cy;
          // Inverse of rotate(shear(scale(u, v))).
          const double rx = ca * px + sa * py;
          const double ry = -sa * px + ca * py;
          const double v = ry / sy;
          const double u = (rx - shear * ry) / sx;
          if (inside(u, v)) ++hits;
        }
      const double cover = static_cast<double>(hits) / (kSupersample * kSupersample);
      double p = bg + (fg - bg) * cover + 0.02 * StandardNormal(rng);
      out[static_cast<size_t>(y) * size + x] =
          static_cast<float>(std::clamp(p, 0.0, 1.0));
    }
  }
}

}  // namespace

SyntheticKind ParseSyntheticKind(std::string_view name) {
  if (name == "digits") return SyntheticKind::kDigits;
  if (name == "letters") return SyntheticKind::kLetters;
  if (name == "shapes") return SyntheticKind::kShapes;
  throw ConfigError("unknown synthetic dataset kind '" + std::string(name) + "'");
}

int SyntheticClassCount(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kDigits: return 10;
    case SyntheticKind::kLetters: return 26;
    case SyntheticKind::kShapes: return kShapeClasses;
  }
  return 0;
}

LabeledDataset GenerateSynthetic(SyntheticKind kind, size_t count, int size,
                                 uint64_t seed) {
  if (size < 8) throw ConfigError("synthetic images must be at least 8x8");
  LabeledDataset ds;
  const int classes = SyntheticClassCount(kind);
  ds.num_classes = classes;
  ds.images.shape = ImageShape{size, size, 1};
  ds.images.name = kind == SyntheticKind::kDigits    ? "digits"
                   : kind == SyntheticKind::kLetters ? "letters"
                                                     : "shapes";
  ds.images.pixels.resize(count * ds.images.shape.size());
  ds.labels.resize(count);
  for (size_t i = 0; i < count; ++i) {
    const int cls = static_cast<int>(i % classes);
    Rng rng = MakeRng(seed, Stream::kSynthetic, {static_cast<uint64_t>(kind), i});
    InsideFn inside;
    double aspect = 5.0 / 7.0;
    switch (kind) {
      case SyntheticKind::kDigits: inside = GlyphInside(kDigitGlyphs[cls]); break;
      case SyntheticKind::kLetters: inside = GlyphInside(kLetterGlyphs[cls]); break;
      case SyntheticKind::kShapes:
        inside = ShapeInside(cls);
        aspect = 1.0;
        break;
    }
    Render(inside, aspect, size, rng, ds.images.mutable_image(i));
    ds.labels[i] = static_cast<uint16_t>(cls);
  }
  return ds;
}

}  // namespace fedrobust::data
