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

#ifndef FEDROBUST_COMMON_IMAGE_H_
#define FEDROBUST_COMMON_IMAGE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fedrobust {

// Height x width x channels, pixels stored row-major in HWC order.
struct ImageShape {
  int height = 0;
  int width = 0;
  int channels = 0;

  size_t size() const {
    return static_cast<size_t>(height) * width * channels;
  }
  bool operator==(const ImageShape&) const = default;
  std::string ToString() const;
};

// A single image with pixel values in [0, 1].
struct Image {
  ImageShape shape;
  std::vector<float> pixels;

  Image() = default;
  explicit Image(ImageShape s, float fill = 0.0f)
      : shape(s), pixels(s.size(), fill) {}
  Image(ImageShape s, std::span<const float> data)
      : shape(s), pixels(data.begin(), data.end()) {}

  float& at(int y, int x, int c) {
    return pixels[(static_cast<size_t>(y) * shape.width + x) * shape.channels +
                  c];
  }
  float at(int y, int x, int c) const {
    return pixels[(static_cast<size_t>(y) * shape.width + x) * shape.channels +
                  c];
  }
  bool operator==(const Image&) const = default;
};

// Contiguous batch of same-shaped images.
struct ImageBatch {
  ImageShape shape;
  std::vector<float> pixels;

  size_t size() const { return shape.size() == 0 ? 0 : pixels.size() / shape.size(); }
  std::span<const float> image(size_t i) const {
    return {pixels.data() + i * shape.size(), shape.size()};
  }
  void Append(std::span<const float> image) {
    pixels.insert(pixels.end(), image.begin(), image.end());
  }
};

// Clamps every pixel to [0, 1].
void ClipUnit(std::span<float> pixels);

// True when every pixel is finite and within [0, 1].
bool InUnitRange(std::span<const float> pixels);

// Mirrors an out-of-range coordinate back into [0, n) without repeating the
// edge sample (numpy "reflect" padding).
int ReflectIndex(int i, int n);

}  // namespace fedrobust

#endif  // FEDROBUST_COMMON_IMAGE_H_
