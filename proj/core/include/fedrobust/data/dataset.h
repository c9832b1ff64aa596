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

#ifndef FEDROBUST_DATA_DATASET_H_
#define FEDROBUST_DATA_DATASET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fedrobust/common/image.h"

namespace fedrobust::data {

// Flat storage for N images of one shape.
struct ImageSet {
  std::string name;
  ImageShape shape;
  std::vector<float> pixels;  // N * shape.size(), HWC per image

  size_t size() const {
    return shape.size() == 0 ? 0 : pixels.size() / shape.size();
  }
  std::span<const float> image(size_t i) const {
    return {pixels.data() + i * shape.size(), shape.size()};
  }
  std::span<float> mutable_image(size_t i) {
    return {pixels.data() + i * shape.size(), shape.size()};
  }
  Image ImageAt(size_t i) const { return Image(shape, image(i)); }
  ImageBatch Batch(std::span<const size_t> indices) const;
  ImageBatch All() const;
  ImageSet Subset(std::span<const size_t> indices) const;
  void Append(std::span<const float> image) {
    pixels.insert(pixels.end(), image.begin(), image.end());
  }
};

// Private client data: images with integer class labels.
struct LabeledDataset {
  ImageSet images;
  std::vector<uint16_t> labels;
  int num_classes = 0;

  size_t size() const { return labels.size(); }
  const std::string& name() const { return images.name; }
  const ImageShape& shape() const { return images.shape; }
  LabeledDataset Subset(std::span<const size_t> indices) const;
  // Throws ConfigError when lengths, labels or pixel ranges are invalid.
  void Validate() const;
};

// Server proxy data. Labels, if the source had any, are dropped.
struct UnlabeledDataset {
  ImageSet images;

  size_t size() const { return images.size(); }
  const std::string& name() const { return images.name; }
  const ImageShape& shape() const { return images.shape; }
  UnlabeledDataset Subset(std::span<const size_t> indices) const;
  void Validate() const;
};

UnlabeledDataset DropLabels(const LabeledDataset& ds);

}  // namespace fedrobust::data

#endif  // FEDROBUST_DATA_DATASET_H_
