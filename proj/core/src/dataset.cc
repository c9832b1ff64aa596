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

#include "fedrobust/data/dataset.h"

#include "fedrobust/common/error.h"

namespace fedrobust::data {

ImageBatch ImageSet::Batch(std::span<const size_t> indices) const {
  ImageBatch batch;
  batch.shape = shape;
  batch.pixels.reserve(indices.size() * shape.size());
  for (size_t i : indices) batch.Append(image(i));
  return batch;
}

ImageBatch ImageSet::All() const {
  ImageBatch batch;
  batch.shape = shape;
  batch.pixels = pixels;
  return batch;
}

ImageSet ImageSet::Subset(std::span<const size_t> indices) const {
  ImageSet out;
  out.name = name;
  out.shape = shape;
  out.pixels.reserve(indices.size() * shape.size());
  for (size_t i : indices) out.Append(image(i));
  return out;
}

LabeledDataset LabeledDataset::Subset(std::span<const size_t> indices) const {
  LabeledDataset out;
  out.images = images.Subset(indices);
  out.num_classes = num_classes;
  out.labels.reserve(indices.size());
  for (size_t i : indices) out.labels.push_back(labels[i]);
  return out;
}

void LabeledDataset::Validate() const {
  if (images.shape.size() == 0)
    throw ConfigError("dataset '" + name() + "': empty image shape");
  if (images.pixels.size() % images.shape.size() != 0)
    throw ConfigError("dataset '" + name() + "': ragged pixel buffer");
  if (images.size() != labels.size())
    throw ConfigError("dataset '" + name() + "': " +
                      std::to_string(images.size()) + " images but " +
                      std::to_string(labels.size()) + " labels");
  if (num_classes <= 0)
    throw ConfigError("dataset '" + name() + "': class count must be positive");
  for (uint16_t y : labels) {
    if (y >= num_classes)
      throw ConfigError("dataset '" + name() + "': label " + std::to_string(y) +
                        " out of range");
  }
  if (!InUnitRange(images.pixels))
    throw ConfigError("dataset '" + name() + "': pixel outside [0,1]");
}

UnlabeledDataset UnlabeledDataset::Subset(
    std::span<const size_t> indices) const {
  return UnlabeledDataset{images.Subset(indices)};
}

void UnlabeledDataset::Validate() const {
  if (images.shape.size() == 0 || images.size() == 0)
    throw ConfigError("unlabeled dataset '" + name() + "' is empty");
  if (images.pixels.size() % images.shape.size() != 0)
    throw ConfigError("dataset '" + name() + "': ragged pixel buffer");
  if (!InUnitRange(images.pixels))
    throw ConfigError("dataset '" + name() + "': pixel outside [0,1]");
}

UnlabeledDataset DropLabels(const LabeledDataset& ds) {
  return UnlabeledDataset{ds.images};
}

}  // namespace fedrobust::data
