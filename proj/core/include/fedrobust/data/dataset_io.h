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

#ifndef FEDROBUST_DATA_DATASET_IO_H_
#define FEDROBUST_DATA_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fedrobust/data/corruption.h"
#include "fedrobust/data/dataset.h"

namespace fedrobust::data {

// On-disk dataset directory:
//   images.f32  N*H*W*C float32, little-endian, row-major (NHWC)
//   labels.u16  N uint16, little-endian (optional)
//   meta.txt    "name <id>", "shape <N> <H> <W> <C>", "classes <C>"
inline constexpr char kImagesFile[] = "images.f32";
inline constexpr char kLabelsFile[] = "labels.u16";
inline constexpr char kMetaFile[] = "meta.txt";

void WriteDataset(const std::filesystem::path& dir, const LabeledDataset& ds);
void WriteDataset(const std::filesystem::path& dir, const UnlabeledDataset& ds);

// Throws IoError when labels are missing or files are malformed.
LabeledDataset ReadLabeledDataset(const std::filesystem::path& dir);
// Ignores a label file if present.
UnlabeledDataset ReadUnlabeledDataset(const std::filesystem::path& dir);

// 64-bit FNV-1a over the image and label bytes.
uint64_t ContentHash(const LabeledDataset& ds);

// Directory holding the cached suite for `base`: <root>/<name>.corrupt/
std::filesystem::path SuiteDirectory(const std::filesystem::path& root,
                                     const std::string& base_name);

struct CacheStats {
  int written = 0;
  int reused = 0;
};

// Materializes <root>/<name>.corrupt/<filter>_<severity>/ for every spec.
// An entry whose stamp (base hash, seed) matches is left untouched.
CacheStats WriteCorruptionSuite(const std::filesystem::path& root,
                                const LabeledDataset& base,
                                const std::vector<CorruptionSpec>& specs,
                                uint64_t seed);

CorruptedTestSuite ReadCorruptionSuite(const std::filesystem::path& root,
                                       const LabeledDataset& base,
                                       const std::vector<CorruptionSpec>& specs);

}  // namespace fedrobust::data

#endif  // FEDROBUST_DATA_DATASET_IO_H_
