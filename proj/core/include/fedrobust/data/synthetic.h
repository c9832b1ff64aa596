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

#ifndef FEDROBUST_DATA_SYNTHETIC_H_
#define FEDROBUST_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string_view>

#include "fedrobust/data/dataset.h"

namespace fedrobust::data {

// Procedural small-image datasets used in place of downloaded benchmarks.
//   kDigits   10 classes, jittered 5x7 bitmap digits
//   kLetters  26 classes, same renderer with the letters A-Z
//   kShapes   8 classes of geometric primitives
enum class SyntheticKind { kDigits, kLetters, kShapes };

SyntheticKind ParseSyntheticKind(std::string_view name);
int SyntheticClassCount(SyntheticKind kind);

// Renders `count` single-channel size x size images, labels cycling through
// the classes. Deterministic per seed.
LabeledDataset GenerateSynthetic(SyntheticKind kind, size_t count, int size,
                                 uint64_t seed);

}  // namespace fedrobust::data

#endif  // FEDROBUST_DATA_SYNTHETIC_H_
