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

#ifndef FEDROBUST_MODEL_CHECKPOINT_H_
#define FEDROBUST_MODEL_CHECKPOINT_H_

#include <filesystem>

#include "fedrobust/model/classifier.h"

namespace fedrobust::model {

// A checkpoint directory holds
//   architecture.txt  Architecture::Describe()
//   layout.txt        one "name dim..." line per segment
//   weights.f64       flat little-endian float64 values
// Loading reproduces the weights bit-exactly.
void SaveCheckpoint(const std::filesystem::path& dir, const Classifier& clf);
Classifier LoadCheckpoint(const std::filesystem::path& dir);

}  // namespace fedrobust::model

#endif  // FEDROBUST_MODEL_CHECKPOINT_H_
