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

#ifndef FEDROBUST_AUGMIX_OPS_H_
#define FEDROBUST_AUGMIX_OPS_H_

#include <string>
#include <string_view>
#include <vector>

#include "fedrobust/common/image.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::augmix {

// Augmentation operations. None of them coincides with a test-time corruption
// filter. kIdentity exists for tests only.
enum class OpId {
  kIdentity,
  kRotate,
  kTranslateX,
  kTranslateY,
  kShearX,
  kShearY,
  kPosterize,
  kEqualize,
  kSolarize,
  kAutocontrast,
};

// Largest magnitude of each op; a draw scales these by its level.
inline constexpr double kMaxRotateDegrees = 30.0;
inline constexpr double kMaxTranslateFraction = 1.0 / 3.0;
inline constexpr double kMaxShear = 0.3;
inline constexpr int kMaxPosterizeDrop = 4;  // posterize keeps max(1, 4 - floor(4 level)) bits
inline constexpr double kMaxSolarize = 1.0;

std::string_view OpName(OpId op);
OpId ParseOp(std::string_view name);
// The nine ops of the standard registry.
const std::vector<OpId>& DefaultOps();

// One concrete application of an op: level in [0, 1] scales the op's maximum
// magnitude; `negate` flips the direction of geometric ops.
struct OpDraw {
  OpId op = OpId::kIdentity;
  double level = 0.0;
  bool negate = false;

  bool operator==(const OpDraw&) const = default;
};

// level ~ U(0.1, severity) / 10, sign ~ fair coin.
OpDraw SampleOpDraw(OpId op, int severity, Rng& rng);

// Geometric ops resample with nearest neighbour and reflect padding; all ops
// keep the shape and map [0,1] images into [0,1].
Image ApplyOp(const Image& image, const OpDraw& draw);

// Throws ConfigError if any op name also names a corruption filter.
void CheckDisjointFromCorruptions(const std::vector<OpId>& ops);

}  // namespace fedrobust::augmix

#endif  // FEDROBUST_AUGMIX_OPS_H_
