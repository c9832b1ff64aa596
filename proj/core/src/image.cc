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

#include "fedrobust/common/image.h"

#include <algorithm>
#include <cmath>

namespace fedrobust {

std::string ImageShape::ToString() const {
  return std::to_string(height) + "x" + std::to_string(width) + "x" +
         std::to_string(channels);
}

void ClipUnit(std::span<float> pixels) {
  for (float& p : pixels) p = std::clamp(p, 0.0f, 1.0f);
}

bool InUnitRange(std::span<const float> pixels) {
  return std::all_of(pixels.begin(), pixels.end(), [](float p) {
    return std::isfinite(p) && p >= 0.0f && p <= 1.0f;
  });
}

int ReflectIndex(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace fedrobust
