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

#ifndef FEDROBUST_COMMON_RNG_H_
#define FEDROBUST_COMMON_RNG_H_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace fedrobust {

using Rng = std::mt19937_64;

// Stream tags mixed into derived seeds so that independent consumers of the
// same base seed never share a random stream.
enum class Stream : uint64_t {
  kPartition = 0x11,
  kProxySplit = 0x12,
  kCorruption = 0x13,
  kInit = 0x21,
  kClientShuffle = 0x31,
  kClientAugment = 0x32,
  kDart = 0x41,
  kDartShuffle = 0x42,
  kDartTrain = 0x43,
  kDartVal = 0x44,
  kSynthetic = 0x51,
};

uint64_t SplitMix64(uint64_t x);

// Hashes (base, stream, tags...) into a new 64-bit seed.
uint64_t DeriveSeed(uint64_t base, Stream stream,
                    std::initializer_list<uint64_t> tags = {});

inline Rng MakeRng(uint64_t base, Stream stream,
                   std::initializer_list<uint64_t> tags = {}) {
  return Rng(DeriveSeed(base, stream, tags));
}

// Uniform double in [0, 1) built from the top 53 bits of one draw. Unlike
// std::uniform_real_distribution this is identical on every standard library.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be positive.
uint64_t UniformIndex(Rng& rng, uint64_t n);

// Standard normal via Box-Muller.
double StandardNormal(Rng& rng);

// Gamma(shape, 1) via Marsaglia-Tsang.
double Gamma(Rng& rng, double shape);

// Fisher-Yates shuffle using UniformIndex.
template <typename It>
void Shuffle(It first, It last, Rng& rng) {
  auto n = static_cast<uint64_t>(last - first);
  for (uint64_t i = n; i > 1; --i) {
    uint64_t j = UniformIndex(rng, i);
    std::iter_swap(first + (i - 1), first + j);
  }
}

}  // namespace fedrobust

#endif  // FEDROBUST_COMMON_RNG_H_
