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

#ifndef FEDROBUST_AUGMIX_AUGMIX_H_
#define FEDROBUST_AUGMIX_AUGMIX_H_

#include <span>
#include <utility>
#include <vector>

#include "fedrobust/augmix/ops.h"
#include "fedrobust/common/image.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::augmix {

struct AugMixConfig {
  int width = 3;                  // S, number of mixed chains
  int max_depth = 3;              // chains have depth 1..max_depth
  double concentration = 1.0;     // Dirichlet(c..c) and Beta(c, c) parameter
  int severity = 3;               // op magnitude scale, 1..10
  std::vector<OpId> ops = DefaultOps();

  // Throws ConfigError on an invalid field or a registry that overlaps the
  // corruption filters.
  void Validate() const;
};

// A composed transform op_d o ... o op_1.
struct Chain {
  std::vector<OpDraw> ops;  // applied front to back

  size_t depth() const { return ops.size(); }
  Image Apply(const Image& x) const;
};

// Draws max_depth ops with replacement, then keeps a prefix whose length is
// uniform over 1..max_depth.
Chain SampleChain(const AugMixConfig& cfg, Rng& rng);

struct MixWeights {
  double eta = 1.0;       // weight of the original image, ~ Beta(c, c)
  std::vector<double> m;  // chain weights, ~ Dirichlet(c, ..., c)
};

MixWeights SampleMixWeights(const AugMixConfig& cfg, Rng& rng);

// eta * x + (1 - eta) * sum_i m_i chain_i(x), clipped to [0, 1].
Image Mix(const Image& x, std::span<const Chain> chains, const MixWeights& w);

// One augmented view: draws weights, then `width` chains, then mixes.
Image AugMix(const Image& x, const AugMixConfig& cfg, Rng& rng);

// Two independent AugMix draws taken in sequence from `rng`.
std::pair<Image, Image> AugMixPair(const Image& x, const AugMixConfig& cfg,
                                   Rng& rng);

}  // namespace fedrobust::augmix

#endif  // FEDROBUST_AUGMIX_AUGMIX_H_
