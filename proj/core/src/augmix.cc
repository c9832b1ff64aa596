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

#include "fedrobust/augmix/augmix.h"

#include <cmath>

#include "fedrobust/common/error.h"

namespace fedrobust::augmix {

void AugMixConfig::Validate() const {
  if (width < 1) throw ConfigError("augmix width must be >= 1");
  if (max_depth < 1 || max_depth > 3)
    throw ConfigError("augmix max_depth must be 1, 2 or 3");
  if (!(concentration > 0.0) || !std::isfinite(concentration))
    throw ConfigError("augmix concentration must be positive");
  if (severity < 1 || severity > 10)
    throw ConfigError("augmix severity must lie in [1, 10]");
  if (ops.empty()) throw ConfigError("augmix op registry is empty");
  CheckDisjointFromCorruptions(ops);
}

Image Chain::Apply(const Image& x) const {
  Image out = x;
  for (const auto& d : ops) out = ApplyOp(out, d);
  return out;
}

Chain SampleChain(const AugMixConfig& cfg, Rng& rng) {
  if (cfg.ops.empty()) throw ConfigError("augmix op registry is empty");
  Chain chain;
  chain.ops.reserve(cfg.max_depth);
  for (int i = 0; i < cfg.max_depth; ++i) {
    const OpId op = cfg.ops[UniformIndex(rng, cfg.ops.size())];
    chain.ops.push_back(SampleOpDraw(op, cfg.severity, rng));
  }
  const auto depth = 1 + UniformIndex(rng, static_cast<uint64_t>(cfg.max_depth));
  chain.ops.resize(depth);
  return chain;
}

MixWeights SampleMixWeights(const AugMixConfig& cfg, Rng& rng) {
  MixWeights w;
  w.m.resize(cfg.width);
  double total = 0.0;
  for (double& m : w.m) {
    m = Gamma(rng, cfg.concentration);
    total += m;
  }
  for (double& m : w.m) m /= total;
  const double a = Gamma(rng, cfg.concentration);
  const double b = Gamma(rng, cfg.concentration);
  w.eta = a / (a + b);
  return w;
}

Image Mix(const Image& x, std::span<const Chain> chains, const MixWeights& w) {
  if (chains.size() != w.m.size())
    throw ConfigError("mix weights and chains differ in count");
  std::vector<double> acc(x.pixels.size(), 0.0);
  for (size_t i = 0; i < chains.size(); ++i) {
    const Image y = chains[i].Apply(x);
    for (size_t p = 0; p < acc.size(); ++p) acc[p] += w.m[i] * y.pixels[p];
  }
  Image out(x.shape);
  for (size_t p = 0; p < acc.size(); ++p)
    out.pixels[p] = static_cast<float>(w.eta * x.pixels[p] + (1.0 - w.eta) * acc[p]);
  ClipUnit(out.pixels);
  return out;
}

Image AugMix(const Image& x, const AugMixConfig& cfg, Rng& rng) {
  const MixWeights w = SampleMixWeights(cfg, rng);
  std::vector<Chain> chains;
  chains.reserve(cfg.width);
  for (int i = 0; i < cfg.width; ++i) chains.push_back(SampleChain(cfg, rng));
  return Mix(x, chains, w);
}

std::pair<Image, Image> AugMixPair(const Image& x, const AugMixConfig& cfg,
                                   Rng& rng) {
  Image first = AugMix(x, cfg, rng);
  Image second = AugMix(x, cfg, rng);
  return {std::move(first), std::move(second)};
}

}  // namespace fedrobust::augmix
