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

#include "fedrobust/data/partition.h"

#include <cmath>
#include <numeric>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"

namespace fedrobust::data {

std::vector<std::vector<size_t>> PartitionIndices(size_t n, int num_clients,
                                                  uint64_t seed) {
  if (num_clients < 1) throw ConfigError("client count must be >= 1");
  if (static_cast<size_t>(num_clients) > n)
    throw ConfigError("too many clients: " + std::to_string(num_clients) +
                      " clients for " + std::to_string(n) + " samples");
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng = MakeRng(seed, Stream::kPartition);
  Shuffle(order.begin(), order.end(), rng);

  const size_t k = static_cast<size_t>(num_clients);
  const size_t base = n / k;
  const size_t extra = n % k;
  std::vector<std::vector<size_t>> shards(k);
  size_t pos = 0;
  for (size_t c = 0; c < k; ++c) {
    const size_t len = base + (c < extra ? 1 : 0);
    shards[c].assign(order.begin() + pos, order.begin() + pos + len);
    pos += len;
  }
  return shards;
}

std::vector<LabeledDataset> PartitionClients(const LabeledDataset& ds,
                                             int num_clients, uint64_t seed) {
  auto shards = PartitionIndices(ds.size(), num_clients, seed);
  std::vector<LabeledDataset> out;
  out.reserve(shards.size());
  for (size_t c = 0; c < shards.size(); ++c) {
    out.push_back(ds.Subset(shards[c]));
    out.back().images.name = ds.name() + "/client" + std::to_string(c);
  }
  return out;
}

std::pair<std::vector<size_t>, std::vector<size_t>> SplitIndices(
    size_t n, double val_fraction, uint64_t seed) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    throw ConfigError("val_fraction must lie in (0, 1)");
  const auto n_val = static_cast<size_t>(std::llround(val_fraction * n));
  if (n_val == 0 || n_val >= n)
    throw ConfigError("proxy split of " + std::to_string(n) +
                      " images leaves an empty side");
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng = MakeRng(seed, Stream::kProxySplit);
  Shuffle(order.begin(), order.end(), rng);
  std::vector<size_t> val(order.begin(), order.begin() + n_val);
  std::vector<size_t> train(order.begin() + n_val, order.end());
  return {std::move(train), std::move(val)};
}

ProxySplit SplitProxy(const UnlabeledDataset& ds, double val_fraction,
                      uint64_t seed) {
  auto [train, val] = SplitIndices(ds.size(), val_fraction, seed);
  ProxySplit split{ds.Subset(train), ds.Subset(val)};
  split.train.images.name = ds.name() + "/dart";
  split.validation.images.name = ds.name() + "/val";
  return split;
}

}  // namespace fedrobust::data
