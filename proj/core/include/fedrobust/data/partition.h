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

#ifndef FEDROBUST_DATA_PARTITION_H_
#define FEDROBUST_DATA_PARTITION_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "fedrobust/data/dataset.h"

namespace fedrobust::data {

// Shuffles `ds` with `seed` and deals it into `num_clients` IID shards whose
// sizes differ by at most one (the first N mod K shards get the extra item).
std::vector<LabeledDataset> PartitionClients(const LabeledDataset& ds,
                                             int num_clients, uint64_t seed);

// Index form of PartitionClients, exposed for property tests.
std::vector<std::vector<size_t>> PartitionIndices(size_t n, int num_clients,
                                                  uint64_t seed);

struct ProxySplit {
  UnlabeledDataset train;
  UnlabeledDataset validation;
};

// Disjoint train/validation split with |validation| = round(f * N).
ProxySplit SplitProxy(const UnlabeledDataset& ds, double val_fraction,
                      uint64_t seed);

// Index form of SplitProxy: {train indices, validation indices}.
std::pair<std::vector<size_t>, std::vector<size_t>> SplitIndices(
    size_t n, double val_fraction, uint64_t seed);

}  // namespace fedrobust::data

#endif  // FEDROBUST_DATA_PARTITION_H_
