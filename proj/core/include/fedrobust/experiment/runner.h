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

#ifndef FEDROBUST_EXPERIMENT_RUNNER_H_
#define FEDROBUST_EXPERIMENT_RUNNER_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fedrobust/data/corruption.h"
#include "fedrobust/data/dataset.h"
#include "fedrobust/experiment/config.h"

namespace fedrobust::experiment {

struct ExperimentData {
  data::LabeledDataset train;
  data::LabeledDataset test;
  std::vector<data::UnlabeledDataset> proxies;  // same order as the config
  data::CorruptedTestSuite suite;
};

// Reads every dataset named by `cfg` and builds (or loads from the cache) the
// corruption suite. Throws ConfigError when shapes or class counts disagree.
ExperimentData LoadExperimentData(const ExperimentConfig& cfg,
                                  std::ostream* log = nullptr);

struct RunOutcome {
  std::vector<std::string> files;  // written artifacts, relative to the output dir
  bool budget_exhausted = false;   // some run hit a hard cap
};

// Runs every method for every seed plus the configured summary, sweep,
// ablation and server-dataset tables, and writes them under `out`. Output
// bytes depend only on the config and the data.
RunOutcome RunExperiments(const ExperimentConfig& cfg, const ExperimentData& data,
                          const std::filesystem::path& out,
                          std::ostream* log = nullptr);

// Human-readable rendering of the tables found in an output directory.
std::string RenderReport(const std::filesystem::path& out);

}  // namespace fedrobust::experiment

#endif  // FEDROBUST_EXPERIMENT_RUNNER_H_
