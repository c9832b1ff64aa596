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

#ifndef FEDROBUST_EXPERIMENT_CONFIG_H_
#define FEDROBUST_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedrobust/augmix/augmix.h"
#include "fedrobust/budget/budget.h"
#include "fedrobust/dart/dart.h"
#include "fedrobust/data/corruption.h"
#include "fedrobust/fed/engine.h"

namespace fedrobust::experiment {

// Environment variable naming the directory that relative dataset paths are
// resolved against. Without it they are resolved against the config file.
inline constexpr char kDataRootEnv[] = "FEDROBUST_DATA_ROOT";

struct ProxyEntry {
  std::string name;
  std::filesystem::path path;
};

struct SuiteConfig {
  std::vector<data::Filter> filters;
  std::vector<int> severities{1, 3, 5};
  uint64_t seed = 0;
  // Where materialised suites are cached; empty keeps them in memory only.
  std::filesystem::path cache;
};

struct ExperimentConfig {
  std::filesystem::path train;
  std::filesystem::path test;
  // The first entry is the proxy used by FedERL runs; the rest only feed the
  // server-dataset comparison.
  std::vector<ProxyEntry> proxies;
  SuiteConfig suite;
  std::string architecture = "cnn";

  fed::FedConfig fed;
  dart::DartConfig dart;
  augmix::AugMixConfig augmix;  // RobustFL clients
  std::optional<budget::CostModel> cost;

  std::vector<fed::Method> methods{fed::Method::kCleanFL, fed::Method::kRobustFL,
                                   fed::Method::kFedERL};
  std::vector<uint64_t> seeds{0};
  int eval_every = 0;
  bool parallel_clients = false;

  // Hard per-client caps applied to every run.
  std::optional<double> time_cap;
  std::optional<double> energy_cap;
  // Iso-budget grid for the summary table.
  std::vector<double> time_budgets;
  std::vector<double> energy_budgets;
  // T_rob values for the sweep table; 0 stands for one-shot.
  std::vector<int> trob_sweep;
  bool ablation = false;
  bool server_datasets = false;

  std::filesystem::path output = "out";

  // Throws ConfigError on any inconsistency, including missing paths.
  void Validate() const;
  // Cost table actually used: the configured one, or unit clean costs with
  // the default robust ratios.
  budget::CostModel EffectiveCost() const;
};

// Parses the JSON form. Unknown keys are rejected. Relative paths are
// resolved against `base_dir` or, when set, the data-root variable.
ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir);

ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical JSON with every field spelled out.
std::string ToJson(const ExperimentConfig& cfg);

}  // namespace fedrobust::experiment

#endif  // FEDROBUST_EXPERIMENT_CONFIG_H_
