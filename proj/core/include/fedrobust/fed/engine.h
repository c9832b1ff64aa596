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

#ifndef FEDROBUST_FED_ENGINE_H_
#define FEDROBUST_FED_ENGINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedrobust/augmix/augmix.h"
#include "fedrobust/budget/budget.h"
#include "fedrobust/dart/dart.h"
#include "fedrobust/data/corruption.h"
#include "fedrobust/data/dataset.h"
#include "fedrobust/eval/metrics.h"
#include "fedrobust/fed/method.h"
#include "fedrobust/model/classifier.h"

namespace fedrobust::fed {

// kProtocol: DART output replaces the global model and is sent to clients.
// kCurve: clients follow the CleanFL trajectory; DART is applied to a copy of
// the global model at each evaluation point and never fed back.
enum class EvalMode { kProtocol, kCurve };

struct FedConfig {
  int clients = 10;              // K
  int global_rounds = 200;       // T_g
  int local_epochs = 1;          // T_l
  int robust_period = 200;       // T_rob
  double client_lr = 0.1;
  Method method = Method::kCleanFL;
  int batch_size = 32;
  uint64_t seed = 0;
  bool one_shot = false;         // FedERL: DART only after round T_g
  double robust_alpha = 12.0;    // RobustFL JS weight
  EvalMode mode = EvalMode::kProtocol;

  void Validate() const;
};

// Inputs shared by every round of a run.
struct Federation {
  std::shared_ptr<const model::Network> network;
  std::vector<data::LabeledDataset> client_data;
  const data::UnlabeledDataset* proxy = nullptr;  // needed by FedERL only
  dart::DartConfig dart;
  augmix::AugMixConfig augmix;  // RobustFL client augmentation
  budget::CostModel cost;
  std::optional<double> time_cap;
  std::optional<double> energy_cap;

  std::string architecture() const { return network->architecture().name; }
};

struct FedState {
  int round = 0;  // rounds completed
  model::ParameterVector global;
  budget::BudgetLedger clients;
  budget::Cost server;  // DART spend, never charged to clients
  std::vector<model::PassCounter> client_passes;
  model::PassCounter server_passes;
  std::vector<dart::DartReport> dart_reports;
  bool exhausted = false;
};

FedState InitialState(const Federation& fed, const FedConfig& cfg,
                      model::ParameterVector init);

// T_l epochs of minibatch SGD from `w` on client k's data. CleanFL and FedERL
// clients minimise cross-entropy; RobustFL clients minimise
// CE(clean) + robust_alpha * JS(clean, aug1, aug2). Randomness is keyed by
// (cfg.seed, k, round) only.
model::ParameterVector ClientUpdate(int k, const model::ParameterVector& w,
                                    const data::LabeledDataset& data,
                                    const FedConfig& cfg,
                                    const augmix::AugMixConfig& augmix,
                                    const std::shared_ptr<const model::Network>& network,
                                    int round,
                                    model::PassCounter* counter = nullptr);

// FedAvg: unweighted element-wise mean.
model::ParameterVector Aggregate(std::span<const model::ParameterVector> models);

// Whether round t (1-based) ends with a DART update under `cfg`.
bool DartDue(const FedConfig& cfg, int round);

// DART applied to `w` as the server would after `round`.
dart::DartResult RunDart(const Federation& fed, const FedConfig& cfg,
                         const model::ParameterVector& w, int round,
                         model::PassCounter* counter = nullptr);

struct RoundOptions {
  // Order in which client updates are computed; empty means 0..K-1.
  std::vector<int> execution_order;
  // Run client updates on separate threads.
  bool parallel = false;
};

// One global round: charge budgets, update every client from the same
// snapshot, aggregate, and (FedERL protocol mode) apply DART when due. If the
// charge would exceed a cap the state is returned unchanged with
// `exhausted` set.
FedState RunRound(const FedState& state, const Federation& fed,
                  const FedConfig& cfg, const RoundOptions& options = {});

struct RoundRecord {
  int round = 0;
  double time_s = 0.0;    // cumulative per-client
  double energy_j = 0.0;  // cumulative per-client
  double acc_clean = 0.0;
  double acc_robust = 0.0;
  double acc_avg = 0.0;
  Method method = Method::kCleanFL;
  bool budget_exhausted = false;
};

struct EvalPlan {
  const data::LabeledDataset* test = nullptr;
  const data::CorruptedTestSuite* suite = nullptr;
  int every = 1;  // evaluate after rounds divisible by this, and after T_g; 0: final only
  // Invoked after every completed round with the post-round state.
  std::function<void(const FedState&)> on_round;
};

struct ExperimentResult {
  std::vector<RoundRecord> records;
  FedState final_state;
  model::ParameterVector final_model;  // what the method deploys after T_g
  eval::MetricsRecord final_metrics;
};

ExperimentResult RunExperiment(const Federation& fed, const FedConfig& cfg,
                               const EvalPlan& plan, model::ParameterVector init,
                               const RoundOptions& options = {});

// CSV with columns round,time_s,energy_J,acc_clean,acc_robust,acc_avg,method.
std::string RoundRecordsCsv(const std::vector<RoundRecord>& records);

}  // namespace fedrobust::fed

#endif  // FEDROBUST_FED_ENGINE_H_
