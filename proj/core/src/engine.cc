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


#include "fedrobust/fed/engine.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"
#include "fedrobust/losses/losses.h"

namespace fedrobust::fed {

void FedConfig::Validate() const {
  if (clients < 1) throw ConfigError("number of clients must be >= 1");
  if (global_rounds < 1) throw ConfigError("global_rounds must be >= 1");
  if (local_epochs < 1) throw ConfigError("local_epochs must be >= 1");
  if (robust_period < 1) throw ConfigError("robust_period must be >= 1");
  if (!(client_lr > 0.0) || !std::isfinite(client_lr))
    throw ConfigError("client learning rate must be finite and positive");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(robust_alpha >= 0.0) || !std::isfinite(robust_alpha))
    throw ConfigError("robust_alpha must be finite and >= 0");
}

FedState InitialState(const Federation& fed, const FedConfig& cfg,
                      model::ParameterVector init) {
  cfg.Validate();
  if (!fed.network) throw ConfigError("federation has no network");
  if (static_cast<int>(fed.client_data.size()) != cfg.clients)
    throw ConfigError("expected " + std::to_string(cfg.clients) +
                      " client datasets, got " +
                      std::to_string(fed.client_data.size()));
  if (cfg.method == Method::kFedERL && fed.proxy == nullptr)
    throw ConfigError("FedERL needs a server proxy dataset");
  if (!(init.layout() == *fed.network->layout()))
    throw ConfigError("initial weights do not match the network layout");
  fed.cost.Validate();
  FedState s;
  s.global = std::move(init);
  s.clients = budget::BudgetLedger(cfg.clients, fed.time_cap, fed.energy_cap);
  s.client_passes.resize(cfg.clients);
  return s;
}

model::ParameterVector ClientUpdate(int k, const model::ParameterVector& w,
                                    const data::LabeledDataset& data,
                                    const FedConfig& cfg,
                                    const augmix::AugMixConfig& augmix,
                                    const std::shared_ptr<const model::Network>& network,
                                    int round, model::PassCounter* counter) {
  if (data.size() == 0)
    throw ConfigError("client " + std::to_string(k) + " has no training data");
  const bool robust = cfg.method == Method::kRobustFL;
  model::Classifier clf(network, w);
  const size_t bs = static_cast<size_t>(cfg.batch_size);
  std::vector<size_t> order(data.size());
  const auto uk = static_cast<uint64_t>(k);
  const auto ur = static_cast<uint64_t>(round);
  for (int epoch = 0; epoch < cfg.local_epochs; ++epoch) {
    const auto ue = static_cast<uint64_t>(epoch);
    std::iota(order.begin(), order.end(), size_t{0});
    Rng shuffle = MakeRng(cfg.seed, Stream::kClientShuffle, {uk, ur, ue});
    Shuffle(order.begin(), order.end(), shuffle);
    for (size_t start = 0, b = 0; start < order.size(); start += bs, ++b) {
      const std::span<const size_t> idx(order.data() + start,
                                        std::min(bs, order.size() - start));
      std::vector<uint16_t> labels(idx.size());
      for (size_t i = 0; i < idx.size(); ++i) labels[i] = data.labels[idx[i]];
      ImageBatch batch = data.images.Batch(idx);
      model::GradientResult g;
      if (robust) {
        Rng rng = MakeRng(cfg.seed, Stream::kClientAugment,
                          {uk, ur, ue, static_cast<uint64_t>(b)});
        auto views = losses::AugmentBatch(batch, augmix, rng);
        const std::array<ImageBatch, 3> inputs = {std::move(views.clean),
                                                  std::move(views.aug1),
                                                  std::move(views.aug2)};
        g = model::Gradient(
            clf, inputs,
            losses::AugMixTrainingLoss(std::move(labels), cfg.robust_alpha),
            counter);
      } else {
        const std::array<ImageBatch, 1> inputs = {std::move(batch)};
        g = model::Gradient(clf, inputs,
                            losses::CrossEntropyLoss(std::move(labels)), counter);
      }
      clf = clf.WithParams(model::SgdStep(clf.params(), g.gradient, cfg.client_lr));
    }
  }
  return clf.params();
}

model::ParameterVector Aggregate(std::span<const model::ParameterVector> models) {
  return model::Mean(models);
}

bool DartDue(const FedConfig& cfg, int round) {
  if (cfg.method != Method::kFedERL) return false;
  if (cfg.one_shot) return round == cfg.global_rounds;
  return round % cfg.robust_period == 0;
}

dart::DartResult RunDart(const Federation& fed, const FedConfig& cfg,
                         const model::ParameterVector& w, int round,
                         model::PassCounter* counter) {
  if (fed.proxy == nullptr) throw ConfigError("DART needs a proxy dataset");
  dart::DartConfig dcfg = fed.dart;
  dcfg.seed = DeriveSeed(cfg.seed, Stream::kDart, {static_cast<uint64_t>(round)});
  return dart::DartTrain(model::Classifier(fed.network, w), *fed.proxy, dcfg,
                         counter);
}

FedState RunRound(const FedState& state, const Federation& fed,
                  const FedConfig& cfg, const RoundOptions& options) {
  const int t = state.round + 1;
  FedState next = state;
  try {
    next.clients = budget::ChargeRound(state.clients, cfg.method,
                                       cfg.local_epochs, fed.cost,
                                       fed.architecture());
  } catch (const BudgetExhausted&) {
    next.exhausted = true;
    return next;
  }

  std::vector<int> order = options.execution_order;
  if (order.empty()) {
    order.resize(cfg.clients);
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < cfg.clients; ++k)
      if (static_cast<int>(sorted.size()) != cfg.clients || sorted[k] != k)
        throw ConfigError("execution_order must be a permutation of client ids");
  }

  std::vector<model::ParameterVector> local(cfg.clients);
  std::vector<model::PassCounter> passes(cfg.clients);
  auto update = [&](int k) {
    local[k] = ClientUpdate(k, state.global, fed.client_data[k], cfg, fed.augmix,
                            fed.network, t, &passes[k]);
  };
  if (options.parallel && cfg.clients > 1) {
    std::vector<std::exception_ptr> errors(cfg.clients);
    std::vector<std::thread> threads;
    threads.reserve(order.size());
    for (int k : order)
      threads.emplace_back([&, k] {
        try {
          update(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    for (auto& th : threads) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int k : order) update(k);
  }
  for (int k = 0; k < cfg.clients; ++k) next.client_passes[k] += passes[k];

  next.global = Aggregate(local);
  next.round = t;

  if (cfg.mode == EvalMode::kProtocol && DartDue(cfg, t)) {
    auto result = RunDart(fed, cfg, next.global, t, &next.server_passes);
    next.global = std::move(result.weights);
    const auto epochs = static_cast<double>(result.report.epochs_run);
    next.server += budget::Cost{fed.cost.server_dart_epoch.time_s * epochs,
                                fed.cost.server_dart_epoch.energy_j * epochs};
    next.dart_reports.push_back(std::move(result.report));
  }
  return next;
}

namespace {

bool EvaluationDue(const EvalPlan& plan, const FedConfig& cfg, int round) {
  if (round == cfg.global_rounds) return true;
  return plan.every > 0 && round % plan.every == 0;
}

// The model the method would deploy if training stopped after `state`.
model::ParameterVector Deployed(const Federation& fed, const FedConfig& cfg,
                                FedState& state) {
  if (cfg.mode != EvalMode::kCurve || cfg.method != Method::kFedERL)
    return state.global;
  auto result = RunDart(fed, cfg, state.global, state.round, &state.server_passes);
  const auto epochs = static_cast<double>(result.report.epochs_run);
  state.server += budget::Cost{fed.cost.server_dart_epoch.time_s * epochs,
                               fed.cost.server_dart_epoch.energy_j * epochs};
  state.dart_reports.push_back(std::move(result.report));
  return std::move(result.weights);
}

RoundRecord MakeRecord(const FedState& state, const FedConfig& cfg,
                       const eval::MetricsRecord& m) {
  RoundRecord r;
  r.round = state.round;
  const budget::Cost spent = state.clients.MaxSpent();
  r.time_s = spent.time_s;
  r.energy_j = spent.energy_j;
  r.acc_clean = m.clean;
  r.acc_robust = m.robust;
  r.acc_avg = m.average;
  r.method = cfg.method;
  r.budget_exhausted = state.exhausted;
  return r;
}

}  // namespace

ExperimentResult RunExperiment(const Federation& fed, const FedConfig& cfg,
                               const EvalPlan& plan, model::ParameterVector init,
                               const RoundOptions& options) {
  if (plan.test == nullptr || plan.suite == nullptr)
    throw ConfigError("evaluation plan needs a test set and a corruption suite");
  if (plan.every < 0) throw ConfigError("evaluation interval must be >= 0");
  ExperimentResult out;
  FedState state = InitialState(fed, cfg, std::move(init));
  auto evaluate = [&](FedState& s) {
    model::ParameterVector w = Deployed(fed, cfg, s);
    const model::Classifier clf(fed.network, w);
    eval::MetricsRecord m = eval::Evaluate(clf, *plan.test, *plan.suite);
    out.records.push_back(MakeRecord(s, cfg, m));
    out.final_model = std::move(w);
    out.final_metrics = std::move(m);
  };
  while (state.round < cfg.global_rounds) {
    FedState next = RunRound(state, fed, cfg, options);
    if (next.exhausted) {
      std::fprintf(stderr,
                   "budget exhausted before round %d; stopping the run\n",
                   state.round + 1);
      state = std::move(next);
      evaluate(state);
      break;
    }
    state = std::move(next);
    if (plan.on_round) plan.on_round(state);
    if (EvaluationDue(plan, cfg, state.round)) evaluate(state);
  }
  out.final_state = std::move(state);
  return out;
}

std::string RoundRecordsCsv(const std::vector<RoundRecord>& records) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os << "round,time_s,energy_J,acc_clean,acc_robust,acc_avg,method\n";
  for (const auto& r : records) {
    os.precision(3);
    os << r.round << ',' << r.time_s << ',' << r.energy_j << ',';
    os.precision(6);
    os << r.acc_clean << ',' << r.acc_robust << ',' << r.acc_avg << ','
       << MethodName(r.method) << '\n';
  }
  return os.str();
}

}  // namespace fedrobust::fed
