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


#include "fedrobust/experiment/runner.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <tuple>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"
#include "fedrobust/data/dataset_io.h"
#include "fedrobust/data/partition.h"
#include "fedrobust/eval/metrics.h"
#include "fedrobust/fed/engine.h"
#include "fedrobust/model/checkpoint.h"
#include "fedrobust/model/network.h"

namespace fedrobust::experiment {
namespace {

namespace fs = std::filesystem;
using fed::Method;

void Log(std::ostream* log, const std::string& line) {
  if (log) *log << line << std::endl;
}

std::string Fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string Acc(double v) { return Fixed(v, 6); }
std::string Spend(double v) { return Fixed(v, 3); }

// A CSV table with optional per-group mean rows.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string Csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Running means of a fixed list of numeric columns.
struct Mean {
  std::vector<double> sum;
  int n = 0;
  void Add(const std::vector<double>& v) {
    if (sum.empty()) sum.assign(v.size(), 0.0);
    for (size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    ++n;
  }
  double operator[](size_t i) const { return n ? sum[i] / n : 0.0; }
};

// Lazily extended sequence of federated states: At(r) is the state after r
// rounds, or the exhausted state if a budget cap stops the run first.
class Trajectory {
 public:
  Trajectory(const fed::Federation* fed, fed::FedConfig cfg, fed::FedState initial,
             fed::RoundOptions options)
      : fed_(fed), cfg_(std::move(cfg)), options_(std::move(options)) {
    states_.push_back(std::move(initial));
  }

  // Reuses the first `rounds` states of `other`, which must follow identical
  // updates up to that point.
  void SeedPrefix(Trajectory& other, int rounds) {
    for (int r = 1; r <= rounds; ++r) {
      const fed::FedState& s = other.At(r);
      if (s.exhausted) return;
      states_.push_back(s);
    }
  }

  const fed::FedState& At(int round) {
    while (static_cast<int>(states_.size()) <= round && !exhausted_) {
      fed::FedState next = fed::RunRound(states_.back(), *fed_, cfg_, options_);
      if (next.exhausted) {
        exhausted_ = true;
        exhausted_state_ = std::move(next);
        break;
      }
      states_.push_back(std::move(next));
    }
    if (round < static_cast<int>(states_.size())) return states_[round];
    return exhausted_state_;
  }

 private:
  const fed::Federation* fed_;
  fed::FedConfig cfg_;
  fed::RoundOptions options_;
  std::deque<fed::FedState> states_;  // stable references on growth
  bool exhausted_ = false;
  fed::FedState exhausted_state_;
};

struct DartEntry {
  dart::DartResult result;
  model::PassCounter passes;
};

// Deployed model of one run at one point, with what it cost.
struct Snapshot {
  const fed::FedState* state = nullptr;
  model::ParameterVector weights;
  std::vector<const DartEntry*> extra_darts;  // DART runs outside the state
  std::string key;                            // evaluation cache key
};

class SeedRun {
 public:
  SeedRun(const ExperimentConfig& cfg, const ExperimentData& data, uint64_t seed,
          std::ostream* log)
      : cfg_(cfg), data_(data), seed_(seed), log_(log) {
    network_ = std::make_shared<model::Network>(model::MakeArchitecture(
        cfg.architecture, data.train.images.shape, data.train.num_classes));
    init_ = network_->InitParameters(DeriveSeed(seed, Stream::kInit));
    auto shards = data::PartitionClients(data.train, cfg.fed.clients,
                                         DeriveSeed(seed, Stream::kPartition));
    const budget::CostModel cost = cfg.EffectiveCost();
    const size_t n_proxy = std::max<size_t>(1, data.proxies.size());
    feds_.resize(n_proxy);
    for (size_t p = 0; p < n_proxy; ++p) {
      fed::Federation& f = feds_[p];
      f.network = network_;
      f.client_data = shards;
      f.proxy = data.proxies.empty() ? nullptr : &data.proxies[p];
      f.dart = cfg.dart;
      f.augmix = cfg.augmix;
      f.cost = cost;
      f.time_cap = cfg.time_cap;
      f.energy_cap = cfg.energy_cap;
    }
    options_.parallel = cfg.parallel_clients;
  }

  uint64_t seed() const { return seed_; }
  const std::shared_ptr<const model::Network>& network() const { return network_; }
  int global_rounds() const { return cfg_.fed.global_rounds; }

  fed::FedConfig ConfigFor(Method method, int trob) const {
    fed::FedConfig c = cfg_.fed;
    c.seed = seed_;
    c.method = method;
    if (method == Method::kFedERL) {
      c.one_shot = trob == 0;
      c.robust_period = trob == 0 ? c.global_rounds : trob;
      c.mode = fed::EvalMode::kProtocol;
    }
    return c;
  }

  Trajectory& Traj(Method method, int trob = 0, size_t proxy = 0) {
    if (method != Method::kFedERL) trob = 0, proxy = 0;
    const auto key = std::make_tuple(method, trob, proxy);
    auto it = trajectories_.find(key);
    if (it != trajectories_.end()) return *it->second;
    const fed::FedConfig c = ConfigFor(method, trob);
    auto t = std::make_unique<Trajectory>(
        &feds_[proxy], c, fed::InitialState(feds_[proxy], c, init_), options_);
    if (method == Method::kFedERL && trob > 1)
      t->SeedPrefix(Traj(Method::kCleanFL), trob - 1);
    return *trajectories_.emplace(key, std::move(t)).first->second;
  }

  const DartEntry& Dart(const model::ParameterVector& w, int round, size_t proxy,
                        const losses::LossWeights& weights, const std::string& tag) {
    const auto key = std::make_tuple(tag, round, proxy, weights.alpha, weights.distillation);
    auto it = darts_.find(key);
    if (it != darts_.end()) return it->second;
    fed::Federation f = feds_[proxy];
    f.dart.weights = weights;
    DartEntry e;
    Log(log_, "  seed " + std::to_string(seed_) + ": DART on " + tag + " round " +
                  std::to_string(round) + " proxy " + ProxyName(proxy));
    e.result = fed::RunDart(f, ConfigFor(Method::kFedERL, 0), w, round, &e.passes);
    return darts_.emplace(key, std::move(e)).first->second;
  }

  // Deployed model of `method` at `round` of a run whose length is `tg`,
  // under the configured FedERL variant.
  Snapshot Deployed(Method method, int round, int tg, size_t proxy = 0) {
    const auto& f = cfg_.fed;
    Snapshot s;
    if (method == Method::kFedERL && !f.one_shot && f.mode == fed::EvalMode::kProtocol)
      return FromState(Traj(method, f.robust_period, proxy).At(round),
                       "fed" + std::to_string(f.robust_period) + "/" +
                           std::to_string(proxy));
    if (method != Method::kFedERL)
      return FromState(Traj(method).At(round), std::string(fed::MethodName(method)));
    const fed::FedState& st = Traj(Method::kCleanFL).At(round);
    if (f.mode == fed::EvalMode::kCurve || (st.round == tg && tg > 0))
      return WithDart(st, proxy, cfg_.dart.weights, "dart");
    return FromState(st, std::string(fed::MethodName(Method::kCleanFL)));
  }

  Snapshot OneShot(int tg, size_t proxy, const losses::LossWeights& weights,
                   const std::string& tag) {
    const fed::FedState& st = Traj(Method::kCleanFL).At(tg);
    if (st.round < 1) return FromState(st, std::string(fed::MethodName(Method::kCleanFL)));
    return WithDart(st, proxy, weights, tag);
  }

  Snapshot Periodic(int trob, int tg) {
    return FromState(Traj(Method::kFedERL, trob).At(tg),
                     "fed" + std::to_string(trob) + "/0");
  }

  const eval::MetricsRecord& Evaluate(const Snapshot& s) {
    auto it = metrics_.find(s.key);
    if (it != metrics_.end()) return it->second;
    const model::Classifier clf(network_, s.weights);
    return metrics_.emplace(s.key, eval::Evaluate(clf, data_.test, data_.suite))
        .first->second;
  }

  std::string ProxyName(size_t p) const {
    return p < cfg_.proxies.size() ? cfg_.proxies[p].name : "none";
  }

 private:
  Snapshot FromState(const fed::FedState& st, const std::string& key) {
    Snapshot s;
    s.state = &st;
    s.weights = st.global;
    s.key = key + "@" + std::to_string(st.round) + (st.exhausted ? "x" : "");
    return s;
  }

  Snapshot WithDart(const fed::FedState& st, size_t proxy,
                    const losses::LossWeights& weights, const std::string& tag) {
    const DartEntry& e = Dart(st.global, st.round, proxy, weights, tag);
    Snapshot s;
    s.state = &st;
    s.weights = e.result.weights;
    s.extra_darts.push_back(&e);
    std::ostringstream key;
    key << tag << "/" << proxy << "/" << weights.alpha << "/" << weights.distillation
        << "@" << st.round << (st.exhausted ? "x" : "");
    s.key = key.str();
    return s;
  }

  const ExperimentConfig& cfg_;
  const ExperimentData& data_;
  uint64_t seed_;
  std::ostream* log_;
  std::shared_ptr<const model::Network> network_;
  model::ParameterVector init_;
  std::vector<fed::Federation> feds_;
  fed::RoundOptions options_;
  std::map<std::tuple<Method, int, size_t>, std::unique_ptr<Trajectory>> trajectories_;
  std::map<std::tuple<std::string, int, size_t, double, double>, DartEntry> darts_;
  std::map<std::string, eval::MetricsRecord> metrics_;
};

std::vector<double> Accuracies(const eval::MetricsRecord& m) {
  return {m.clean, m.robust, m.average};
}

class Writer {
 public:
  Writer(fs::path out, RunOutcome* outcome) : out_(std::move(out)), outcome_(outcome) {}

  void Write(const std::string& name, const std::string& content) {
    const fs::path p = out_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot write " + p.string());
    f << content;
    if (!f) throw IoError("failed writing " + p.string());
    outcome_->files.push_back(name);
  }

  void Checkpoint(const std::string& name, const model::Classifier& clf) {
    model::SaveCheckpoint(out_ / name, clf);
    outcome_->files.push_back(name);
  }

 private:
  fs::path out_;
  RunOutcome* outcome_;
};

std::string DartReportsJson(const std::vector<const dart::DartReport*>& reports) {
  std::string s = "[";
  for (size_t i = 0; i < reports.size(); ++i) {
    s += i ? ",\n" : "\n";
    s += reports[i]->ToJson();
  }
  return s + (reports.empty() ? "]\n" : "\n]\n");
}

std::vector<int> EvaluationRounds(const ExperimentConfig& cfg) {
  std::vector<int> rounds;
  const int tg = cfg.fed.global_rounds;
  for (int t = 1; t <= tg; ++t)
    if (t == tg || (cfg.eval_every > 0 && t % cfg.eval_every == 0)) rounds.push_back(t);
  return rounds;
}

struct LedgerTotals {
  budget::Cost client;
  budget::Cost server;
  model::PassCounter client_passes;
  model::PassCounter server_passes;
  size_t dart_calls = 0;
};

LedgerTotals Totals(const fed::FedState& st, const std::vector<const DartEntry*>& extra,
                    const budget::CostModel& cost) {
  LedgerTotals t;
  t.client = st.clients.MaxSpent();
  t.server = st.server;
  for (const auto& p : st.client_passes) t.client_passes += p;
  t.server_passes = st.server_passes;
  t.dart_calls = st.dart_reports.size();
  for (const DartEntry* e : extra) {
    const auto epochs = static_cast<double>(e->result.report.epochs_run);
    t.server += budget::Cost{cost.server_dart_epoch.time_s * epochs,
                             cost.server_dart_epoch.energy_j * epochs};
    t.server_passes += e->passes;
    ++t.dart_calls;
  }
  return t;
}

}  // namespace

ExperimentData LoadExperimentData(const ExperimentConfig& cfg, std::ostream* log) {
  ExperimentData d;
  d.train = data::ReadLabeledDataset(cfg.train);
  d.test = data::ReadLabeledDataset(cfg.test);
  if (d.train.num_classes != d.test.num_classes)
    throw ConfigError("training and test sets disagree on the number of classes");
  if (!(d.train.images.shape == d.test.images.shape))
    throw ConfigError("training and test images have different shapes");
  for (const auto& p : cfg.proxies) {
    d.proxies.push_back(data::ReadUnlabeledDataset(p.path));
    if (!(d.proxies.back().images.shape == d.train.images.shape))
      throw ConfigError("proxy '" + p.name + "' has shape " +
                        d.proxies.back().images.shape.ToString() + ", expected " +
                        d.train.images.shape.ToString());
  }
  const auto specs = data::CrossSpecs(cfg.suite.filters, cfg.suite.severities);
  if (cfg.suite.cache.empty()) {
    d.suite = data::BuildCorruptionSuite(d.test, specs, cfg.suite.seed);
  } else {
    const auto stats =
        data::WriteCorruptionSuite(cfg.suite.cache, d.test, specs, cfg.suite.seed);
    Log(log, "corruption suite: " + std::to_string(stats.written) + " written, " +
                 std::to_string(stats.reused) + " reused");
    d.suite = data::ReadCorruptionSuite(cfg.suite.cache, d.test, specs);
  }
  return d;
}

RunOutcome RunExperiments(const ExperimentConfig& cfg, const ExperimentData& data,
                          const fs::path& out, std::ostream* log) {
  cfg.Validate();
  RunOutcome outcome;
  fs::create_directories(out);
  Writer writer(out, &outcome);
  ExperimentConfig recorded = cfg;
  recorded.output.clear();
  writer.Write("config.json", ToJson(recorded));

  const budget::CostModel cost = cfg.EffectiveCost();
  const int tg = cfg.fed.global_rounds;
  const std::string arch =
      model::MakeArchitecture(cfg.architecture, data.train.images.shape,
                              data.train.num_classes)
          .name;
  const auto eval_rounds = EvaluationRounds(cfg);

  Table ledger({"method", "seed", "rounds", "client_time_s", "client_energy_J",
                "server_time_s", "server_energy_J", "dart_calls", "client_forward",
                "client_backward", "server_forward", "server_backward"});
  Table summary({"budget_kind", "budget", "method", "seed", "T_g", "time_s",
                 "energy_J", "acc_clean", "acc_robust", "acc_avg"});
  Table trob({"T_rob", "seed", "dart_calls", "server_dart_epochs", "time_s",
              "energy_J", "acc_clean", "acc_robust", "acc_avg"});
  Table ablation({"variant", "seed", "acc_clean", "acc_robust", "acc_avg"});
  Table servers({"proxy", "seed", "acc_clean", "acc_robust", "acc_avg"});

  std::map<std::string, Mean> summary_means, trob_means, ablation_means, server_means;
  std::vector<std::string> summary_order, trob_order, ablation_order, server_order;
  auto remember = [](std::vector<std::string>& order, const std::string& key) {
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
  };

  for (uint64_t seed : cfg.seeds) {
    SeedRun run(cfg, data, seed, log);
    const std::string sseed = std::to_string(seed);

    for (Method method : cfg.methods) {
      const std::string name(fed::MethodName(method));
      Log(log, "seed " + sseed + ": " + name);
      std::vector<fed::RoundRecord> records;
      Snapshot last;
      std::vector<const DartEntry*> darts;
      for (int t : eval_rounds) {
        Snapshot s = run.Deployed(method, t, tg);
        const auto& m = run.Evaluate(s);
        fed::RoundRecord r;
        r.round = s.state->round;
        const budget::Cost spent = s.state->clients.MaxSpent();
        r.time_s = spent.time_s;
        r.energy_j = spent.energy_j;
        r.acc_clean = m.clean;
        r.acc_robust = m.robust;
        r.acc_avg = m.average;
        r.method = method;
        r.budget_exhausted = s.state->exhausted;
        records.push_back(r);
        for (const DartEntry* e : s.extra_darts) darts.push_back(e);
        const bool stop = s.state->exhausted;
        last = std::move(s);
        if (stop) {
          outcome.budget_exhausted = true;
          Log(log, "seed " + sseed + ": " + name + " stopped by the budget after round " +
                       std::to_string(r.round));
          break;
        }
      }
      const std::string suffix = name + "_seed" + sseed;
      writer.Write("rounds_" + suffix + ".csv", fed::RoundRecordsCsv(records));
      writer.Write("breakdown_" + suffix + ".csv",
                   eval::BreakdownCsv(run.Evaluate(last).breakdown));
      writer.Checkpoint("checkpoints/" + suffix,
                        model::Classifier(run.network(), last.weights));
      std::vector<const dart::DartReport*> reports;
      for (const auto& r : last.state->dart_reports) reports.push_back(&r);
      for (const DartEntry* e : darts) reports.push_back(&e->result.report);
      if (method == Method::kFedERL)
        writer.Write("dart_reports_" + suffix + ".json", DartReportsJson(reports));

      const LedgerTotals lt = Totals(*last.state, darts, cost);
      ledger.Add({name, sseed, std::to_string(last.state->round), Spend(lt.client.time_s),
                  Spend(lt.client.energy_j), Spend(lt.server.time_s),
                  Spend(lt.server.energy_j), std::to_string(lt.dart_calls),
                  std::to_string(lt.client_passes.forward),
                  std::to_string(lt.client_passes.backward),
                  std::to_string(lt.server_passes.forward),
                  std::to_string(lt.server_passes.backward)});
    }

    // Iso-budget comparison.
    auto budget_rows = [&](budget::BudgetKind kind, const std::vector<double>& grid) {
      const std::string kname = kind == budget::BudgetKind::kTime ? "time" : "energy";
      for (double b : grid) {
        for (Method method : cfg.methods) {
          const int rounds = budget::RoundsWithinBudget(kind, b, method,
                                                        cfg.fed.local_epochs, cost, arch);
          Snapshot s = run.Deployed(method, rounds, rounds);
          const auto& m = run.Evaluate(s);
          const budget::Cost spent = s.state->clients.MaxSpent();
          const std::string name(fed::MethodName(method));
          summary.Add({kname, Spend(b), name, sseed, std::to_string(s.state->round),
                       Spend(spent.time_s), Spend(spent.energy_j), Acc(m.clean),
                       Acc(m.robust), Acc(m.average)});
          const std::string key = kname + "," + Spend(b) + "," + name;
          remember(summary_order, key);
          summary_means[key].Add({static_cast<double>(s.state->round), spent.time_s,
                                  spent.energy_j, m.clean, m.robust, m.average});
        }
      }
    };
    budget_rows(budget::BudgetKind::kTime, cfg.time_budgets);
    budget_rows(budget::BudgetKind::kEnergy, cfg.energy_budgets);

    for (int period : cfg.trob_sweep) {
      Log(log, "seed " + sseed + ": T_rob sweep " + std::to_string(period));
      Snapshot s = period == 0 ? run.OneShot(tg, 0, cfg.dart.weights, "dart")
                               : run.Periodic(period, tg);
      const auto& m = run.Evaluate(s);
      const LedgerTotals lt = Totals(*s.state, s.extra_darts, cost);
      double epochs = 0;
      for (const auto& r : s.state->dart_reports) epochs += r.epochs_run;
      for (const DartEntry* e : s.extra_darts) epochs += e->result.report.epochs_run;
      const std::string label = period == 0 ? "one_shot" : std::to_string(period);
      trob.Add({label, sseed, std::to_string(lt.dart_calls), Fixed(epochs, 0),
                Spend(lt.client.time_s), Spend(lt.client.energy_j), Acc(m.clean),
                Acc(m.robust), Acc(m.average)});
      remember(trob_order, label);
      trob_means[label].Add({static_cast<double>(lt.dart_calls), epochs, lt.client.time_s,
                             lt.client.energy_j, m.clean, m.robust, m.average});
    }

    if (cfg.ablation) {
      Log(log, "seed " + sseed + ": ablation");
      losses::LossWeights no_lc = cfg.dart.weights, no_ld = cfg.dart.weights;
      no_lc.alpha = 0.0;
      no_ld.distillation = 0.0;
      const std::vector<std::pair<std::string, Snapshot>> variants = {
          {"clean_training", run.Deployed(Method::kCleanFL, tg, tg)},
          {"dart_without_Lc", run.OneShot(tg, 0, no_lc, "dart")},
          {"dart_without_Ld", run.OneShot(tg, 0, no_ld, "dart")},
          {"full_dart", run.OneShot(tg, 0, cfg.dart.weights, "dart")}};
      for (const auto& [label, s] : variants) {
        const auto& m = run.Evaluate(s);
        ablation.Add({label, sseed, Acc(m.clean), Acc(m.robust), Acc(m.average)});
        remember(ablation_order, label);
        ablation_means[label].Add(Accuracies(m));
      }
    }

    if (cfg.server_datasets) {
      for (size_t p = 0; p < cfg.proxies.size(); ++p) {
        Log(log, "seed " + sseed + ": server dataset " + cfg.proxies[p].name);
        Snapshot s = run.Deployed(Method::kFedERL, tg, tg, p);
        const auto& m = run.Evaluate(s);
        const std::string& label = cfg.proxies[p].name;
        servers.Add({label, sseed, Acc(m.clean), Acc(m.robust), Acc(m.average)});
        remember(server_order, label);
        server_means[label].Add(Accuracies(m));
      }
    }
  }

  writer.Write("ledger.csv", ledger.Csv());
  if (!cfg.time_budgets.empty() || !cfg.energy_budgets.empty()) {
    for (const auto& key : summary_order) {
      const Mean& mn = summary_means[key];
      std::vector<std::string> row;
      std::stringstream ks(key);
      for (std::string part; std::getline(ks, part, ',');) row.push_back(part);
      row.insert(row.begin() + 3, "mean");
      for (size_t i = 0; i < 6; ++i) row.push_back(i == 0 ? Fixed(mn[i], 3)
                                                   : i < 3 ? Spend(mn[i]) : Acc(mn[i]));
      summary.Add(row);
    }
    writer.Write("summary.csv", summary.Csv());
  }
  if (!cfg.trob_sweep.empty()) {
    for (const auto& key : trob_order) {
      const Mean& mn = trob_means[key];
      trob.Add({key, "mean", Fixed(mn[0], 3), Fixed(mn[1], 3), Spend(mn[2]),
                Spend(mn[3]), Acc(mn[4]), Acc(mn[5]), Acc(mn[6])});
    }
    writer.Write("trob_sweep.csv", trob.Csv());
  }
  if (cfg.ablation) {
    for (const auto& key : ablation_order) {
      const Mean& mn = ablation_means[key];
      ablation.Add({key, "mean", Acc(mn[0]), Acc(mn[1]), Acc(mn[2])});
    }
    writer.Write("ablation.csv", ablation.Csv());
  }
  if (cfg.server_datasets) {
    for (const auto& key : server_order) {
      const Mean& mn = server_means[key];
      servers.Add({key, "mean", Acc(mn[0]), Acc(mn[1]), Acc(mn[2])});
    }
    writer.Write("server_dataset.csv", servers.Csv());
  }
  return outcome;
}

std::string RenderReport(const fs::path& out) {
  if (!fs::is_directory(out)) throw IoError("no output directory at " + out.string());
  std::ostringstream os;
  const char* tables[] = {"summary.csv", "trob_sweep.csv", "ablation.csv",
                          "server_dataset.csv", "ledger.csv"};
  bool any = false;
  for (const char* name : tables) {
    std::ifstream in(out / name);
    if (!in) continue;
    any = true;
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
      rows.push_back(std::move(cells));
    }
    std::vector<size_t> width;
    for (const auto& r : rows)
      for (size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    os << "== " << name << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i)
        os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << r[i];
      os << "\n";
    }
    os << "\n";
  }
  if (!any) throw IoError("no result tables in " + out.string());
  return os.str();
}

}  // namespace fedrobust::experiment
