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


#include "fedrobust/experiment/cli.h"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedrobust/common/error.h"
#include "fedrobust/data/dataset_io.h"
#include "fedrobust/data/synthetic.h"
#include "fedrobust/experiment/config.h"
#include "fedrobust/experiment/runner.h"
#include "fedrobust/fed/method.h"

namespace fedrobust::experiment {
namespace {

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<uint64_t> seed;
  std::string method;
  bool one_shot = false;
  std::optional<int> trob;
  std::optional<double> budget_time;
  std::optional<double> budget_energy;
  bool quiet = false;
};

struct CorruptArgs {
  std::string dataset;
  std::string out;
  std::vector<std::string> filters;
  std::vector<int> severities{1, 3, 5};
  uint64_t seed = 0;
};

struct SynthArgs {
  std::string kind;
  std::string out;
  size_t count = 0;
  int size = 16;
  uint64_t seed = 0;
  bool unlabeled = false;
};

int CmdRun(const RunArgs& a) {
  ExperimentConfig cfg = LoadConfig(a.config);
  if (a.seed) cfg.seeds = {*a.seed};
  if (!a.method.empty()) cfg.methods = {fed::ParseMethod(a.method)};
  if (a.one_shot) cfg.fed.one_shot = true;
  if (a.trob) cfg.fed.robust_period = *a.trob;
  if (a.budget_time) cfg.time_cap = *a.budget_time;
  if (a.budget_energy) cfg.energy_cap = *a.budget_energy;
  if (!a.out.empty()) cfg.output = a.out;
  cfg.Validate();
  std::ostream* log = a.quiet ? nullptr : &std::cerr;
  const ExperimentData data = LoadExperimentData(cfg, log);
  const RunOutcome outcome = RunExperiments(cfg, data, cfg.output, log);
  if (log)
    *log << "wrote " << outcome.files.size() << " artifacts to " << cfg.output.string()
         << std::endl;
  if (outcome.budget_exhausted) {
    std::cerr << "error: budget exhausted before the configured number of rounds"
              << std::endl;
    return kExitBudget;
  }
  return kExitOk;
}

int CmdCorrupt(const CorruptArgs& a) {
  const data::LabeledDataset base = data::ReadLabeledDataset(a.dataset);
  std::vector<data::Filter> filters;
  if (a.filters.empty()) {
    filters = data::DefaultFilters();
  } else {
    for (const auto& f : a.filters) filters.push_back(data::ParseFilter(f));
  }
  const auto specs = data::CrossSpecs(filters, a.severities);
  const auto stats = data::WriteCorruptionSuite(a.out, base, specs, a.seed);
  std::cout << "suite " << data::SuiteDirectory(a.out, base.images.name).string() << ": "
            << stats.written << " written, " << stats.reused << " reused" << std::endl;
  return kExitOk;
}

int CmdReport(const std::string& out) {
  std::cout << RenderReport(out);
  return kExitOk;
}

int CmdSynth(const SynthArgs& a) {
  const auto kind = data::ParseSyntheticKind(a.kind);
  const data::LabeledDataset ds = data::GenerateSynthetic(kind, a.count, a.size, a.seed);
  if (a.unlabeled)
    data::WriteDataset(a.out, data::DropLabels(ds));
  else
    data::WriteDataset(a.out, ds);
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv) {
  CLI::App app{"Federated learning simulator with server-side robust training"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run the experiments described by a config");
  run_cmd->add_option("--config", run.config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", run.out, "Output directory (overrides the config)");
  run_cmd->add_option("--seed", run.seed, "Run a single seed");
  run_cmd->add_option("--method", run.method, "Run a single method");
  run_cmd->add_flag("--one-shot", run.one_shot, "FedERL applies DART only after the last round");
  run_cmd->add_option("--trob", run.trob, "Robustification period T_rob");
  run_cmd->add_option("--budget-time", run.budget_time, "Per-client time cap (s)");
  run_cmd->add_option("--budget-energy", run.budget_energy, "Per-client energy cap (J)");
  run_cmd->add_flag("--quiet", run.quiet, "No progress output");

  CorruptArgs corrupt;
  auto* corrupt_cmd = app.add_subcommand("corrupt", "Materialise a corruption suite");
  corrupt_cmd->add_option("--dataset", corrupt.dataset, "Labeled dataset directory")
      ->required();
  corrupt_cmd->add_option("--out", corrupt.out, "Suite root directory")->required();
  corrupt_cmd->add_option("--filters", corrupt.filters, "Filters (default: all)")
      ->delimiter(',');
  corrupt_cmd->add_option("--severities", corrupt.severities, "Severities")
      ->delimiter(',');
  corrupt_cmd->add_option("--seed", corrupt.seed, "Corruption seed");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Print the tables of a finished run");
  report_cmd->add_option("--out", report_dir, "Output directory of a run")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--kind", synth.kind, "digits, letters or shapes")->required();
  synth_cmd->add_option("--count", synth.count, "Number of images")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--size", synth.size, "Image side length");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_flag("--unlabeled", synth.unlabeled, "Write images only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return CmdRun(run);
    if (*corrupt_cmd) return CmdCorrupt(corrupt);
    if (*report_cmd) return CmdReport(report_dir);
    if (*synth_cmd) return CmdSynth(synth);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << std::endl;
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace fedrobust::experiment
