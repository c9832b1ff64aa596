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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fedrobust/common/error.h"
#include "fedrobust/common/rng.h"
#include "fedrobust/data/dataset_io.h"
#include "fedrobust/data/partition.h"
#include "fedrobust/data/synthetic.h"
#include "fedrobust/fed/engine.h"
#include "fedrobust/model/checkpoint.h"
#include "test_support.h"

namespace fedrobust::experiment {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class RunnerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(testing::TempDir("runner"));
    using data::SyntheticKind;
    data::WriteDataset(*dir_ / "train", data::GenerateSynthetic(SyntheticKind::kDigits, 60, 8, 1));
    data::WriteDataset(*dir_ / "test", data::GenerateSynthetic(SyntheticKind::kDigits, 20, 8, 2));
    data::WriteDataset(*dir_ / "letters",
                       data::DropLabels(data::GenerateSynthetic(SyntheticKind::kLetters, 24, 8, 3)));
    data::WriteDataset(*dir_ / "shapes",
                       data::DropLabels(data::GenerateSynthetic(SyntheticKind::kShapes, 24, 8, 4)));
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }

  static ExperimentConfig Config() {
    auto cfg = ParseConfig(R"({
      "data": {"train": "train", "test": "test",
               "proxies": [{"name": "letters", "path": "letters"},
                           {"name": "shapes", "path": "shapes"}],
               "suite": {"filters": ["gaussian_noise", "gaussian_blur", "contrast"],
                         "severities": [1, 5], "seed": 5}},
      "model": {"architecture": "tiny_cnn"},
      "fed": {"clients": 3, "global_rounds": 4, "robust_period": 2, "client_lr": 0.1,
              "batch_size": 8, "eval_every": 2},
      "dart": {"max_epochs": 2, "patience": 3, "lr": 0.05, "batch_size": 8},
      "seeds": [0, 1],
      "budget": {"time_grid": [3]},
      "sweeps": {"trob": [0, 2], "ablation": true, "server_datasets": true}})",
                           *dir_);
    return cfg;
  }

  static fs::path* dir_;
};

fs::path* RunnerTest::dir_ = nullptr;

TEST_F(RunnerTest, RoundsMatchAnIndependentlyAssembledFederation) {
  const auto cfg = Config();
  const auto data = LoadExperimentData(cfg);
  const auto out = *dir_ / "out_match";
  RunExperiments(cfg, data, out);

  for (uint64_t seed : cfg.seeds) {
    fed::Federation f;
    f.network = std::make_shared<model::Network>(
        model::MakeArchitecture("tiny_cnn", data.train.images.shape, data.train.num_classes));
    f.client_data = data::PartitionClients(data.train, 3, DeriveSeed(seed, Stream::kPartition));
    f.proxy = &data.proxies[0];
    f.dart = cfg.dart;
    f.augmix = cfg.augmix;
    f.cost = cfg.EffectiveCost();
    const auto init = f.network->InitParameters(DeriveSeed(seed, Stream::kInit));
    for (auto m : cfg.methods) {
      fed::FedConfig fc = cfg.fed;
      fc.seed = seed;
      fc.method = m;
      const auto r = fed::RunExperiment(f, fc, fed::EvalPlan{&data.test, &data.suite, 2, {}}, init);
      const std::string name = "rounds_" + std::string(fed::MethodName(m)) + "_seed" +
                               std::to_string(seed) + ".csv";
      EXPECT_EQ(Slurp(out / name), fed::RoundRecordsCsv(r.records)) << name;
    }
  }
}

TEST_F(RunnerTest, WritesTheExpectedArtifactsDeterministically) {
  const auto cfg = Config();
  const auto data = LoadExperimentData(cfg);
  const auto a = RunExperiments(cfg, data, *dir_ / "out_a");
  const auto b = RunExperiments(cfg, data, *dir_ / "out_b");
  EXPECT_EQ(a.files, b.files);
  EXPECT_FALSE(a.budget_exhausted);
  for (const char* f : {"config.json", "ledger.csv", "summary.csv", "trob_sweep.csv",
                        "ablation.csv", "server_dataset.csv", "rounds_FedERL_seed1.csv",
                        "breakdown_RobustFL_seed0.csv", "dart_reports_FedERL_seed0.json"})
    EXPECT_NE(std::find(a.files.begin(), a.files.end(), f), a.files.end()) << f;
  for (const auto& entry : fs::recursive_directory_iterator(*dir_ / "out_a")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), *dir_ / "out_a");
    EXPECT_EQ(Slurp(entry.path()), Slurp(*dir_ / "out_b" / rel)) << rel;
  }
  const auto ckpt = model::LoadCheckpoint(*dir_ / "out_a" / "checkpoints" / "CleanFL_seed0");
  EXPECT_EQ(ckpt.network().architecture().name, "tiny_cnn");
}

// Rows of a CSV file as cells, header included.
std::vector<std::vector<std::string>> Rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(RunnerTest, TablesHaveTheExpectedShape) {
  const auto cfg = Config();
  const auto out = *dir_ / "out_tables";
  RunExperiments(cfg, LoadExperimentData(cfg), out);

  const auto ledger = Rows(out / "ledger.csv");
  ASSERT_EQ(ledger.size(), 1u + 3 * 2);
  std::map<std::string, std::vector<std::string>> by_method;
  for (const auto& r : ledger) if (r[1] == "0") by_method[r[0]] = r;
  // FedERL clients spend and compute exactly what CleanFL clients do.
  for (size_t col : {3u, 4u, 8u, 9u})
    EXPECT_EQ(by_method["FedERL"][col], by_method["CleanFL"][col]) << ledger[0][col];
  EXPECT_EQ(by_method["FedERL"][7], "2");
  EXPECT_EQ(by_method["CleanFL"][7], "0");
  EXPECT_EQ(std::stoull(by_method["RobustFL"][8]), 3 * std::stoull(by_method["CleanFL"][8]));

  const auto trob = Rows(out / "trob_sweep.csv");
  ASSERT_EQ(trob.size(), 1u + 2 * 2 + 2);
  EXPECT_EQ(trob[1][0], "one_shot");
  EXPECT_EQ(trob[1][2], "1");
  EXPECT_EQ(trob[2][0], "2");
  EXPECT_EQ(trob[2][2], "2");
  EXPECT_EQ(trob[1][4], trob[2][4]);  // identical client time
  EXPECT_EQ(trob.back()[1], "mean");

  const auto ablation = Rows(out / "ablation.csv");
  ASSERT_EQ(ablation.size(), 1u + 4 * 2 + 4);
  EXPECT_EQ(ablation[1][0], "clean_training");
  EXPECT_EQ(ablation[4][0], "full_dart");

  const auto summary = Rows(out / "summary.csv");
  ASSERT_EQ(summary.size(), 1u + 3 * 2 + 3);
  // With unit clean cost a budget of 3 buys 3 clean rounds and no robust one.
  for (const auto& r : summary) {
    if (r[2] == "RobustFL") EXPECT_EQ(r[4], r[3] == "mean" ? "0.000" : "0");
    if (r[2] == "CleanFL") EXPECT_EQ(r[4], r[3] == "mean" ? "3.000" : "3");
  }
  EXPECT_EQ(Rows(out / "server_dataset.csv").size(), 1u + 2 * 2 + 2);

  const std::string report = RenderReport(out);
  EXPECT_NE(report.find("== ledger.csv"), std::string::npos);
  EXPECT_NE(report.find("full_dart"), std::string::npos);
}

TEST_F(RunnerTest, HardCapStopsRunsAndIsReported) {
  auto cfg = Config();
  cfg.time_cap = 2.5;
  cfg.trob_sweep.clear();
  cfg.ablation = cfg.server_datasets = false;
  cfg.time_budgets.clear();
  const auto out = *dir_ / "out_cap";
  const auto outcome = RunExperiments(cfg, LoadExperimentData(cfg), out);
  EXPECT_TRUE(outcome.budget_exhausted);
  const auto rounds = Rows(out / "rounds_CleanFL_seed0.csv");
  EXPECT_EQ(rounds.back()[0], "2");
  EXPECT_EQ(Rows(out / "rounds_RobustFL_seed0.csv").back()[0], "0");
}

TEST_F(RunnerTest, SuiteCacheIsWrittenAndReused) {
  auto cfg = Config();
  cfg.suite.cache = *dir_ / "cache";
  std::ostringstream log1, log2;
  const auto d1 = LoadExperimentData(cfg, &log1);
  const auto d2 = LoadExperimentData(cfg, &log2);
  EXPECT_NE(log1.str().find("6 written"), std::string::npos) << log1.str();
  EXPECT_NE(log2.str().find("6 reused"), std::string::npos) << log2.str();
  ASSERT_EQ(d1.suite.entries.size(), 6u);
  const auto direct = LoadExperimentData(Config());
  for (size_t i = 0; i < 6; ++i)
    EXPECT_EQ(d2.suite.entries[i].data.images.pixels, direct.suite.entries[i].data.images.pixels);
}

TEST_F(RunnerTest, DataErrors) {
  auto cfg = Config();
  data::WriteDataset(*dir_ / "big", data::DropLabels(data::GenerateSynthetic(
                                        data::SyntheticKind::kShapes, 4, 12, 1)));
  cfg.proxies[1].path = *dir_ / "big";
  EXPECT_THROW(LoadExperimentData(cfg), ConfigError);
  cfg = Config();
  cfg.test = *dir_ / "letters";  // unlabeled
  EXPECT_ANY_THROW(LoadExperimentData(cfg));
  EXPECT_THROW(RenderReport(*dir_ / "nowhere"), IoError);
  fs::create_directories(*dir_ / "empty_out");
  EXPECT_THROW(RenderReport(*dir_ / "empty_out"), IoError);
}

}  // namespace
}  // namespace fedrobust::experiment
