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


#include "fedrobust/experiment/config.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "fedrobust/common/error.h"
#include "fedrobust/model/network.h"
#include "nlohmann/json.hpp"

namespace fedrobust::experiment {
namespace {

using nlohmann::json;

void CheckKeys(const json& j, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok)
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  }
}

std::filesystem::path ResolveData(const std::string& p,
                                  const std::filesystem::path& base_dir) {
  std::filesystem::path path(p);
  if (path.is_absolute()) return path;
  if (const char* root = std::getenv(kDataRootEnv); root && *root)
    return std::filesystem::path(root) / path;
  return base_dir / path;
}

void ParseAugMix(const json& j, augmix::AugMixConfig& a, std::string_view where) {
  CheckKeys(j, where, {"width", "max_depth", "concentration", "severity", "ops"});
  Read(j, "width", a.width, where);
  Read(j, "max_depth", a.max_depth, where);
  Read(j, "concentration", a.concentration, where);
  Read(j, "severity", a.severity, where);
  if (j.contains("ops")) {
    std::vector<std::string> names;
    Read(j, "ops", names, where);
    a.ops.clear();
    for (const auto& n : names) a.ops.push_back(augmix::ParseOp(n));
  }
}

json AugMixJson(const augmix::AugMixConfig& a) {
  std::vector<std::string> ops;
  for (auto op : a.ops) ops.emplace_back(augmix::OpName(op));
  return {{"width", a.width},
          {"max_depth", a.max_depth},
          {"concentration", a.concentration},
          {"severity", a.severity},
          {"ops", ops}};
}

void ParseData(const json& j, ExperimentConfig& cfg,
               const std::filesystem::path& base_dir) {
  CheckKeys(j, "data", {"train", "test", "proxies", "suite"});
  std::string s;
  if (!j.contains("train") || !j.contains("test"))
    throw ConfigError("data.train and data.test are required");
  Read(j, "train", s, "data");
  cfg.train = ResolveData(s, base_dir);
  Read(j, "test", s, "data");
  cfg.test = ResolveData(s, base_dir);
  if (j.contains("proxies")) {
    if (!j["proxies"].is_array()) throw ConfigError("data.proxies must be a list");
    for (const auto& p : j["proxies"]) {
      CheckKeys(p, "data.proxies[]", {"name", "path"});
      ProxyEntry e;
      Read(p, "name", e.name, "data.proxies[]");
      Read(p, "path", s, "data.proxies[]");
      if (e.name.empty() || s.empty())
        throw ConfigError("every proxy needs a name and a path");
      e.path = ResolveData(s, base_dir);
      cfg.proxies.push_back(std::move(e));
    }
  }
  if (j.contains("suite")) {
    const json& su = j["suite"];
    CheckKeys(su, "data.suite", {"filters", "severities", "seed", "cache"});
    if (su.contains("filters")) {
      std::vector<std::string> names;
      Read(su, "filters", names, "data.suite");
      cfg.suite.filters.clear();
      for (const auto& n : names) cfg.suite.filters.push_back(data::ParseFilter(n));
    }
    Read(su, "severities", cfg.suite.severities, "data.suite");
    Read(su, "seed", cfg.suite.seed, "data.suite");
    if (su.contains("cache")) {
      Read(su, "cache", s, "data.suite");
      cfg.suite.cache = ResolveData(s, base_dir);
    }
  }
}

void ParseFed(const json& j, ExperimentConfig& cfg) {
  CheckKeys(j, "fed",
            {"clients", "global_rounds", "local_epochs", "robust_period",
             "client_lr", "batch_size", "one_shot", "robust_alpha", "mode",
             "eval_every", "parallel"});
  auto& f = cfg.fed;
  Read(j, "clients", f.clients, "fed");
  Read(j, "global_rounds", f.global_rounds, "fed");
  Read(j, "local_epochs", f.local_epochs, "fed");
  Read(j, "robust_period", f.robust_period, "fed");
  Read(j, "client_lr", f.client_lr, "fed");
  Read(j, "batch_size", f.batch_size, "fed");
  Read(j, "one_shot", f.one_shot, "fed");
  Read(j, "robust_alpha", f.robust_alpha, "fed");
  Read(j, "eval_every", cfg.eval_every, "fed");
  Read(j, "parallel", cfg.parallel_clients, "fed");
  if (j.contains("mode")) {
    std::string mode;
    Read(j, "mode", mode, "fed");
    if (mode == "protocol")
      f.mode = fed::EvalMode::kProtocol;
    else if (mode == "curve")
      f.mode = fed::EvalMode::kCurve;
    else
      throw ConfigError("fed.mode must be 'protocol' or 'curve', got '" + mode + "'");
  }
}

void ParseDart(const json& j, ExperimentConfig& cfg, bool& has_augmix) {
  CheckKeys(j, "dart",
            {"max_epochs", "patience", "lr", "batch_size", "alpha",
             "distillation", "val_fraction", "augmix"});
  auto& d = cfg.dart;
  Read(j, "max_epochs", d.max_epochs, "dart");
  Read(j, "patience", d.patience, "dart");
  Read(j, "lr", d.lr, "dart");
  Read(j, "batch_size", d.batch_size, "dart");
  Read(j, "alpha", d.weights.alpha, "dart");
  Read(j, "distillation", d.weights.distillation, "dart");
  Read(j, "val_fraction", d.val_fraction, "dart");
  has_augmix = j.contains("augmix");
  if (has_augmix) ParseAugMix(j["augmix"], d.augmix, "dart.augmix");
}

void ParseBudget(const json& j, ExperimentConfig& cfg) {
  CheckKeys(j, "budget", {"time_cap", "energy_cap", "time_grid", "energy_grid"});
  if (j.contains("time_cap")) {
    double v = 0;
    Read(j, "time_cap", v, "budget");
    cfg.time_cap = v;
  }
  if (j.contains("energy_cap")) {
    double v = 0;
    Read(j, "energy_cap", v, "budget");
    cfg.energy_cap = v;
  }
  Read(j, "time_grid", cfg.time_budgets, "budget");
  Read(j, "energy_grid", cfg.energy_budgets, "budget");
}

void ParseSweeps(const json& j, ExperimentConfig& cfg) {
  CheckKeys(j, "sweeps", {"trob", "ablation", "server_datasets"});
  Read(j, "trob", cfg.trob_sweep, "sweeps");
  Read(j, "ablation", cfg.ablation, "sweeps");
  Read(j, "server_datasets", cfg.server_datasets, "sweeps");
}

void RequirePath(const std::filesystem::path& p, const std::string& what) {
  if (!std::filesystem::exists(p))
    throw ConfigError(what + " not found: " + p.string());
}

}  // namespace

void ExperimentConfig::Validate() const {
  fed.Validate();
  dart.Validate();
  augmix.Validate();
  EffectiveCost().Validate();
  if (methods.empty()) throw ConfigError("methods must not be empty");
  if (std::set<fed::Method>(methods.begin(), methods.end()).size() != methods.size())
    throw ConfigError("methods contains duplicates");
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
    throw ConfigError("seeds contains duplicates");
  if (eval_every < 0) throw ConfigError("fed.eval_every must be >= 0");
  if (suite.filters.empty()) throw ConfigError("data.suite.filters must not be empty");
  if (suite.severities.empty())
    throw ConfigError("data.suite.severities must not be empty");
  for (auto f : suite.filters)
    for (int s : suite.severities) data::ValidateSpec({f, s});
  augmix::CheckDisjointFromCorruptions(augmix.ops);
  augmix::CheckDisjointFromCorruptions(dart.augmix.ops);
  auto positive = [](std::optional<double> v) { return !v || (*v > 0 && std::isfinite(*v)); };
  if (!positive(time_cap) || !positive(energy_cap))
    throw ConfigError("budget caps must be positive");
  for (double b : time_budgets)
    if (!(b > 0) || !std::isfinite(b)) throw ConfigError("budget.time_grid entries must be positive");
  for (double b : energy_budgets)
    if (!(b > 0) || !std::isfinite(b)) throw ConfigError("budget.energy_grid entries must be positive");
  for (int t : trob_sweep)
    if (t < 0) throw ConfigError("sweeps.trob entries must be >= 0 (0 means one-shot)");

  const bool fed_erl =
      std::find(methods.begin(), methods.end(), fed::Method::kFedERL) != methods.end();
  if ((fed_erl || ablation || !trob_sweep.empty()) && proxies.empty())
    throw ConfigError("FedERL, ablation and T_rob sweeps need data.proxies");
  if (server_datasets && proxies.size() < 2)
    throw ConfigError("sweeps.server_datasets needs at least two proxies");
  std::set<std::string> names;
  for (const auto& p : proxies)
    if (!names.insert(p.name).second)
      throw ConfigError("duplicate proxy name '" + p.name + "'");

  RequirePath(train, "training set");
  RequirePath(test, "test set");
  for (const auto& p : proxies) RequirePath(p.path, "proxy '" + p.name + "'");
}

budget::CostModel ExperimentConfig::EffectiveCost() const {
  if (cost) return *cost;
  return budget::CostModel::FromRatios(architecture, {1.0, 1.0});
}

ExperimentConfig ParseConfig(std::string_view json_text,
                             const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(j, "config",
            {"data", "model", "fed", "dart", "augmix", "cost", "methods", "seeds",
             "budget", "sweeps", "output"});
  ExperimentConfig cfg;
  cfg.suite.filters = data::DefaultFilters();
  if (!j.contains("data")) throw ConfigError("config needs a data section");
  ParseData(j["data"], cfg, base_dir);
  if (j.contains("model")) {
    CheckKeys(j["model"], "model", {"architecture"});
    Read(j["model"], "architecture", cfg.architecture, "model");
  }
  if (j.contains("fed")) ParseFed(j["fed"], cfg);
  if (j.contains("augmix")) ParseAugMix(j["augmix"], cfg.augmix, "augmix");
  bool dart_augmix = false;
  if (j.contains("dart")) ParseDart(j["dart"], cfg, dart_augmix);
  if (!dart_augmix) cfg.dart.augmix = cfg.augmix;
  if (j.contains("cost")) cfg.cost = budget::CostModel::FromJson(j["cost"].dump());
  if (j.contains("methods")) {
    std::vector<std::string> names;
    Read(j, "methods", names, "config");
    cfg.methods.clear();
    for (const auto& n : names) cfg.methods.push_back(fed::ParseMethod(n));
  }
  Read(j, "seeds", cfg.seeds, "config");
  if (j.contains("budget")) ParseBudget(j["budget"], cfg);
  if (j.contains("sweeps")) ParseSweeps(j["sweeps"], cfg);
  if (j.contains("output")) {
    std::string out;
    Read(j, "output", out, "config");
    cfg.output = out;
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), path.parent_path());
}

std::string ToJson(const ExperimentConfig& cfg) {
  json j;
  json proxies = json::array();
  for (const auto& p : cfg.proxies)
    proxies.push_back({{"name", p.name}, {"path", p.path.string()}});
  std::vector<std::string> filters;
  for (auto f : cfg.suite.filters) filters.emplace_back(data::FilterName(f));
  j["data"] = {{"train", cfg.train.string()},
               {"test", cfg.test.string()},
               {"proxies", proxies},
               {"suite",
                {{"filters", filters},
                 {"severities", cfg.suite.severities},
                 {"seed", cfg.suite.seed}}}};
  if (!cfg.suite.cache.empty()) j["data"]["suite"]["cache"] = cfg.suite.cache.string();
  j["model"] = {{"architecture", cfg.architecture}};
  const auto& f = cfg.fed;
  j["fed"] = {{"clients", f.clients},
              {"global_rounds", f.global_rounds},
              {"local_epochs", f.local_epochs},
              {"robust_period", f.robust_period},
              {"client_lr", f.client_lr},
              {"batch_size", f.batch_size},
              {"one_shot", f.one_shot},
              {"robust_alpha", f.robust_alpha},
              {"mode", f.mode == fed::EvalMode::kCurve ? "curve" : "protocol"},
              {"eval_every", cfg.eval_every},
              {"parallel", cfg.parallel_clients}};
  const auto& d = cfg.dart;
  j["dart"] = {{"max_epochs", d.max_epochs},
               {"patience", d.patience},
               {"lr", d.lr},
               {"batch_size", d.batch_size},
               {"alpha", d.weights.alpha},
               {"distillation", d.weights.distillation},
               {"val_fraction", d.val_fraction},
               {"augmix", AugMixJson(d.augmix)}};
  j["augmix"] = AugMixJson(cfg.augmix);
  j["cost"] = json::parse(cfg.EffectiveCost().ToJson());
  std::vector<std::string> methods;
  for (auto m : cfg.methods) methods.emplace_back(fed::MethodName(m));
  j["methods"] = methods;
  j["seeds"] = cfg.seeds;
  json budget = {{"time_grid", cfg.time_budgets}, {"energy_grid", cfg.energy_budgets}};
  if (cfg.time_cap) budget["time_cap"] = *cfg.time_cap;
  if (cfg.energy_cap) budget["energy_cap"] = *cfg.energy_cap;
  j["budget"] = budget;
  j["sweeps"] = {{"trob", cfg.trob_sweep},
                 {"ablation", cfg.ablation},
                 {"server_datasets", cfg.server_datasets}};
  if (!cfg.output.empty()) j["output"] = cfg.output.string();
  return j.dump(2) + "\n";
}

}  // namespace fedrobust::experiment
