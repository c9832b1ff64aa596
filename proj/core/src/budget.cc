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

#include "fedrobust/budget/budget.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>

#include "fedrobust/common/error.h"
#include "nlohmann/json.hpp"

namespace fedrobust::fed {

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kCleanFL: return "CleanFL";
    case Method::kRobustFL: return "RobustFL";
    case Method::kFedERL: return "FedERL";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "cleanfl") return Method::kCleanFL;
  if (lower == "robustfl") return Method::kRobustFL;
  if (lower == "federl") return Method::kFedERL;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

}  // namespace fedrobust::fed

namespace fedrobust::budget {
namespace {

// Caps are compared with this relative slack so that summing k equal charges
// never trips a cap that exactly k charges were planned to fit.
constexpr double kCapSlack = 1e-12;

bool WithinCap(double value, const std::optional<double>& cap) {
  return !cap || value <= *cap * (1.0 + kCapSlack);
}

nlohmann::json CostToJson(const Cost& c) {
  return {{"time_s", c.time_s}, {"energy_J", c.energy_j}};
}

Cost CostFromJson(const nlohmann::json& j) {
  for (const auto& [key, _] : j.items())
    if (key != "time_s" && key != "energy_J")
      throw ConfigError("unknown cost key '" + key + "'");
  return Cost{j.at("time_s").get<double>(), j.at("energy_J").get<double>()};
}

void RequirePositive(const Cost& c, const std::string& what) {
  if (!(c.time_s > 0.0) || !(c.energy_j > 0.0) || !std::isfinite(c.time_s) ||
      !std::isfinite(c.energy_j))
    throw ConfigError(what + " cost must be positive and finite");
}

}  // namespace

std::string_view ModeName(TrainingMode m) {
  return m == TrainingMode::kClean ? "clean" : "robust";
}

TrainingMode ParseMode(std::string_view name) {
  if (name == "clean") return TrainingMode::kClean;
  if (name == "robust") return TrainingMode::kRobust;
  throw ConfigError("unknown training mode '" + std::string(name) + "'");
}

TrainingMode ClientMode(fed::Method method) {
  return method == fed::Method::kRobustFL ? TrainingMode::kRobust
                                          : TrainingMode::kClean;
}

CostModel CostModel::FromRatios(const std::string& architecture, Cost clean,
                                double time_ratio, double energy_ratio) {
  CostModel m;
  m.per_architecture[architecture] =
      ModeCosts{clean, Cost{clean.time_s * time_ratio, clean.energy_j * energy_ratio}};
  return m;
}

void CostModel::Validate() const {
  if (per_architecture.empty()) throw ConfigError("cost model has no architectures");
  for (const auto& [arch, costs] : per_architecture) {
    RequirePositive(costs.clean, arch + " clean");
    RequirePositive(costs.robust, arch + " robust");
    if (!(costs.robust.time_s > costs.clean.time_s) ||
        !(costs.robust.energy_j > costs.clean.energy_j))
      throw ConfigError(arch + ": robust cost must exceed clean cost");
  }
  RequirePositive(server_dart_epoch, "server DART");
}

std::string CostModel::ToJson() const {
  nlohmann::json j;
  for (const auto& [arch, costs] : per_architecture)
    j["architectures"][arch] = {{"clean", CostToJson(costs.clean)},
                                {"robust", CostToJson(costs.robust)}};
  j["server_dart_epoch"] = CostToJson(server_dart_epoch);
  return j.dump(2);
}

CostModel CostModel::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cost model: ") + e.what());
  }
  CostModel m;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "architectures") {
        for (const auto& [arch, modes] : value.items()) {
          ModeCosts mc;
          for (const auto& [mode, cost] : modes.items()) {
            if (ParseMode(mode) == TrainingMode::kClean)
              mc.clean = CostFromJson(cost);
            else
              mc.robust = CostFromJson(cost);
          }
          m.per_architecture[arch] = mc;
        }
      } else if (key == "server_dart_epoch") {
        m.server_dart_epoch = CostFromJson(value);
      } else {
        throw ConfigError("unknown cost model key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("cost model: ") + e.what());
  }
  m.Validate();
  return m;
}

Cost EpochCost(const CostModel& model, std::string_view architecture,
               TrainingMode mode) {
  auto it = model.per_architecture.find(std::string(architecture));
  if (it == model.per_architecture.end())
    throw ConfigError("no cost entry for architecture '" +
                      std::string(architecture) + "'");
  return mode == TrainingMode::kClean ? it->second.clean : it->second.robust;
}

BudgetLedger::BudgetLedger(int num_clients, std::optional<double> time_cap,
                           std::optional<double> energy_cap)
    : spent_(static_cast<size_t>(std::max(0, num_clients))),
      time_cap_(time_cap),
      energy_cap_(energy_cap) {
  if (num_clients < 1) throw ConfigError("ledger needs at least one client");
}

Cost BudgetLedger::MaxSpent() const {
  Cost m;
  for (const auto& c : spent_) {
    m.time_s = std::max(m.time_s, c.time_s);
    m.energy_j = std::max(m.energy_j, c.energy_j);
  }
  return m;
}

bool BudgetLedger::CanCharge(const Cost& per_client) const {
  for (const auto& c : spent_) {
    if (!WithinCap(c.time_s + per_client.time_s, time_cap_) ||
        !WithinCap(c.energy_j + per_client.energy_j, energy_cap_))
      return false;
  }
  return true;
}

void BudgetLedger::Charge(const Cost& per_client) {
  if (per_client.time_s < 0.0 || per_client.energy_j < 0.0)
    throw ConfigError("negative charge");
  if (!CanCharge(per_client)) throw BudgetExhausted("client budget exhausted");
  for (auto& c : spent_) c += per_client;
}

void BudgetLedger::ChargeClient(int k, const Cost& cost) {
  if (cost.time_s < 0.0 || cost.energy_j < 0.0) throw ConfigError("negative charge");
  Cost& c = spent_.at(k);
  if (!WithinCap(c.time_s + cost.time_s, time_cap_) ||
      !WithinCap(c.energy_j + cost.energy_j, energy_cap_))
    throw BudgetExhausted("client " + std::to_string(k) + " budget exhausted");
  c += cost;
}

Cost RoundCost(fed::Method method, int local_epochs, const CostModel& model,
               std::string_view architecture) {
  const Cost e = EpochCost(model, architecture, ClientMode(method));
  return Cost{local_epochs * e.time_s, local_epochs * e.energy_j};
}

BudgetLedger ChargeRound(const BudgetLedger& ledger, fed::Method method,
                         int local_epochs, const CostModel& model,
                         std::string_view architecture) {
  BudgetLedger out = ledger;
  out.Charge(RoundCost(method, local_epochs, model, architecture));
  return out;
}

int RoundsWithinBudget(BudgetKind kind, double budget, fed::Method method,
                       int local_epochs, const CostModel& model,
                       std::string_view architecture) {
  if (!(budget > 0.0) || !std::isfinite(budget))
    throw ConfigError("budget must be positive and finite");
  if (local_epochs < 1) throw ConfigError("local_epochs must be >= 1");
  const Cost round = RoundCost(method, local_epochs, model, architecture);
  const double per_round = kind == BudgetKind::kTime ? round.time_s : round.energy_j;
  auto n = static_cast<long long>(std::floor(budget / per_round));
  while (static_cast<double>(n + 1) * per_round <= budget) ++n;
  while (n > 0 && static_cast<double>(n) * per_round > budget) --n;
  if (n == 0)
    std::cerr << "warning: budget " << budget << " is below the cost of one "
              << fed::MethodName(method) << " round (" << per_round << ")\n";
  return static_cast<int>(n);
}

}  // namespace fedrobust::budget
