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

#ifndef FEDROBUST_BUDGET_BUDGET_H_
#define FEDROBUST_BUDGET_BUDGET_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedrobust/fed/method.h"

namespace fedrobust::budget {

enum class TrainingMode { kClean, kRobust };

std::string_view ModeName(TrainingMode m);
// Throws ConfigError for anything but "clean" / "robust".
TrainingMode ParseMode(std::string_view name);

// CleanFL and FedERL clients train clean; RobustFL clients train robust.
TrainingMode ClientMode(fed::Method method);

struct Cost {
  double time_s = 0.0;
  double energy_j = 0.0;

  Cost& operator+=(const Cost& o) {
    time_s += o.time_s;
    energy_j += o.energy_j;
    return *this;
  }
  bool operator==(const Cost&) const = default;
};

struct ModeCosts {
  Cost clean;
  Cost robust;
};

// Robust/clean per-epoch cost ratios measured for AugMix-style training.
inline constexpr double kDefaultRobustTimeRatio = 3.4;
inline constexpr double kDefaultRobustEnergyRatio = 3.2;

// Per-epoch client training cost by architecture and mode, plus the server's
// per-epoch DART cost (kept out of client budgets).
struct CostModel {
  std::map<std::string, ModeCosts> per_architecture;
  Cost server_dart_epoch{1.0, 1.0};

  // Clean cost `clean`, robust cost scaled by the given ratios.
  static CostModel FromRatios(const std::string& architecture, Cost clean,
                              double time_ratio = kDefaultRobustTimeRatio,
                              double energy_ratio = kDefaultRobustEnergyRatio);

  // Throws ConfigError unless every cost is positive and robust > clean.
  void Validate() const;

  std::string ToJson() const;
  static CostModel FromJson(std::string_view text);
};

// Table lookup. Throws ConfigError for an unknown architecture.
Cost EpochCost(const CostModel& model, std::string_view architecture,
               TrainingMode mode);

// Cumulative per-client spend with optional caps.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(int num_clients, std::optional<double> time_cap = std::nullopt,
               std::optional<double> energy_cap = std::nullopt);

  int num_clients() const { return static_cast<int>(spent_.size()); }
  const Cost& client(int k) const { return spent_.at(k); }
  // Largest spend over clients (all clients spend equally in IID runs).
  Cost MaxSpent() const;
  std::optional<double> time_cap() const { return time_cap_; }
  std::optional<double> energy_cap() const { return energy_cap_; }

  // True when adding `per_client` to every client stays within the caps.
  bool CanCharge(const Cost& per_client) const;
  // Adds `per_client` to every client. Throws BudgetExhausted (leaving the
  // ledger unchanged) when a cap would be exceeded.
  void Charge(const Cost& per_client);
  void ChargeClient(int k, const Cost& cost);

  bool operator==(const BudgetLedger&) const = default;

 private:
  std::vector<Cost> spent_;
  std::optional<double> time_cap_;
  std::optional<double> energy_cap_;
};

// Cost one client incurs for one global round: local_epochs x epoch cost of
// the method's client mode.
Cost RoundCost(fed::Method method, int local_epochs, const CostModel& model,
               std::string_view architecture);

// Returns a copy of `ledger` charged with one round for every client.
BudgetLedger ChargeRound(const BudgetLedger& ledger, fed::Method method,
                         int local_epochs, const CostModel& model,
                         std::string_view architecture);

enum class BudgetKind { kTime, kEnergy };

// Largest T_g with T_g * (local_epochs * epoch cost) <= budget. Returns 0
// (and warns on stderr) when one round already exceeds the budget.
int RoundsWithinBudget(BudgetKind kind, double budget, fed::Method method,
                       int local_epochs, const CostModel& model,
                       std::string_view architecture);

}  // namespace fedrobust::budget

#endif  // FEDROBUST_BUDGET_BUDGET_H_
