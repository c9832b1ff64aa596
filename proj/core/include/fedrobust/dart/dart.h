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

#ifndef FEDROBUST_DART_DART_H_
#define FEDROBUST_DART_DART_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fedrobust/augmix/augmix.h"
#include "fedrobust/data/dataset.h"
#include "fedrobust/common/error.h"
#include "fedrobust/losses/losses.h"
#include "fedrobust/model/classifier.h"

namespace fedrobust::dart {

// Early stopping fires once `counter == patience - kPatienceOffset`, i.e.
// after patience - 1 consecutive epochs without a new validation minimum.
inline constexpr int kPatienceOffset = 1;

struct DartConfig {
  int max_epochs = 200;      // T_max
  int patience = 3;          // T_val
  double lr = 0.001;         // eta_DART
  int batch_size = 32;
  losses::LossWeights weights;
  double val_fraction = 0.2;
  uint64_t seed = 0;
  augmix::AugMixConfig augmix;

  void Validate() const;
};

struct DartReport {
  int epochs_run = 0;
  std::vector<double> train_loss;  // mean minibatch loss per epoch
  std::vector<double> val_loss;    // validation loss after each epoch
  int selected_epoch = 0;          // 1-based epoch whose weights were returned
  bool stopped_early = false;
  std::string diagnostic;          // set when training aborted

  std::string ToJson() const;
};

struct DartResult {
  model::ParameterVector weights;
  DartReport report;
};

// Raised when a DART loss turns non-finite; carries the partial report.
class DartDiverged : public NumericalError {
 public:
  DartDiverged(const std::string& what, DartReport report)
      : NumericalError(what), report_(std::move(report)) {}
  const DartReport& report() const { return report_; }

 private:
  DartReport report_;
};

// Replaces the validation pass; receives the 1-based epoch and the weights
// after that epoch's updates.
using ValidationOverride =
    std::function<double(int epoch, const model::ParameterVector& weights)>;

// Fine-tunes a student initialised at `pretrained` against the frozen
// `pretrained` teacher on the unlabeled proxy set, with early stopping on a
// held-out split of the proxy set. Returns the weights with the lowest
// validation loss (ties favour the later epoch).
DartResult DartTrain(const model::Classifier& pretrained,
                     const data::UnlabeledDataset& proxy, const DartConfig& cfg,
                     model::PassCounter* counter = nullptr,
                     const ValidationOverride& validation = {});

// Mean per-sample DART loss over `val` in batches of cfg.batch_size. Batch b
// of epoch e augments with the stream seeded by (cfg.seed, e, b).
double EvaluateDartValLoss(const model::Classifier& student,
                           const model::Classifier& teacher,
                           const data::UnlabeledDataset& val,
                           const DartConfig& cfg, int epoch);

// Seed of the augmentation stream for validation batch `batch` of `epoch`.
uint64_t ValidationBatchSeed(const DartConfig& cfg, int epoch, size_t batch);

}  // namespace fedrobust::dart

#endif  // FEDROBUST_DART_DART_H_
