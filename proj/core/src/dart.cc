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

#include "fedrobust/dart/dart.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fedrobust/common/rng.h"
#include "fedrobust/data/partition.h"
#include "nlohmann/json.hpp"

namespace fedrobust::dart {
namespace {

Matrix SelectRows(const Matrix& m, std::span<const size_t> rows) {
  Matrix out(rows.size(), m.cols);
  for (size_t i = 0; i < rows.size(); ++i)
    std::copy(m.row(rows[i]).begin(), m.row(rows[i]).end(), out.row(i).begin());
  return out;
}

double ValidationLoss(const model::Classifier& student,
                      const Matrix& teacher_val,
                      const data::UnlabeledDataset& val, const DartConfig& cfg,
                      int epoch, model::PassCounter* counter) {
  if (val.size() == 0) throw ConfigError("DART validation set is empty");
  double weighted = 0.0;
  const size_t bs = static_cast<size_t>(cfg.batch_size);
  std::vector<size_t> idx;
  for (size_t start = 0, b = 0; start < val.size(); start += bs, ++b) {
    const size_t end = std::min(val.size(), start + bs);
    idx.resize(end - start);
    std::iota(idx.begin(), idx.end(), start);
    Rng rng(ValidationBatchSeed(cfg, epoch, b));
    const auto views =
        losses::AugmentBatch(val.images.Batch(idx), cfg.augmix, rng);
    const Matrix s0 = student.PredictProba(views.clean, counter);
    const Matrix s1 = student.PredictProba(views.aug1, counter);
    const Matrix s2 = student.PredictProba(views.aug2, counter);
    const auto terms =
        losses::DartTerms(SelectRows(teacher_val, idx), s0, s1, s2, cfg.weights);
    weighted += terms.total * static_cast<double>(idx.size());
  }
  return weighted / static_cast<double>(val.size());
}

}  // namespace

void DartConfig::Validate() const {
  if (max_epochs < 1) throw ConfigError("DART max_epochs must be >= 1");
  if (patience < 1) throw ConfigError("DART patience must be >= 1");
  if (!(lr >= 0.0) || !std::isfinite(lr))
    throw ConfigError("DART learning rate must be finite and >= 0");
  if (batch_size < 1) throw ConfigError("DART batch_size must be >= 1");
  if (!(val_fraction > 0.0 && val_fraction < 1.0))
    throw ConfigError("DART val_fraction must lie in (0, 1)");
  weights.Validate();
  augmix.Validate();
}

std::string DartReport::ToJson() const {
  nlohmann::json j;
  j["epochs_run"] = epochs_run;
  j["train_loss"] = train_loss;
  j["val_loss"] = val_loss;
  j["selected_epoch"] = selected_epoch;
  j["stopped_early"] = stopped_early;
  if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
  return j.dump(2);
}

uint64_t ValidationBatchSeed(const DartConfig& cfg, int epoch, size_t batch) {
  return DeriveSeed(cfg.seed, Stream::kDartVal,
                    {static_cast<uint64_t>(epoch), static_cast<uint64_t>(batch)});
}

double EvaluateDartValLoss(const model::Classifier& student,
                           const model::Classifier& teacher,
                           const data::UnlabeledDataset& val,
                           const DartConfig& cfg, int epoch) {
  if (val.size() == 0) throw ConfigError("DART validation set is empty");
  const Matrix teacher_val = teacher.PredictProba(val.images.All());
  return ValidationLoss(student, teacher_val, val, cfg, epoch, nullptr);
}

DartResult DartTrain(const model::Classifier& pretrained,
                     const data::UnlabeledDataset& proxy, const DartConfig& cfg,
                     model::PassCounter* counter,
                     const ValidationOverride& validation) {
  cfg.Validate();
  proxy.Validate();
  if (!pretrained.params().AllFinite())
    throw NumericalError("DART input weights are not finite");
  const data::ProxySplit split =
      data::SplitProxy(proxy, cfg.val_fraction, cfg.seed);

  // The teacher never changes, so its clean-input outputs are computed once.
  const model::Classifier& teacher = pretrained;
  const Matrix teacher_train =
      teacher.PredictProba(split.train.images.All(), counter);
  Matrix teacher_val;
  if (!validation)
    teacher_val = teacher.PredictProba(split.validation.images.All(), counter);

  DartReport report;
  model::Classifier student = pretrained;
  model::ParameterVector best = student.params();
  double loss_min = std::numeric_limits<double>::infinity();
  int stall = 0;

  std::vector<size_t> order(split.train.size());
  const size_t bs = static_cast<size_t>(cfg.batch_size);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    Rng shuffle_rng = MakeRng(cfg.seed, Stream::kDartShuffle,
                              {static_cast<uint64_t>(epoch)});
    Shuffle(order.begin(), order.end(), shuffle_rng);

    double epoch_loss = 0.0;
    size_t batches = 0;
    try {
      for (size_t start = 0, b = 0; start < order.size(); start += bs, ++b) {
        const std::span<const size_t> idx(
            order.data() + start, std::min(bs, order.size() - start));
        Rng rng = MakeRng(cfg.seed, Stream::kDartTrain,
                          {static_cast<uint64_t>(epoch), static_cast<uint64_t>(b)});
        const auto views =
            losses::AugmentBatch(split.train.images.Batch(idx), cfg.augmix, rng);
        const std::array<ImageBatch, 3> inputs = {views.clean, views.aug1,
                                                  views.aug2};
        const auto g = model::Gradient(
            student, inputs,
            losses::DartObjective(SelectRows(teacher_train, idx), cfg.weights),
            counter);
        student = student.WithParams(model::SgdStep(student.params(), g.gradient, cfg.lr));
        epoch_loss += g.loss;
        ++batches;
      }
    } catch (const NumericalError& e) {
      report.diagnostic = std::string("epoch ") + std::to_string(epoch) + ": " + e.what();
      throw DartDiverged("DART diverged: " + report.diagnostic, report);
    }

    const double val =
        validation ? validation(epoch, student.params())
                   : ValidationLoss(student, teacher_val, split.validation, cfg,
                                    epoch, counter);
    report.epochs_run = epoch;
    report.train_loss.push_back(batches ? epoch_loss / batches : 0.0);
    report.val_loss.push_back(val);
    if (!std::isfinite(val)) {
      report.diagnostic = "non-finite validation loss at epoch " + std::to_string(epoch);
      throw DartDiverged("DART diverged: " + report.diagnostic, report);
    }

    if (val <= loss_min) {
      loss_min = val;
      best = student.params();
      report.selected_epoch = epoch;
      stall = 0;
    } else {
      ++stall;
    }
    if (stall == cfg.patience - kPatienceOffset) {
      report.stopped_early = epoch < cfg.max_epochs;
      break;
    }
  }
  return DartResult{std::move(best), std::move(report)};
}

}  // namespace fedrobust::dart
