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

#include "fedrobust/losses/losses.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "fedrobust/common/error.h"

namespace fedrobust::losses {
namespace {

double FlooredLog(double p) { return std::log(std::max(p, kProbFloor)); }

void RequireSameLength(size_t a, size_t b) {
  if (a != b) throw ConfigError("distribution length mismatch");
}

double Sum3(double a, double b, double c) {
  // Sorted so that the result does not depend on argument order.
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return (a + b) + c;
}

void CheckRows(const Matrix& m, size_t rows, size_t cols) {
  if (m.rows != rows || m.cols != cols)
    throw ConfigError("probability matrices differ in shape");
}

}  // namespace

void LossWeights::Validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ConfigError("alpha must be finite and >= 0");
  if (!(distillation >= 0.0) || !std::isfinite(distillation))
    throw ConfigError("distillation weight must be finite and >= 0");
}

double CrossEntropy(const Matrix& probs, std::span<const uint16_t> labels) {
  if (labels.size() != probs.rows) throw ConfigError("label count does not match batch");
  if (probs.rows == 0) throw ConfigError("cross-entropy of an empty batch");
  double total = 0.0;
  for (size_t i = 0; i < probs.rows; ++i) {
    if (labels[i] >= probs.cols) throw ConfigError("label out of range");
    total -= FlooredLog(probs(i, labels[i]));
  }
  return total / static_cast<double>(probs.rows);
}

double KlDiv(std::span<const double> p, std::span<const double> q) {
  RequireSameLength(p.size(), q.size());
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    total += p[i] * (std::log(p[i]) - FlooredLog(q[i]));
  }
  return total;
}

double JsDiv(std::span<const double> p1, std::span<const double> p2,
             std::span<const double> p3) {
  RequireSameLength(p1.size(), p2.size());
  RequireSameLength(p1.size(), p3.size());
  std::vector<double> m(p1.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = Sum3(p1[i], p2[i], p3[i]) / 3.0;
  return Sum3(KlDiv(p1, m), KlDiv(p2, m), KlDiv(p3, m)) / 3.0;
}

void KlDivGradQ(std::span<const double> p, std::span<const double> q,
                std::span<double> dq) {
  RequireSameLength(p.size(), q.size());
  RequireSameLength(p.size(), dq.size());
  for (size_t i = 0; i < p.size(); ++i)
    dq[i] = (p[i] > 0.0 && q[i] >= kProbFloor) ? -p[i] / q[i] : 0.0;
}

void JsDivGrad(std::span<const double> p1, std::span<const double> p2,
               std::span<const double> p3, std::span<double> d1,
               std::span<double> d2, std::span<double> d3) {
  const std::array<std::span<const double>, 3> p = {p1, p2, p3};
  const std::array<std::span<double>, 3> d = {d1, d2, d3};
  for (size_t i = 0; i < p1.size(); ++i) {
    const double m = Sum3(p1[i], p2[i], p3[i]) / 3.0;
    for (size_t k = 0; k < 3; ++k) {
      if (m >= kProbFloor) {
        d[k][i] = (FlooredLog(p[k][i]) - std::log(m)) / 3.0;
      } else {
        d[k][i] = (FlooredLog(p[k][i]) + 1.0 - std::log(kProbFloor)) / 3.0;
      }
    }
  }
}

model::ProbLoss CrossEntropyLoss(std::vector<uint16_t> labels) {
  return [labels = std::move(labels)](std::span<const Matrix> probs) {
    if (probs.size() != 1) throw ConfigError("cross-entropy takes one batch");
    const Matrix& p = probs[0];
    model::ProbLossResult r;
    r.value = CrossEntropy(p, labels);
    r.dprobs.emplace_back(p.rows, p.cols, 0.0);
    const double inv_n = 1.0 / static_cast<double>(p.rows);
    for (size_t i = 0; i < p.rows; ++i) {
      const double py = p(i, labels[i]);
      if (py >= kProbFloor) r.dprobs[0](i, labels[i]) = -inv_n / py;
    }
    return r;
  };
}

model::ProbLoss AugMixTrainingLoss(std::vector<uint16_t> labels, double alpha) {
  auto ce = CrossEntropyLoss(labels);
  return [ce = std::move(ce), alpha](std::span<const Matrix> probs) {
    if (probs.size() != 3) throw ConfigError("AugMix loss takes three batches");
    const size_t n = probs[0].rows, c = probs[0].cols;
    CheckRows(probs[1], n, c);
    CheckRows(probs[2], n, c);
    model::ProbLossResult r = ce(probs.first(1));
    r.dprobs.emplace_back(n, c, 0.0);
    r.dprobs.emplace_back(n, c, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> g0(c), g1(c), g2(c);
    double js_total = 0.0;
    for (size_t i = 0; i < n; ++i) {
      js_total += JsDiv(probs[0].row(i), probs[1].row(i), probs[2].row(i));
      JsDivGrad(probs[0].row(i), probs[1].row(i), probs[2].row(i), g0, g1, g2);
      for (size_t k = 0; k < c; ++k) {
        r.dprobs[0](i, k) += alpha * inv_n * g0[k];
        r.dprobs[1](i, k) = alpha * inv_n * g1[k];
        r.dprobs[2](i, k) = alpha * inv_n * g2[k];
      }
    }
    r.value += alpha * (js_total * inv_n);
    return r;
  };
}

DartLossTerms DartTerms(const Matrix& teacher, const Matrix& student_clean,
                        const Matrix& student_aug1, const Matrix& student_aug2,
                        const LossWeights& w) {
  const size_t n = teacher.rows, c = teacher.cols;
  if (n == 0) throw ConfigError("DART loss of an empty batch");
  CheckRows(student_clean, n, c);
  CheckRows(student_aug1, n, c);
  CheckRows(student_aug2, n, c);
  double kl = 0.0, js = 0.0;
  for (size_t i = 0; i < n; ++i) {
    kl += KlDiv(teacher.row(i), student_clean.row(i));
    js += JsDiv(student_clean.row(i), student_aug1.row(i), student_aug2.row(i));
  }
  DartLossTerms t;
  t.distillation = kl / static_cast<double>(n);
  t.consistency = js / static_cast<double>(n);
  t.total = w.distillation * t.distillation + w.alpha * t.consistency;
  return t;
}

model::ProbLoss DartObjective(Matrix teacher_probs, LossWeights w) {
  return [teacher = std::move(teacher_probs), w](std::span<const Matrix> probs) {
    if (probs.size() != 3) throw ConfigError("DART objective takes three batches");
    const size_t n = teacher.rows, c = teacher.cols;
    model::ProbLossResult r;
    r.value = DartTerms(teacher, probs[0], probs[1], probs[2], w).total;
    for (int k = 0; k < 3; ++k) r.dprobs.emplace_back(n, c, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> gkl(c), g0(c), g1(c), g2(c);
    for (size_t i = 0; i < n; ++i) {
      KlDivGradQ(teacher.row(i), probs[0].row(i), gkl);
      JsDivGrad(probs[0].row(i), probs[1].row(i), probs[2].row(i), g0, g1, g2);
      for (size_t k = 0; k < c; ++k) {
        r.dprobs[0](i, k) = inv_n * (w.distillation * gkl[k] + w.alpha * g0[k]);
        r.dprobs[1](i, k) = inv_n * w.alpha * g1[k];
        r.dprobs[2](i, k) = inv_n * w.alpha * g2[k];
      }
    }
    return r;
  };
}

AugmentedBatch AugmentBatch(const ImageBatch& batch,
                            const augmix::AugMixConfig& cfg, Rng& rng) {
  AugmentedBatch out;
  out.clean = batch;
  out.aug1.shape = out.aug2.shape = batch.shape;
  out.aug1.pixels.reserve(batch.pixels.size());
  out.aug2.pixels.reserve(batch.pixels.size());
  for (size_t i = 0; i < batch.size(); ++i) {
    auto [a, b] = augmix::AugMixPair(Image(batch.shape, batch.image(i)), cfg, rng);
    out.aug1.Append(a.pixels);
    out.aug2.Append(b.pixels);
  }
  return out;
}

DartLossTerms DartLoss(const model::Classifier& teacher,
                       const model::Classifier& student,
                       const ImageBatch& batch, const LossWeights& w,
                       const augmix::AugMixConfig& cfg, Rng& rng,
                       model::PassCounter* counter) {
  if (!(teacher.params().layout() == student.params().layout()))
    throw ConfigError("teacher and student architectures differ");
  const AugmentedBatch views = AugmentBatch(batch, cfg, rng);
  const Matrix t = teacher.PredictProba(views.clean, counter);
  const Matrix s0 = student.PredictProba(views.clean, counter);
  const Matrix s1 = student.PredictProba(views.aug1, counter);
  const Matrix s2 = student.PredictProba(views.aug2, counter);
  return DartTerms(t, s0, s1, s2, w);
}

}  // namespace fedrobust::losses
