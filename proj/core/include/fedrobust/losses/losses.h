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

#ifndef FEDROBUST_LOSSES_LOSSES_H_
#define FEDROBUST_LOSSES_LOSSES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedrobust/augmix/augmix.h"
#include "fedrobust/common/image.h"
#include "fedrobust/common/matrix.h"
#include "fedrobust/common/rng.h"
#include "fedrobust/model/classifier.h"

namespace fedrobust::losses {

// Probabilities inside logarithms are floored here; nothing else deviates
// from the textbook formulas.
inline constexpr double kProbFloor = 1e-12;

// Weights of the DART objective: distillation * L_d + alpha * L_c.
// `distillation` is 1 except in the ablation that drops L_d.
struct LossWeights {
  double alpha = 12.0;
  double distillation = 1.0;

  void Validate() const;
};

// Mean over rows of -ln p[label].
double CrossEntropy(const Matrix& probs, std::span<const uint16_t> labels);

// sum_i p_i ln(p_i / q_i), with 0 ln 0 = 0. Throws on length mismatch.
double KlDiv(std::span<const double> p, std::span<const double> q);

// Three-way Jensen-Shannon divergence: mean of KL(p_k || M) with M the
// average of the three. Exactly symmetric in its arguments.
double JsDiv(std::span<const double> p1, std::span<const double> p2,
             std::span<const double> p3);

// d KL(p || q) / d q.
void KlDivGradQ(std::span<const double> p, std::span<const double> q,
                std::span<double> dq);

// d JS / d p_k for k = 1, 2, 3.
void JsDivGrad(std::span<const double> p1, std::span<const double> p2,
               std::span<const double> p3, std::span<double> d1,
               std::span<double> d2, std::span<double> d3);

// Mean cross-entropy on a single input batch.
model::ProbLoss CrossEntropyLoss(std::vector<uint16_t> labels);

// Client-side robust objective over (clean, aug1, aug2) batches:
// CE(clean) + alpha * JS(clean, aug1, aug2), both averaged over the batch.
model::ProbLoss AugMixTrainingLoss(std::vector<uint16_t> labels, double alpha);

struct DartLossTerms {
  double distillation = 0.0;  // L_d = mean KL(teacher || student)
  double consistency = 0.0;   // L_c = mean JS(student clean, aug1, aug2)
  double total = 0.0;
};

// Evaluates the DART terms from precomputed probabilities.
DartLossTerms DartTerms(const Matrix& teacher, const Matrix& student_clean,
                        const Matrix& student_aug1, const Matrix& student_aug2,
                        const LossWeights& w);

// DART objective over the student's (clean, aug1, aug2) outputs with the
// teacher's clean outputs held fixed.
model::ProbLoss DartObjective(Matrix teacher_probs, LossWeights w);

struct AugmentedBatch {
  ImageBatch clean;
  ImageBatch aug1;
  ImageBatch aug2;
};

// AugMixPair for every image in order, all drawn from `rng`.
AugmentedBatch AugmentBatch(const ImageBatch& batch,
                            const augmix::AugMixConfig& cfg, Rng& rng);

// Full DART loss on a batch: augment, run teacher on clean inputs and the
// student on all three views, combine.
DartLossTerms DartLoss(const model::Classifier& teacher,
                       const model::Classifier& student,
                       const ImageBatch& batch, const LossWeights& w,
                       const augmix::AugMixConfig& cfg, Rng& rng,
                       model::PassCounter* counter = nullptr);

}  // namespace fedrobust::losses

#endif  // FEDROBUST_LOSSES_LOSSES_H_
