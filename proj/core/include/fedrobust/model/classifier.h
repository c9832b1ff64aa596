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

#ifndef FEDROBUST_MODEL_CLASSIFIER_H_
#define FEDROBUST_MODEL_CLASSIFIER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fedrobust/common/image.h"
#include "fedrobust/common/matrix.h"
#include "fedrobust/model/network.h"
#include "fedrobust/model/parameters.h"

namespace fedrobust::model {

// Counts per-sample forward and backward passes. Used to check that FedERL
// clients do exactly the work CleanFL clients do.
struct PassCounter {
  uint64_t forward = 0;
  uint64_t backward = 0;

  PassCounter& operator+=(const PassCounter& o) {
    forward += o.forward;
    backward += o.backward;
    return *this;
  }
  bool operator==(const PassCounter&) const = default;
};

// A network plus one set of weights. Copying a Classifier copies weights and
// shares the (immutable) network.
class Classifier {
 public:
  Classifier() = default;
  Classifier(std::shared_ptr<const Network> network, ParameterVector params);

  const Network& network() const { return *network_; }
  const std::shared_ptr<const Network>& shared_network() const { return network_; }
  const ParameterVector& params() const { return params_; }
  int num_classes() const { return network_->num_classes(); }

  Classifier WithParams(ParameterVector params) const {
    return Classifier(network_, std::move(params));
  }

  // Softmax outputs, one row per image. Throws ConfigError on shape mismatch.
  Matrix PredictProba(const ImageBatch& batch,
                      PassCounter* counter = nullptr) const;

 private:
  std::shared_ptr<const Network> network_;
  ParameterVector params_;
};

// A scalar loss over one or more probability matrices (one per input batch)
// and its derivative with respect to each probability entry.
struct ProbLossResult {
  double value = 0.0;
  std::vector<Matrix> dprobs;
};
using ProbLoss = std::function<ProbLossResult(std::span<const Matrix> probs)>;

struct GradientResult {
  double loss = 0.0;
  ParameterVector gradient;
};

// Runs the classifier on every batch in `inputs`, evaluates `loss` on the
// resulting probabilities and backpropagates through softmax and network.
// Throws NumericalError when the loss or gradient is not finite.
GradientResult Gradient(const Classifier& clf,
                        std::span<const ImageBatch> inputs,
                        const ProbLoss& loss, PassCounter* counter = nullptr);

// Index of the largest entry; ties go to the lowest index.
int Argmax(std::span<const double> row);

}  // namespace fedrobust::model

#endif  // FEDROBUST_MODEL_CLASSIFIER_H_
