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

#include "fedrobust/model/classifier.h"

#include <cmath>

#include "fedrobust/common/error.h"

namespace fedrobust::model {
namespace {

void CheckBatch(const Network& net, const ImageBatch& batch) {
  if (!(batch.shape == net.architecture().input))
    throw ConfigError("batch of " + batch.shape.ToString() +
                      " images does not match network input " +
                      net.architecture().input.ToString());
}

}  // namespace

Classifier::Classifier(std::shared_ptr<const Network> network,
                       ParameterVector params)
    : network_(std::move(network)), params_(std::move(params)) {
  if (!network_) throw ConfigError("classifier needs a network");
  if (!(params_.layout() == *network_->layout()))
    throw ConfigError("parameters do not match the network layout");
}

Matrix Classifier::PredictProba(const ImageBatch& batch,
                                PassCounter* counter) const {
  CheckBatch(*network_, batch);
  const size_t n = batch.size();
  Matrix probs(n, static_cast<size_t>(num_classes()));
  SampleCache cache = network_->NewCache();
  for (size_t i = 0; i < n; ++i) {
    network_->Forward(params_.values(), batch.image(i), cache);
    std::copy(cache.probs.begin(), cache.probs.end(), probs.row(i).begin());
  }
  if (counter) counter->forward += n;
  return probs;
}

GradientResult Gradient(const Classifier& clf,
                        std::span<const ImageBatch> inputs,
                        const ProbLoss& loss, PassCounter* counter) {
  const Network& net = clf.network();
  const auto params = clf.params().values();
  const size_t classes = static_cast<size_t>(clf.num_classes());

  std::vector<std::vector<SampleCache>> caches(inputs.size());
  std::vector<Matrix> probs(inputs.size());
  for (size_t b = 0; b < inputs.size(); ++b) {
    CheckBatch(net, inputs[b]);
    const size_t n = inputs[b].size();
    probs[b] = Matrix(n, classes);
    caches[b].reserve(n);
    for (size_t i = 0; i < n; ++i) {
      caches[b].push_back(net.NewCache());
      net.Forward(params, inputs[b].image(i), caches[b].back());
      std::copy(caches[b].back().probs.begin(), caches[b].back().probs.end(),
                probs[b].row(i).begin());
    }
    if (counter) counter->forward += n;
  }

  ProbLossResult lr = loss(probs);
  if (!std::isfinite(lr.value)) throw NumericalError("loss is not finite");
  if (lr.dprobs.size() != inputs.size())
    throw ConfigError("loss returned the wrong number of gradient matrices");

  GradientResult result{lr.value, net.Zeros()};
  auto grad = result.gradient.mutable_values();
  std::vector<double> dlogits(classes);
  for (size_t b = 0; b < inputs.size(); ++b) {
    const Matrix& dp = lr.dprobs[b];
    for (size_t i = 0; i < caches[b].size(); ++i) {
      // Softmax Jacobian: dz_k = p_k (g_k - sum_j g_j p_j).
      const auto p = probs[b].row(i);
      const auto g = dp.row(i);
      double dot = 0.0;
      for (size_t k = 0; k < classes; ++k) dot += g[k] * p[k];
      for (size_t k = 0; k < classes; ++k) dlogits[k] = p[k] * (g[k] - dot);
      net.Backward(params, caches[b][i], dlogits, grad);
    }
    if (counter) counter->backward += caches[b].size();
  }
  if (!result.gradient.AllFinite()) throw NumericalError("gradient is not finite");
  return result;
}

int Argmax(std::span<const double> row) {
  int best = 0;
  for (size_t i = 1; i < row.size(); ++i)
    if (row[i] > row[best]) best = static_cast<int>(i);
  return best;
}

}  // namespace fedrobust::model
