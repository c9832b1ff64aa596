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

#ifndef FEDROBUST_TESTS_TEST_SUPPORT_H_
#define FEDROBUST_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "fedrobust/common/image.h"
#include "fedrobust/common/matrix.h"
#include "fedrobust/data/dataset.h"
#include "fedrobust/model/classifier.h"
#include "fedrobust/model/network.h"

namespace fedrobust::testing {

// Small hand-rolled generator for property tests. Draws are reproducible per
// seed and independent of the library's own RNG helpers.
class Gen {
 public:
  explicit Gen(uint64_t seed) : engine_(seed) {}

  int Int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  double Real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  bool Coin() { return Int(0, 1) == 1; }

  // Probability vector of length n with strictly positive entries.
  std::vector<double> Simplex(int n) {
    std::vector<double> p(n);
    for (auto& v : p) v = Real(1e-3, 1.0);
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= s;
    return p;
  }

  // Probability vector that may contain exact zeros.
  std::vector<double> SparseSimplex(int n) {
    std::vector<double> p(n);
    for (auto& v : p) v = Coin() ? 0.0 : Real(0.0, 1.0);
    p[Int(0, n - 1)] += 0.5;
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= s;
    return p;
  }

  Image RandomImage(ImageShape shape) {
    Image img(shape);
    for (auto& v : img.pixels) v = static_cast<float>(Real(0.0, 1.0));
    return img;
  }

  ImageShape SmallShape() { return {Int(3, 9), Int(3, 9), Int(1, 3)}; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline Matrix RowsOf(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline data::LabeledDataset RandomDataset(Gen& g, size_t n, ImageShape shape,
                                          int classes, const std::string& name = "rand") {
  data::LabeledDataset ds;
  ds.images.name = name;
  ds.images.shape = shape;
  ds.num_classes = classes;
  for (size_t i = 0; i < n; ++i) {
    ds.images.Append(g.RandomImage(shape).pixels);
    ds.labels.push_back(static_cast<uint16_t>(i % classes));
  }
  return ds;
}

inline std::shared_ptr<const model::Network> TinyNetwork(ImageShape shape, int classes) {
  return std::make_shared<model::Network>(model::MakeArchitecture("tiny_cnn", shape, classes));
}

// Largest relative disagreement between the analytic gradient of `loss` and
// central finite differences, over every parameter.
inline double MaxGradientRelativeError(const model::Classifier& clf,
                                       const std::vector<ImageBatch>& inputs,
                                       const model::ProbLoss& loss,
                                       double eps = 1e-5) {
  const auto analytic = model::Gradient(clf, inputs, loss).gradient;
  auto value_at = [&](const model::ParameterVector& w) {
    const auto probe = clf.WithParams(w);
    std::vector<Matrix> probs;
    for (const auto& b : inputs) probs.push_back(probe.PredictProba(b));
    return loss(probs).value;
  };
  double worst = 0.0;
  model::ParameterVector w = clf.params();
  for (size_t i = 0; i < w.size(); ++i) {
    const double orig = w[i];
    w[i] = orig + eps;
    const double up = value_at(w);
    w[i] = orig - eps;
    const double down = value_at(w);
    w[i] = orig;
    const double fd = (up - down) / (2 * eps);
    const double scale = std::max({std::abs(fd), std::abs(analytic[i]), 1e-4});
    worst = std::max(worst, std::abs(fd - analytic[i]) / scale);
  }
  return worst;
}

// Initial weights with every entry, biases included, nudged by a small random
// amount. Zero biases put ReLU pre-activations exactly on the kink wherever
// the incoming patch is all zeros, and finite differences are undefined there.
inline model::ParameterVector GenericParameters(const model::Network& net, uint64_t seed,
                                               Gen& g, double jitter = 0.05) {
  model::ParameterVector w = net.InitParameters(seed);
  for (size_t i = 0; i < w.size(); ++i) w[i] += g.Real(-jitter, jitter);
  return w;
}

inline ImageBatch RandomBatch(Gen& g, size_t n, ImageShape shape) {
  ImageBatch b;
  b.shape = shape;
  for (size_t i = 0; i < n; ++i) b.Append(g.RandomImage(shape).pixels);
  return b;
}

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("fedrobust_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fedrobust::testing

#endif  // FEDROBUST_TESTS_TEST_SUPPORT_H_
