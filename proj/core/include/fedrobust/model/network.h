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

#ifndef FEDROBUST_MODEL_NETWORK_H_
#define FEDROBUST_MODEL_NETWORK_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedrobust/common/image.h"
#include "fedrobust/model/parameters.h"

namespace fedrobust::model {

enum class LayerKind { kConv2d, kRelu, kMaxPool2, kDense };

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int size = 0;    // output channels (conv) or units (dense)
  int kernel = 0;  // conv kernel side; odd, "same" zero padding, stride 1

  bool operator==(const LayerSpec&) const = default;
};

// Feed-forward classifier description. The last layer must be a dense layer
// with `num_classes` units; a softmax is always applied on top.
struct Architecture {
  std::string name;
  ImageShape input;
  int num_classes = 0;
  std::vector<LayerSpec> layers;

  bool operator==(const Architecture&) const = default;
  // Line-oriented text form, parsed back by ParseArchitecture.
  std::string Describe() const;
};

Architecture ParseArchitecture(std::string_view text);

// conv(c1) relu pool conv(c2) relu pool dense(hidden) relu dense(classes).
Architecture SmallCnn(ImageShape input, int num_classes, int c1 = 8,
                      int c2 = 16, int hidden = 32);
// dense(hidden) relu dense(classes).
Architecture Mlp(ImageShape input, int num_classes, int hidden = 64);
// "cnn", "tiny_cnn" (for gradient checks) or "mlp".
Architecture MakeArchitecture(std::string_view name, ImageShape input,
                              int num_classes);

// Per-sample activation storage reused across forward/backward.
struct SampleCache {
  std::vector<std::vector<double>> acts;  // acts[0] = input (CHW)
  std::vector<std::vector<int>> argmax;   // max-pool switches
  std::vector<double> probs;
  std::vector<double> delta_a, delta_b;
};

// Stateless evaluator for one architecture. Thread-safe: all mutable state
// lives in caller-owned SampleCache objects.
class Network {
 public:
  explicit Network(Architecture arch);

  const Architecture& architecture() const { return arch_; }
  const std::shared_ptr<const ParameterLayout>& layout() const { return layout_; }
  int num_classes() const { return arch_.num_classes; }
  size_t parameter_count() const { return layout_->total_size(); }
  // Multiply-accumulates of one forward pass on one sample.
  uint64_t forward_macs() const { return forward_macs_; }

  // He-normal weights, zero biases.
  ParameterVector InitParameters(uint64_t seed) const;
  ParameterVector Zeros() const { return ParameterVector(layout_); }

  SampleCache NewCache() const;
  // Fills cache.probs with softmax(f(params, image)). `image` is HWC.
  void Forward(std::span<const double> params, std::span<const float> image,
               SampleCache& cache) const;
  // Adds d(loss)/d(params) into `grad` given d(loss)/d(logits) for the sample
  // whose forward pass populated `cache`.
  void Backward(std::span<const double> params, SampleCache& cache,
                std::span<const double> dlogits, std::span<double> grad) const;

 private:
  struct Dims {
    int c = 0, h = 0, w = 0;
    size_t size() const { return static_cast<size_t>(c) * h * w; }
  };
  struct Plan {
    LayerSpec spec;
    Dims in, out;
    size_t weight_offset = 0;
    size_t bias_offset = 0;
  };

  Architecture arch_;
  std::vector<Plan> plans_;
  std::shared_ptr<const ParameterLayout> layout_;
  uint64_t forward_macs_ = 0;
};

}  // namespace fedrobust::model

#endif  // FEDROBUST_MODEL_NETWORK_H_
