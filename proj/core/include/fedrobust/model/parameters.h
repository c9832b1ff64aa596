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

#ifndef FEDROBUST_MODEL_PARAMETERS_H_
#define FEDROBUST_MODEL_PARAMETERS_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fedrobust::model {

// One named weight tensor inside a flat parameter vector.
struct Segment {
  std::string name;
  std::vector<int> shape;
  size_t offset = 0;
  size_t size = 0;

  bool operator==(const Segment&) const = default;
};

// Maps segments of a flat vector to layers. Immutable once built.
class ParameterLayout {
 public:
  ParameterLayout() = default;
  explicit ParameterLayout(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  size_t total_size() const { return total_size_; }
  std::string Describe() const;

  bool operator==(const ParameterLayout& other) const {
    return segments_ == other.segments_;
  }

 private:
  std::vector<Segment> segments_;
  size_t total_size_ = 0;
};

// Flat, ordered weights plus the layout they follow. Copying copies values;
// the layout is shared.
class ParameterVector {
 public:
  ParameterVector() = default;
  ParameterVector(std::shared_ptr<const ParameterLayout> layout,
                  std::vector<double> values);
  // Zero-filled vector with `layout`.
  explicit ParameterVector(std::shared_ptr<const ParameterLayout> layout);

  const ParameterLayout& layout() const { return *layout_; }
  const std::shared_ptr<const ParameterLayout>& shared_layout() const {
    return layout_;
  }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }
  size_t size() const { return values_.size(); }
  double operator[](size_t i) const { return values_[i]; }
  double& operator[](size_t i) { return values_[i]; }

  bool SameLayout(const ParameterVector& other) const;
  bool AllFinite() const;
  // Bitwise equality of values and layouts.
  bool operator==(const ParameterVector& other) const;

 private:
  std::shared_ptr<const ParameterLayout> layout_;
  std::vector<double> values_;
};

// Throws ConfigError when layouts differ.
void RequireSameLayout(const ParameterVector& a, const ParameterVector& b);

// params - lr * g. Throws on layout mismatch; NumericalError if the result is
// not finite.
ParameterVector SgdStep(const ParameterVector& params,
                        const ParameterVector& g, double lr);

// Unweighted element-wise mean. Elements are summed in argument order.
ParameterVector Mean(std::span<const ParameterVector> vectors);

double MaxAbsDiff(const ParameterVector& a, const ParameterVector& b);

}  // namespace fedrobust::model

#endif  // FEDROBUST_MODEL_PARAMETERS_H_
