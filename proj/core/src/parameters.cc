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

#include "fedrobust/model/parameters.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "fedrobust/common/error.h"

namespace fedrobust::model {

ParameterLayout::ParameterLayout(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  size_t offset = 0;
  for (auto& s : segments_) {
    size_t n = 1;
    for (int d : s.shape) n *= static_cast<size_t>(d);
    s.offset = offset;
    s.size = n;
    offset += n;
  }
  total_size_ = offset;
}

std::string ParameterLayout::Describe() const {
  std::ostringstream out;
  for (const auto& s : segments_) {
    out << s.name;
    for (int d : s.shape) out << ' ' << d;
    out << '\n';
  }
  return out.str();
}

ParameterVector::ParameterVector(std::shared_ptr<const ParameterLayout> layout,
                                 std::vector<double> values)
    : layout_(std::move(layout)), values_(std::move(values)) {
  if (!layout_ || values_.size() != layout_->total_size())
    throw ConfigError("parameter vector size does not match its layout");
}

ParameterVector::ParameterVector(std::shared_ptr<const ParameterLayout> layout)
    : layout_(std::move(layout)) {
  if (!layout_) throw ConfigError("parameter vector needs a layout");
  values_.assign(layout_->total_size(), 0.0);
}

bool ParameterVector::SameLayout(const ParameterVector& other) const {
  if (layout_ == other.layout_) return true;
  if (!layout_ || !other.layout_) return false;
  return *layout_ == *other.layout_;
}

bool ParameterVector::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool ParameterVector::operator==(const ParameterVector& other) const {
  return SameLayout(other) && values_.size() == other.values_.size() &&
         std::memcmp(values_.data(), other.values_.data(),
                     values_.size() * sizeof(double)) == 0;
}

void RequireSameLayout(const ParameterVector& a, const ParameterVector& b) {
  if (!a.SameLayout(b)) throw ConfigError("parameter layout mismatch");
}

ParameterVector SgdStep(const ParameterVector& params, const ParameterVector& g,
                        double lr) {
  RequireSameLayout(params, g);
  ParameterVector out = params;
  auto w = out.mutable_values();
  auto gv = g.values();
  for (size_t i = 0; i < w.size(); ++i) w[i] -= lr * gv[i];
  if (!out.AllFinite()) throw NumericalError("SGD step produced non-finite weights");
  return out;
}

ParameterVector Mean(std::span<const ParameterVector> vectors) {
  if (vectors.empty()) throw ConfigError("cannot average zero parameter vectors");
  // Accumulate offsets from the first vector so that averaging identical
  // inputs returns them bit-exactly.
  const ParameterVector& first = vectors.front();
  std::vector<double> offset(first.size(), 0.0);
  for (const auto& v : vectors.subspan(1)) {
    RequireSameLayout(first, v);
    auto src = v.values();
    for (size_t i = 0; i < offset.size(); ++i) offset[i] += src[i] - first[i];
  }
  const double count = static_cast<double>(vectors.size());
  ParameterVector out = first;
  auto w = out.mutable_values();
  for (size_t i = 0; i < w.size(); ++i) w[i] += offset[i] / count;
  return out;
}

double MaxAbsDiff(const ParameterVector& a, const ParameterVector& b) {
  RequireSameLayout(a, b);
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fedrobust::model
