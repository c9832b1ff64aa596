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

#include "fedrobust/eval/metrics.h"

#include <numeric>
#include <sstream>

#include "fedrobust/common/error.h"

namespace fedrobust::eval {
namespace {

constexpr size_t kEvalChunk = 256;

}  // namespace

double CleanAccuracy(const model::Classifier& clf,
                     const data::LabeledDataset& test) {
  if (test.size() == 0) throw ConfigError("accuracy of an empty test set");
  size_t correct = 0;
  std::vector<size_t> idx;
  for (size_t start = 0; start < test.size(); start += kEvalChunk) {
    const size_t end = std::min(test.size(), start + kEvalChunk);
    idx.resize(end - start);
    std::iota(idx.begin(), idx.end(), start);
    const Matrix probs = clf.PredictProba(test.images.Batch(idx));
    for (size_t i = 0; i < idx.size(); ++i)
      if (model::Argmax(probs.row(i)) == test.labels[idx[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

RobustAccuracy RobustAccuracyOf(const model::Classifier& clf,
                                const data::CorruptedTestSuite& suite) {
  if (suite.entries.empty()) throw ConfigError("robust accuracy of an empty suite");
  RobustAccuracy out;
  double total = 0.0;
  for (const auto& entry : suite.entries) {
    const double acc = CleanAccuracy(clf, entry.data);
    out.breakdown.push_back({entry.spec, acc});
    total += acc;
  }
  out.accuracy = total / static_cast<double>(suite.entries.size());
  return out;
}

MetricsRecord Evaluate(const model::Classifier& clf,
                       const data::LabeledDataset& test,
                       const data::CorruptedTestSuite& suite) {
  MetricsRecord m;
  m.clean = CleanAccuracy(clf, test);
  RobustAccuracy r = RobustAccuracyOf(clf, suite);
  m.robust = r.accuracy;
  m.average = (m.clean + m.robust) / 2.0;
  m.breakdown = std::move(r.breakdown);
  return m;
}

std::string BreakdownCsv(const std::vector<BreakdownEntry>& breakdown) {
  std::ostringstream out;
  out << "filter,severity,accuracy\n";
  out.setf(std::ios::fixed);
  out.precision(6);
  for (const auto& e : breakdown)
    out << data::FilterName(e.spec.filter) << ',' << e.spec.severity << ','
        << e.accuracy << '\n';
  return out.str();
}

}  // namespace fedrobust::eval
