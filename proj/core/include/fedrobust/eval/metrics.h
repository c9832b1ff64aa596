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

#ifndef FEDROBUST_EVAL_METRICS_H_
#define FEDROBUST_EVAL_METRICS_H_

#include <string>
#include <vector>

#include "fedrobust/data/corruption.h"
#include "fedrobust/data/dataset.h"
#include "fedrobust/model/classifier.h"

namespace fedrobust::eval {

struct BreakdownEntry {
  data::CorruptionSpec spec;
  double accuracy = 0.0;
};

struct RobustAccuracy {
  double accuracy = 0.0;  // unweighted mean over suite entries
  std::vector<BreakdownEntry> breakdown;
};

struct MetricsRecord {
  double clean = 0.0;    // A_cln
  double robust = 0.0;   // A_rob
  double average = 0.0;  // A_avg = (A_cln + A_rob) / 2
  std::vector<BreakdownEntry> breakdown;
};

// Fraction of images whose argmax prediction (lowest index on ties) equals
// the label. Throws ConfigError on an empty set.
double CleanAccuracy(const model::Classifier& clf,
                     const data::LabeledDataset& test);

// Macro average of per-(filter, severity) accuracies.
RobustAccuracy RobustAccuracyOf(const model::Classifier& clf,
                                const data::CorruptedTestSuite& suite);

MetricsRecord Evaluate(const model::Classifier& clf,
                       const data::LabeledDataset& test,
                       const data::CorruptedTestSuite& suite);

// "filter,severity,accuracy" rows with a header line.
std::string BreakdownCsv(const std::vector<BreakdownEntry>& breakdown);

}  // namespace fedrobust::eval

#endif  // FEDROBUST_EVAL_METRICS_H_
