//
// Copyright 2026 The sdcwork Authors
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
//

#ifndef SDC_RISK_H_
#define SDC_RISK_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/predicate.h"

namespace sdc {

// The attacker's assumed background knowledge: an ordered set of
// quasi-identifier columns.
struct Scenario {
  std::vector<std::string> qis;
  std::string Label() const;  // "Age, Gender"
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

Scenario ParseScenario(const std::string& comma_separated);

// Non-empty, no duplicates, every column present and classified
// QuasiIdentifier. Throws kInvalidArgument / kNotFound.
void ValidateScenario(const Schema& schema, const Scenario& scenario);

struct EquivalenceClass {
  // QI tuple; missing cells appear as Missing{""} so that every missing
  // value falls in one class regardless of its source token.
  std::vector<Value> key;
  std::vector<size_t> rows;  // ascending
};

struct EquivalenceClassPartition {
  std::vector<EquivalenceClass> classes;  // canonical (key) order
  std::vector<size_t> k_of_row;
  std::vector<size_t> class_of_row;
};

EquivalenceClassPartition Partition(const Dataset& ds, const Scenario& scenario);

enum class Metric { kKAnonymity, kRecordLinkage };
std::string_view MetricName(Metric m);
Metric ParseMetric(std::string_view name);

struct RiskResult {
  Scenario scenario;
  Metric metric = Metric::kKAnonymity;
  size_t row_count = 0;
  size_t unique_count = 0;
  double risk_percent = 0;             // 100 * unique_count / row_count
  std::map<size_t, size_t> k_histogram;  // class size -> number of classes
  size_t min_k = 0;
  friend bool operator==(const RiskResult&, const RiskResult&) = default;
};

// Share of records that are alone in their equivalence class (k = 1).
RiskResult KAnonymityRisk(const Dataset& ds, const Scenario& scenario);

// KAnonymityRisk on FilterSubset(ds, predicate). An empty subset throws
// kEmptySubset instead of reporting 0%.
RiskResult SubsetRisk(const Dataset& ds, const Predicate& predicate,
                      const Scenario& scenario);

struct LDiversityResult {
  // Distinct non-missing sensitive values per class, aligned with
  // Partition(ds, scenario).classes.
  std::vector<size_t> distinct_per_class;
  // Minimum over classes with at least one non-missing sensitive value.
  size_t min_l = 0;
};

LDiversityResult LDiversity(const Dataset& ds, const Scenario& scenario,
                            const std::string& sensitive);

}  // namespace sdc

#endif  // SDC_RISK_H_
