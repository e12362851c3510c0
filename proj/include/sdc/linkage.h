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

#ifndef SDC_LINKAGE_H_
#define SDC_LINKAGE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/risk.h"

namespace sdc {

enum class DistanceRule {
  kExactMatch,          // 0 if equal, else 1
  kNormalizedAbsolute,  // |a - b| / (max - min) over both datasets
};

std::string_view DistanceRuleName(DistanceRule r);
DistanceRule ParseDistanceRule(std::string_view name);

// Record distance = arithmetic mean of per-column distances, summed in
// scenario column order. A pair with a missing side contributes 1.
// Defaults: ExactMatch for Categorical and Identifier columns,
// NormalizedAbsolute for Numeric, Date (in days) and DateTime (in seconds).
struct DistanceSpec {
  std::map<std::string, DistanceRule> overrides;
  DistanceRule RuleFor(const ColumnSpec& column) const;
  friend bool operator==(const DistanceSpec&, const DistanceSpec&) = default;
};

enum class LinkOutcome { kCorrectUnique, kFalseUnique, kAmbiguous };

struct LinkageResult {
  Scenario scenario;
  size_t protected_rows = 0;
  size_t correct_count = 0;
  size_t false_count = 0;
  size_t ambiguous_count = 0;
  double total_match_percent = 0;
  double correct_match_percent = 0;
  double false_match_percent = 0;
  double ambiguous_percent = 0;
  // Per protected record; left empty in serialized reports.
  std::vector<LinkOutcome> assignments;

  // Share of matches that are wrong, in percent (0 when nothing matched).
  double MarginOfError() const;
  friend bool operator==(const LinkageResult&, const LinkageResult&) = default;
};

// Distance-based record linkage. Row i of `protected_ds` was derived from row
// i of `attacker_view`; a protected record is matched when exactly one
// attacker record attains the minimum distance. Ties are ambiguous.
// Protected records are scored in parallel; results do not depend on the
// thread count.
LinkageResult RecordLinkage(const Dataset& attacker_view,
                            const Dataset& protected_ds,
                            const Scenario& scenario, const DistanceSpec& spec);

// Distances from protected record `protected_row` to every attacker record,
// with the same arithmetic RecordLinkage uses.
std::vector<double> RecordDistances(const Dataset& attacker_view,
                                    const Dataset& protected_ds,
                                    const Scenario& scenario,
                                    const DistanceSpec& spec, size_t protected_row);

// One cell of the scenario risk matrix.
struct Assessment {
  Scenario scenario;
  Metric metric = Metric::kKAnonymity;
  std::optional<RiskResult> k_anonymity;
  std::optional<LinkageResult> linkage;

  // Singling-out share for k-anonymity, total match rate for linkage.
  double RiskPercent() const;
  friend bool operator==(const Assessment&, const Assessment&) = default;
};

// Per scenario, record linkage when the scenario touches a perturbed column
// (equivalence classes are meaningless under noise), k-anonymity on
// `protected_ds` otherwise. Results keep the input order.
std::vector<Assessment> AssessMatrix(const Dataset& attacker_view,
                                     const Dataset& protected_ds,
                                     const std::vector<Scenario>& scenarios,
                                     const DistanceSpec& spec,
                                     const std::set<std::string>& perturbed_columns);

}  // namespace sdc

#endif  // SDC_LINKAGE_H_
