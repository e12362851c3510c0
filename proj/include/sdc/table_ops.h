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

#ifndef SDC_TABLE_OPS_H_
#define SDC_TABLE_OPS_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sdc/dataset.h"

namespace sdc {

// Sets attribute classes. Every name must exist.
Dataset Classify(const Dataset& ds,
                 const std::map<std::string, AttributeClass>& assignments);

// Appends a Numeric column holding the calendar days from `start` to `end`
// (time of day ignored); missing when either side is missing.
Dataset DeriveDuration(const Dataset& ds, const std::string& start,
                       const std::string& end, const std::string& new_name,
                       bool drop_sources,
                       AttributeClass attribute_class = AttributeClass::kInsensitive);

Dataset DropColumns(const Dataset& ds, const std::vector<std::string>& names);

// Names of columns classified DirectIdentifier.
std::vector<std::string> DirectIdentifiers(const Dataset& ds);

// Value label -> count over non-missing cells. Leveled categories follow
// level order, other columns follow the column's value order. DateTime
// values are counted per calendar day.
struct FrequencyTable {
  std::string column;
  std::vector<std::pair<std::string, size_t>> counts;
  size_t missing = 0;
  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};
FrequencyTable Frequencies(const Dataset& ds, const std::string& column);

struct HistogramBin {
  std::string label;
  double lo = 0;
  double hi = 0;
  size_t count = 0;
  double density = 0;  // count / bin width; 0 for categories
};

struct Histogram {
  std::string column;
  bool categorical = false;
  std::vector<HistogramBin> bins;
  size_t missing = 0;
};

// Equal-width histogram with `bins` bins over the observed range for ordered
// kinds (dates in days, timestamps in days); a frequency table otherwise.
Histogram ComputeHistogram(const Dataset& ds, const std::string& column,
                           size_t bins);

}  // namespace sdc

#endif  // SDC_TABLE_OPS_H_
