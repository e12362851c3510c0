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

#ifndef SDC_TRANSFORMS_H_
#define SDC_TRANSFORMS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/predicate.h"

namespace sdc {

// Step parameter blocks. Every step except AddUniformIntegerNoise is
// truthful: each output value, interval or category contains its input.

struct SuppressCells {
  std::string column;
  Predicate where;
  std::string symbol = "*";
  friend bool operator==(const SuppressCells&, const SuppressCells&) = default;
};

struct SuppressDuplicateRows {
  std::vector<std::string> key_columns;
  std::string order_column;
  friend bool operator==(const SuppressDuplicateRows&,
                         const SuppressDuplicateRows&) = default;
};

struct RecodeCategories {
  std::string column;
  std::map<std::string, std::string> mapping;
  friend bool operator==(const RecodeCategories&,
                         const RecodeCategories&) = default;
};

struct TruncateDateTime {
  std::string column;
  friend bool operator==(const TruncateDateTime&,
                         const TruncateDateTime&) = default;
};

struct GeneralizeDatePeriod {
  std::string column;
  int64_t period_days = 1;
  std::optional<Date> anchor;  // absent: earliest date in the column
  friend bool operator==(const GeneralizeDatePeriod&,
                         const GeneralizeDatePeriod&) = default;
};

struct BinFixedWidth {
  std::string column;
  double width = 1;
  double origin = 0;
  friend bool operator==(const BinFixedWidth&, const BinFixedWidth&) = default;
};

struct BinQuantiles {
  std::string column;
  int q = 4;
  friend bool operator==(const BinQuantiles&, const BinQuantiles&) = default;
};

struct BinCustomRanges {
  std::string column;
  std::vector<double> edges;
  friend bool operator==(const BinCustomRanges&,
                         const BinCustomRanges&) = default;
};

struct AddUniformIntegerNoise {
  std::string column;
  int64_t lo = 0;
  int64_t hi = 0;
  std::optional<uint64_t> seed;
  friend bool operator==(const AddUniformIntegerNoise&,
                         const AddUniformIntegerNoise&) = default;
};

struct DropColumnsStep {
  std::vector<std::string> columns;
  std::string reason;
  friend bool operator==(const DropColumnsStep&,
                         const DropColumnsStep&) = default;
};

struct DeriveDurationStep {
  std::string start;
  std::string end;
  std::string new_name;
  bool drop_sources = true;
  AttributeClass attribute_class = AttributeClass::kInsensitive;
  friend bool operator==(const DeriveDurationStep&,
                         const DeriveDurationStep&) = default;
};

using TransformStep =
    std::variant<SuppressCells, SuppressDuplicateRows, RecodeCategories,
                 TruncateDateTime, GeneralizeDatePeriod, BinFixedWidth,
                 BinQuantiles, BinCustomRanges, AddUniformIntegerNoise,
                 DropColumnsStep, DeriveDurationStep>;

std::string StepName(const TransformStep& step);
bool IsPerturbative(const TransformStep& step);
// Columns read or written by the step, in parameter order.
std::vector<std::string> StepColumns(const TransformStep& step);

// One applied step. `step` is the resolved form (seed and anchor filled in)
// so replaying it reproduces the output exactly.
struct StepRecord {
  TransformStep step;
  size_t rows_before = 0;
  size_t rows_after = 0;
  size_t affected_cells = 0;
  bool perturbative = false;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

using Provenance = std::vector<StepRecord>;

struct Transformed {
  Dataset data;
  StepRecord record;
};

Transformed ApplySuppressCells(const Dataset& ds, const SuppressCells& p);
Transformed ApplySuppressDuplicateRows(const Dataset& ds,
                                       const SuppressDuplicateRows& p);
Transformed ApplyRecodeCategories(const Dataset& ds, const RecodeCategories& p);
Transformed ApplyTruncateDateTime(const Dataset& ds, const TruncateDateTime& p);
Transformed ApplyGeneralizeDatePeriod(const Dataset& ds,
                                      const GeneralizeDatePeriod& p);
Transformed ApplyBinFixedWidth(const Dataset& ds, const BinFixedWidth& p);
Transformed ApplyBinQuantiles(const Dataset& ds, const BinQuantiles& p);
Transformed ApplyBinCustomRanges(const Dataset& ds, const BinCustomRanges& p);
// Requires p.seed.
Transformed ApplyUniformIntegerNoise(const Dataset& ds,
                                     const AddUniformIntegerNoise& p);
Transformed ApplyDropColumns(const Dataset& ds, const DropColumnsStep& p);
Transformed ApplyDeriveDuration(const Dataset& ds, const DeriveDurationStep& p);

Transformed Apply(const Dataset& ds, const TransformStep& step);
Dataset Replay(const Dataset& original, const Provenance& provenance);

// Nearest-rank cut points at j/q, j = 1..q-1, over the non-missing values.
std::vector<double> NearestRankCutPoints(std::vector<double> values, int q);

// Edges for BinCustomRanges from equal-frequency cut points over the column,
// dropping any interior edge closer than `min_width` to the previous edge.
// The result spans the observed minimum and maximum.
std::vector<double> EqualFrequencyEdges(const Dataset& ds,
                                        const std::string& column, int bins,
                                        double min_width);

// "[lo, hi)" or "[lo, hi]".
std::string IntervalLabel(double lo, double hi, bool closed);

}  // namespace sdc

#endif  // SDC_TRANSFORMS_H_
