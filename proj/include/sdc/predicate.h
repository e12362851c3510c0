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

#ifndef SDC_PREDICATE_H_
#define SDC_PREDICATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "sdc/dataset.h"

namespace sdc {

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view ComparatorSymbol(Comparator op);
// Accepts symbols (=, ==, !=, <, <=, >, >=, and the Unicode forms) and the
// words eq, ne, lt, le, gt, ge.
Comparator ParseComparator(std::string_view text);

struct Condition {
  std::string column;
  Comparator op = Comparator::kEq;
  std::string literal;
  friend bool operator==(const Condition&, const Condition&) = default;
};

// Conjunction of conditions. The empty predicate selects every row.
struct Predicate {
  std::vector<Condition> conditions;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Query-string form `col:op:value,col:op:value`. The value is everything
// after the second colon, so timestamps need no escaping; commas cannot
// appear inside values.
Predicate ParsePredicate(std::string_view text);
std::string FormatPredicate(const Predicate& p);

// Evaluates a predicate against one dataset. Construction validates column
// names, literal types and comparator/kind compatibility.
class RowMatcher {
 public:
  RowMatcher(const Dataset& ds, const Predicate& predicate);
  bool Matches(size_t row) const;

 private:
  struct Compiled {
    size_t column;
    Comparator op;
    Value literal;
    bool literal_is_missing;
  };
  const Dataset& ds_;
  std::vector<Compiled> compiled_;
};

// Rows satisfying every condition, in input order; schema unchanged.
Dataset FilterSubset(const Dataset& ds, const Predicate& predicate);
std::vector<size_t> MatchingRows(const Dataset& ds, const Predicate& predicate);

}  // namespace sdc

#endif  // SDC_PREDICATE_H_
