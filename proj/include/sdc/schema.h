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

#ifndef SDC_SCHEMA_H_
#define SDC_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/value.h"

namespace sdc {

enum class AttributeClass {
  kDirectIdentifier,
  kQuasiIdentifier,
  kSensitive,
  kInsensitive,
};

std::string_view AttributeClassName(AttributeClass c);
AttributeClass ParseAttributeClass(std::string_view name);

std::set<std::string> DefaultMissingTokens();

struct ColumnSpec {
  std::string name;
  ValueKind kind = ValueKind::kCategorical;
  AttributeClass attribute_class = AttributeClass::kInsensitive;
  std::set<std::string> missing_tokens = DefaultMissingTokens();
  // Ordered labels of a generalized Categorical column (bins, periods).
  // Empty for unordered categories.
  std::vector<std::string> levels;

  bool IsMissingToken(std::string_view text) const {
    return missing_tokens.count(std::string(text)) > 0;
  }
  // Ordered kinds plus Categorical columns that carry levels.
  bool IsOrdered() const;
  // Total order over the column's values: missing first, then natural order
  // (level order for leveled categories). Returns <0, 0, >0.
  int Compare(const Value& a, const Value& b) const;

  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<ColumnSpec> columns);

  const std::vector<ColumnSpec>& columns() const { return columns_; }
  size_t size() const { return columns_.size(); }
  const ColumnSpec& operator[](size_t i) const { return columns_[i]; }

  std::optional<size_t> Find(std::string_view name) const;
  // Throws kNotFound naming the column.
  size_t IndexOf(std::string_view name) const;
  const ColumnSpec& At(std::string_view name) const {
    return columns_[IndexOf(name)];
  }
  std::vector<std::string> Names() const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<ColumnSpec> columns_;
};

}  // namespace sdc

#endif  // SDC_SCHEMA_H_
