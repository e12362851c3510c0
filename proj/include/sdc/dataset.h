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

#ifndef SDC_DATASET_H_
#define SDC_DATASET_H_

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "sdc/schema.h"
#include "sdc/value.h"

namespace sdc {

using Column = std::vector<Value>;

// Immutable columnar table. Column storage is shared between datasets derived
// from one another, so the "modifying" members below are cheap: they return a
// new Dataset and never touch *this.
class Dataset {
 public:
  Dataset() = default;
  // Validates equal column lengths and that every cell matches its kind.
  Dataset(Schema schema, std::vector<Column> columns);

  const Schema& schema() const { return schema_; }
  size_t row_count() const { return rows_; }
  size_t column_count() const { return columns_.size(); }
  bool empty() const { return rows_ == 0; }

  const Column& column(size_t i) const { return *columns_[i]; }
  const Column& column(std::string_view name) const {
    return *columns_[schema_.IndexOf(name)];
  }
  const Value& cell(size_t row, size_t col) const {
    return (*columns_[col])[row];
  }

  Dataset WithSchema(Schema schema) const;
  Dataset WithColumn(size_t index, ColumnSpec spec, Column values) const;
  Dataset AppendColumn(ColumnSpec spec, Column values) const;
  Dataset WithoutColumns(const std::vector<size_t>& indices) const;
  // Keeps the given rows in the given order.
  Dataset SelectRows(const std::vector<size_t>& rows) const;

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  Dataset(Schema schema, std::vector<std::shared_ptr<const Column>> columns,
          size_t rows);

  Schema schema_;
  std::vector<std::shared_ptr<const Column>> columns_;
  size_t rows_ = 0;
};

}  // namespace sdc

#endif  // SDC_DATASET_H_
