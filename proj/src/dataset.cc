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

#include "sdc/dataset.h"

#include <string>
#include <utility>

#include "sdc/error.h"

namespace sdc {
namespace {

void CheckColumn(const ColumnSpec& spec, const Column& values, size_t rows) {
  if (values.size() != rows) {
    Fail(ErrorCode::kInvalidArgument,
         "column '" + spec.name + "' has " + std::to_string(values.size()) +
             " cells, expected " + std::to_string(rows));
  }
  for (size_t r = 0; r < values.size(); ++r) {
    if (!MatchesKind(values[r], spec.kind)) {
      Fail(ErrorCode::kInvalidArgument,
           "column '" + spec.name + "' row " + std::to_string(r) +
               ": value does not match kind " + std::string(KindName(spec.kind)));
    }
  }
}

}  // namespace

Dataset::Dataset(Schema schema, std::vector<Column> columns)
    : schema_(std::move(schema)) {
  if (columns.size() != schema_.size()) {
    Fail(ErrorCode::kInvalidArgument, "column count does not match schema");
  }
  rows_ = columns.empty() ? 0 : columns.front().size();
  columns_.reserve(columns.size());
  for (size_t i = 0; i < columns.size(); ++i) {
    CheckColumn(schema_[i], columns[i], rows_);
    columns_.push_back(std::make_shared<const Column>(std::move(columns[i])));
  }
}

Dataset::Dataset(Schema schema,
                 std::vector<std::shared_ptr<const Column>> columns,
                 size_t rows)
    : schema_(std::move(schema)), columns_(std::move(columns)), rows_(rows) {}

Dataset Dataset::WithSchema(Schema schema) const {
  if (schema.size() != columns_.size()) {
    Fail(ErrorCode::kSchemaMismatch, "schema column count differs");
  }
  for (size_t i = 0; i < columns_.size(); ++i) {
    CheckColumn(schema[i], *columns_[i], rows_);
  }
  return Dataset(std::move(schema), columns_, rows_);
}

Dataset Dataset::WithColumn(size_t index, ColumnSpec spec,
                            Column values) const {
  CheckColumn(spec, values, rows_);
  auto specs = schema_.columns();
  specs.at(index) = std::move(spec);
  auto cols = columns_;
  cols[index] = std::make_shared<const Column>(std::move(values));
  return Dataset(Schema(std::move(specs)), std::move(cols), rows_);
}

Dataset Dataset::AppendColumn(ColumnSpec spec, Column values) const {
  size_t rows = columns_.empty() ? values.size() : rows_;
  CheckColumn(spec, values, rows);
  auto specs = schema_.columns();
  specs.push_back(std::move(spec));
  auto cols = columns_;
  cols.push_back(std::make_shared<const Column>(std::move(values)));
  return Dataset(Schema(std::move(specs)), std::move(cols), rows);
}

Dataset Dataset::WithoutColumns(const std::vector<size_t>& indices) const {
  std::vector<bool> drop(columns_.size(), false);
  for (size_t i : indices) drop.at(i) = true;
  std::vector<ColumnSpec> specs;
  std::vector<std::shared_ptr<const Column>> cols;
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (drop[i]) continue;
    specs.push_back(schema_[i]);
    cols.push_back(columns_[i]);
  }
  return Dataset(Schema(std::move(specs)), std::move(cols),
                 cols.empty() ? 0 : rows_);
}

Dataset Dataset::SelectRows(const std::vector<size_t>& rows) const {
  std::vector<std::shared_ptr<const Column>> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) {
    Column out;
    out.reserve(rows.size());
    for (size_t r : rows) out.push_back(c->at(r));
    cols.push_back(std::make_shared<const Column>(std::move(out)));
  }
  return Dataset(schema_, std::move(cols), rows.size());
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.rows_ != b.rows_ || !(a.schema_ == b.schema_)) return false;
  for (size_t i = 0; i < a.columns_.size(); ++i) {
    if (a.columns_[i] != b.columns_[i] && *a.columns_[i] != *b.columns_[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace sdc
