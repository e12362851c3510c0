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

#include "sdc/schema.h"

#include <algorithm>

#include "sdc/error.h"

namespace sdc {

std::string_view AttributeClassName(AttributeClass c) {
  switch (c) {
    case AttributeClass::kDirectIdentifier: return "DirectIdentifier";
    case AttributeClass::kQuasiIdentifier: return "QuasiIdentifier";
    case AttributeClass::kSensitive: return "Sensitive";
    case AttributeClass::kInsensitive: return "Insensitive";
  }
  return "?";
}

AttributeClass ParseAttributeClass(std::string_view name) {
  for (AttributeClass c :
       {AttributeClass::kDirectIdentifier, AttributeClass::kQuasiIdentifier,
        AttributeClass::kSensitive, AttributeClass::kInsensitive}) {
    if (AttributeClassName(c) == name) return c;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown attribute class '" + std::string(name) + "'");
}

std::set<std::string> DefaultMissingTokens() { return {"", "NA", "Unknown"}; }

bool ColumnSpec::IsOrdered() const {
  return IsOrderedKind(kind) ||
         (kind == ValueKind::kCategorical && !levels.empty());
}

int ColumnSpec::Compare(const Value& a, const Value& b) const {
  bool ma = IsMissing(a), mb = IsMissing(b);
  if (ma || mb) return (ma && mb) ? 0 : (ma ? -1 : 1);
  auto three_way = [](const auto& x, const auto& y) {
    return x < y ? -1 : (y < x ? 1 : 0);
  };
  if (a.index() != b.index()) return three_way(a.index(), b.index());
  if (const auto* sa = std::get_if<std::string>(&a)) {
    const auto& sb = std::get<std::string>(b);
    if (!levels.empty()) {
      auto ia = std::find(levels.begin(), levels.end(), *sa);
      auto ib = std::find(levels.begin(), levels.end(), sb);
      if (ia != ib) return three_way(ia - levels.begin(), ib - levels.begin());
    }
    return three_way(*sa, sb);
  }
  if (const auto* da = std::get_if<double>(&a)) {
    return three_way(*da, std::get<double>(b));
  }
  if (const auto* ta = std::get_if<Date>(&a)) {
    return three_way(ta->days, std::get<Date>(b).days);
  }
  return three_way(std::get<DateTime>(a).seconds,
                   std::get<DateTime>(b).seconds);
}

Schema::Schema(std::vector<ColumnSpec> columns) : columns_(std::move(columns)) {
  for (size_t i = 0; i < columns_.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (columns_[i].name == columns_[j].name) {
        Fail(ErrorCode::kInvalidArgument,
             "duplicate column name '" + columns_[i].name + "'");
      }
    }
  }
}

std::optional<size_t> Schema::Find(std::string_view name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

size_t Schema::IndexOf(std::string_view name) const {
  auto i = Find(name);
  if (!i) Fail(ErrorCode::kNotFound, "unknown column '" + std::string(name) + "'");
  return *i;
}

std::vector<std::string> Schema::Names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

}  // namespace sdc
