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

#include "sdc/predicate.h"

#include <algorithm>

#include "sdc/error.h"

namespace sdc {

std::string_view ComparatorSymbol(Comparator op) {
  switch (op) {
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
  }
  return "?";
}

Comparator ParseComparator(std::string_view text) {
  if (text == "=" || text == "==" || text == "eq") return Comparator::kEq;
  if (text == "!=" || text == "≠" || text == "ne") return Comparator::kNe;
  if (text == "<" || text == "lt") return Comparator::kLt;
  if (text == "<=" || text == "≤" || text == "le") return Comparator::kLe;
  if (text == ">" || text == "gt") return Comparator::kGt;
  if (text == ">=" || text == "≥" || text == "ge") return Comparator::kGe;
  Fail(ErrorCode::kInvalidArgument,
       "unknown comparator '" + std::string(text) + "'");
}

Predicate ParsePredicate(std::string_view text) {
  Predicate p;
  if (text.empty()) return p;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string_view term = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start);
    size_t c1 = term.find(':');
    size_t c2 = c1 == std::string_view::npos ? c1 : term.find(':', c1 + 1);
    if (c2 == std::string_view::npos || c1 == 0) {
      Fail(ErrorCode::kInvalidArgument,
           "malformed predicate term '" + std::string(term) +
               "', expected col:op:value");
    }
    p.conditions.push_back(Condition{std::string(term.substr(0, c1)),
                                     ParseComparator(term.substr(c1 + 1, c2 - c1 - 1)),
                                     std::string(term.substr(c2 + 1))});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return p;
}

std::string FormatPredicate(const Predicate& p) {
  static constexpr std::string_view kWords[] = {"eq", "ne", "lt",
                                                "le", "gt", "ge"};
  std::string out;
  for (size_t i = 0; i < p.conditions.size(); ++i) {
    const auto& c = p.conditions[i];
    if (i) out.push_back(',');
    out += c.column + ":" + std::string(kWords[int(c.op)]) + ":" + c.literal;
  }
  return out;
}

RowMatcher::RowMatcher(const Dataset& ds, const Predicate& predicate)
    : ds_(ds) {
  for (const auto& cond : predicate.conditions) {
    size_t col = ds.schema().IndexOf(cond.column);
    const ColumnSpec& spec = ds.schema()[col];
    bool ordered_op = cond.op != Comparator::kEq && cond.op != Comparator::kNe;
    auto incompatible = [&](const std::string& why) {
      Fail(ErrorCode::kInvalidArgument,
           "type-incompatible comparison on '" + spec.name + "': " + why);
    };
    if (ordered_op && !spec.IsOrdered()) {
      incompatible(std::string(KindName(spec.kind)) + " values are unordered");
    }
    if (spec.IsMissingToken(cond.literal)) {
      if (ordered_op) incompatible("cannot order against a missing value");
      compiled_.push_back({col, cond.op, Missing{cond.literal}, true});
      continue;
    }
    Value literal;
    switch (spec.kind) {
      case ValueKind::kNumeric:
        if (auto v = ParseNumber(cond.literal)) literal = *v;
        else incompatible("'" + cond.literal + "' is not a number");
        break;
      case ValueKind::kDate:
        if (auto v = ParseDate(cond.literal)) literal = *v;
        else incompatible("'" + cond.literal + "' is not a date");
        break;
      case ValueKind::kDateTime:
        if (auto v = ParseDateTime(cond.literal)) literal = *v;
        else if (auto d = ParseDate(cond.literal)) literal = DateTime{d->days * 86400};
        else incompatible("'" + cond.literal + "' is not a timestamp");
        break;
      case ValueKind::kCategorical:
      case ValueKind::kIdentifier:
        if (ordered_op && std::find(spec.levels.begin(), spec.levels.end(),
                                    cond.literal) == spec.levels.end()) {
          incompatible("'" + cond.literal + "' is not one of the levels");
        }
        literal = cond.literal;
        break;
    }
    compiled_.push_back({col, cond.op, std::move(literal), false});
  }
}

bool RowMatcher::Matches(size_t row) const {
  for (const auto& c : compiled_) {
    const Value& v = ds_.cell(row, c.column);
    bool missing = IsMissing(v);
    if (c.literal_is_missing) {
      if (missing != (c.op == Comparator::kEq)) return false;
      continue;
    }
    if (missing) return false;
    int cmp = ds_.schema()[c.column].Compare(v, c.literal);
    bool ok = false;
    switch (c.op) {
      case Comparator::kEq: ok = cmp == 0; break;
      case Comparator::kNe: ok = cmp != 0; break;
      case Comparator::kLt: ok = cmp < 0; break;
      case Comparator::kLe: ok = cmp <= 0; break;
      case Comparator::kGt: ok = cmp > 0; break;
      case Comparator::kGe: ok = cmp >= 0; break;
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<size_t> MatchingRows(const Dataset& ds, const Predicate& predicate) {
  RowMatcher matcher(ds, predicate);
  std::vector<size_t> rows;
  for (size_t r = 0; r < ds.row_count(); ++r) {
    if (matcher.Matches(r)) rows.push_back(r);
  }
  return rows;
}

Dataset FilterSubset(const Dataset& ds, const Predicate& predicate) {
  auto rows = MatchingRows(ds, predicate);
  if (rows.size() == ds.row_count()) return ds;
  return ds.SelectRows(rows);
}

}  // namespace sdc
