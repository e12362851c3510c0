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

#include "sdc/table_ops.h"

#include <algorithm>
#include <cmath>

#include "sdc/error.h"

namespace sdc {
namespace {

std::optional<int64_t> DayOf(const Value& v) {
  if (const auto* d = std::get_if<Date>(&v)) return d->days;
  if (const auto* t = std::get_if<DateTime>(&v)) return t->day().days;
  return std::nullopt;
}

// Numeric view of an ordered cell for histogramming.
double AsAxis(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* t = std::get_if<DateTime>(&v)) return double(t->seconds) / 86400.0;
  return double(std::get<Date>(v).days);
}

std::string AxisLabel(double x, ValueKind kind) {
  if (kind == ValueKind::kNumeric) return FormatNumber(x);
  return FormatDate(Date{static_cast<int64_t>(std::floor(x))});
}

}  // namespace

Dataset Classify(const Dataset& ds,
                 const std::map<std::string, AttributeClass>& assignments) {
  auto specs = ds.schema().columns();
  for (const auto& [name, cls] : assignments) {
    specs[ds.schema().IndexOf(name)].attribute_class = cls;
  }
  return ds.WithSchema(Schema(std::move(specs)));
}

Dataset DeriveDuration(const Dataset& ds, const std::string& start,
                       const std::string& end, const std::string& new_name,
                       bool drop_sources, AttributeClass attribute_class) {
  size_t si = ds.schema().IndexOf(start);
  size_t ei = ds.schema().IndexOf(end);
  for (size_t i : {si, ei}) {
    ValueKind k = ds.schema()[i].kind;
    if (k != ValueKind::kDate && k != ValueKind::kDateTime) {
      Fail(ErrorCode::kFailedPrecondition,
           "column '" + ds.schema()[i].name + "' is " +
               std::string(KindName(k)) + ", expected Date or DateTime");
    }
  }
  if (ds.schema().Find(new_name) && !(drop_sources && (new_name == start || new_name == end))) {
    Fail(ErrorCode::kInvalidArgument, "column '" + new_name + "' already exists");
  }
  Column out;
  out.reserve(ds.row_count());
  for (size_t r = 0; r < ds.row_count(); ++r) {
    auto a = DayOf(ds.cell(r, si));
    auto b = DayOf(ds.cell(r, ei));
    if (a && b) {
      out.emplace_back(double(*b - *a));
    } else {
      out.emplace_back(Missing{});
    }
  }
  Dataset base = drop_sources ? ds.WithoutColumns({si, ei}) : ds;
  ColumnSpec spec;
  spec.name = new_name;
  spec.kind = ValueKind::kNumeric;
  spec.attribute_class = attribute_class;
  return base.AppendColumn(std::move(spec), std::move(out));
}

Dataset DropColumns(const Dataset& ds, const std::vector<std::string>& names) {
  if (names.empty()) return ds;
  std::vector<size_t> indices;
  for (const auto& n : names) indices.push_back(ds.schema().IndexOf(n));
  return ds.WithoutColumns(indices);
}

std::vector<std::string> DirectIdentifiers(const Dataset& ds) {
  std::vector<std::string> out;
  for (const auto& c : ds.schema().columns()) {
    if (c.attribute_class == AttributeClass::kDirectIdentifier) {
      out.push_back(c.name);
    }
  }
  return out;
}

FrequencyTable Frequencies(const Dataset& ds, const std::string& column) {
  size_t ci = ds.schema().IndexOf(column);
  const ColumnSpec& spec = ds.schema()[ci];
  FrequencyTable table;
  table.column = column;
  std::vector<Value> values;
  for (const Value& v : ds.column(ci)) {
    if (IsMissing(v)) {
      ++table.missing;
    } else if (const auto* t = std::get_if<DateTime>(&v)) {
      values.emplace_back(t->day());
    } else {
      values.push_back(v);
    }
  }
  ColumnSpec order = spec;
  if (order.kind == ValueKind::kDateTime) order.kind = ValueKind::kDate;
  std::stable_sort(values.begin(), values.end(),
                   [&](const Value& a, const Value& b) {
                     return order.Compare(a, b) < 0;
                   });
  for (size_t i = 0; i < values.size();) {
    size_t j = i;
    while (j < values.size() && order.Compare(values[i], values[j]) == 0) ++j;
    table.counts.emplace_back(FormatValue(values[i]), j - i);
    i = j;
  }
  return table;
}

Histogram ComputeHistogram(const Dataset& ds, const std::string& column,
                           size_t bins) {
  size_t ci = ds.schema().IndexOf(column);
  const ColumnSpec& spec = ds.schema()[ci];
  Histogram h;
  h.column = column;
  if (!IsOrderedKind(spec.kind)) {
    FrequencyTable f = Frequencies(ds, column);
    h.categorical = true;
    h.missing = f.missing;
    for (auto& [label, count] : f.counts) {
      h.bins.push_back(HistogramBin{label, 0, 0, count, 0});
    }
    return h;
  }
  if (bins == 0) Fail(ErrorCode::kInvalidArgument, "bins must be positive");
  std::vector<double> xs;
  for (const Value& v : ds.column(ci)) {
    if (IsMissing(v)) {
      ++h.missing;
    } else {
      xs.push_back(AsAxis(v));
    }
  }
  if (xs.empty()) return h;
  auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  double lo = *mn;
  double width = (*mx - *mn) / double(bins);
  if (width <= 0) width = 1;
  for (size_t b = 0; b < bins; ++b) {
    double a = lo + width * double(b);
    double z = lo + width * double(b + 1);
    h.bins.push_back(HistogramBin{
        "[" + AxisLabel(a, spec.kind) + ", " + AxisLabel(z, spec.kind) +
            (b + 1 == bins ? "]" : ")"),
        a, z, 0, 0});
  }
  for (double x : xs) {
    size_t b = static_cast<size_t>(std::floor((x - lo) / width));
    h.bins[std::min(b, bins - 1)].count++;
  }
  for (auto& b : h.bins) b.density = double(b.count) / width;
  return h;
}

}  // namespace sdc
