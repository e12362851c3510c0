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

#include "sdc/transforms.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "sdc/error.h"
#include "sdc/rng.h"
#include "sdc/table_ops.h"

namespace sdc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const ColumnSpec& RequireKind(const Dataset& ds, const std::string& column,
                              std::initializer_list<ValueKind> kinds,
                              std::string_view step) {
  const ColumnSpec& spec = ds.schema().At(column);
  for (ValueKind k : kinds) {
    if (spec.kind == k) return spec;
  }
  std::string allowed;
  for (ValueKind k : kinds) {
    if (!allowed.empty()) allowed += " or ";
    allowed += KindName(k);
  }
  Fail(ErrorCode::kFailedPrecondition,
       std::string(step) + ": column '" + column + "' is " +
           std::string(KindName(spec.kind)) + ", expected " + allowed);
}

StepRecord MakeRecord(TransformStep step, size_t rows_before, size_t rows_after,
                      size_t affected) {
  StepRecord r;
  r.perturbative = IsPerturbative(step);
  r.step = std::move(step);
  r.rows_before = rows_before;
  r.rows_after = rows_after;
  r.affected_cells = affected;
  return r;
}

// Replaces a column with categorical labels; `levels` lists the labels in
// interval order.
Dataset ToLeveledCategorical(const Dataset& ds, size_t col,
                             std::vector<std::string> levels, Column values) {
  ColumnSpec spec = ds.schema()[col];
  spec.kind = ValueKind::kCategorical;
  spec.levels = std::move(levels);
  return ds.WithColumn(col, std::move(spec), std::move(values));
}

std::vector<double> NumericValues(const Column& c) {
  std::vector<double> out;
  for (const Value& v : c) {
    if (const auto* d = std::get_if<double>(&v)) out.push_back(*d);
  }
  return out;
}

// Interval index for value v given edges e0 < e1 < ... < ek; the last bin is
// closed. Caller guarantees e0 <= v <= ek.
size_t BinIndex(const std::vector<double>& edges, double v) {
  return size_t(std::upper_bound(edges.begin() + 1, edges.end() - 1, v) -
                (edges.begin() + 1));
}

Transformed BinByEdges(const Dataset& ds, size_t col,
                       const std::vector<double>& edges,
                       TransformStep resolved) {
  const Column& values = ds.column(col);
  std::vector<std::string> labels;
  for (size_t b = 0; b + 1 < edges.size(); ++b) {
    labels.push_back(IntervalLabel(edges[b], edges[b + 1], b + 2 == edges.size()));
  }
  Column out;
  out.reserve(values.size());
  size_t affected = 0;
  for (const Value& v : values) {
    if (IsMissing(v)) {
      out.push_back(v);
      continue;
    }
    out.emplace_back(labels[BinIndex(edges, std::get<double>(v))]);
    ++affected;
  }
  size_t rows = ds.row_count();
  return {ToLeveledCategorical(ds, col, std::move(labels), std::move(out)),
          MakeRecord(std::move(resolved), rows, rows, affected)};
}

}  // namespace

std::string IntervalLabel(double lo, double hi, bool closed) {
  return "[" + FormatNumber(lo) + ", " + FormatNumber(hi) + (closed ? "]" : ")");
}

std::string StepName(const TransformStep& step) {
  return std::visit(
      Overloaded{
          [](const SuppressCells&) { return "SuppressCells"; },
          [](const SuppressDuplicateRows&) { return "SuppressDuplicateRows"; },
          [](const RecodeCategories&) { return "RecodeCategories"; },
          [](const TruncateDateTime&) { return "TruncateDateTime"; },
          [](const GeneralizeDatePeriod&) { return "GeneralizeDatePeriod"; },
          [](const BinFixedWidth&) { return "BinFixedWidth"; },
          [](const BinQuantiles&) { return "BinQuantiles"; },
          [](const BinCustomRanges&) { return "BinCustomRanges"; },
          [](const AddUniformIntegerNoise&) { return "AddUniformIntegerNoise"; },
          [](const DropColumnsStep&) { return "DropColumns"; },
          [](const DeriveDurationStep&) { return "DeriveDuration"; },
      },
      step);
}

bool IsPerturbative(const TransformStep& step) {
  return std::holds_alternative<AddUniformIntegerNoise>(step);
}

std::vector<std::string> StepColumns(const TransformStep& step) {
  return std::visit(
      Overloaded{
          [](const SuppressCells& p) { return std::vector{p.column}; },
          [](const SuppressDuplicateRows& p) {
            auto cols = p.key_columns;
            cols.push_back(p.order_column);
            return cols;
          },
          [](const DropColumnsStep& p) { return p.columns; },
          [](const DeriveDurationStep& p) {
            return std::vector{p.start, p.end, p.new_name};
          },
          [](const auto& p) { return std::vector{p.column}; },
      },
      step);
}

Transformed ApplySuppressCells(const Dataset& ds, const SuppressCells& p) {
  size_t col = ds.schema().IndexOf(p.column);
  RowMatcher matcher(ds, p.where);
  Column out = ds.column(col);
  size_t affected = 0;
  Missing marker{p.symbol};
  for (size_t r = 0; r < out.size(); ++r) {
    if (!matcher.Matches(r)) continue;
    if (auto* m = std::get_if<Missing>(&out[r]); m && *m == marker) continue;
    out[r] = marker;
    ++affected;
  }
  size_t rows = ds.row_count();
  if (affected == 0) return {ds, MakeRecord(p, rows, rows, 0)};
  ColumnSpec spec = ds.schema()[col];
  spec.missing_tokens.insert(p.symbol);
  return {ds.WithColumn(col, std::move(spec), std::move(out)),
          MakeRecord(p, rows, rows, affected)};
}

Transformed ApplySuppressDuplicateRows(const Dataset& ds,
                                       const SuppressDuplicateRows& p) {
  std::vector<size_t> keys;
  for (const auto& k : p.key_columns) keys.push_back(ds.schema().IndexOf(k));
  size_t order = ds.schema().IndexOf(p.order_column);
  const ColumnSpec& order_spec = ds.schema()[order];
  if (!order_spec.IsOrdered()) {
    Fail(ErrorCode::kFailedPrecondition,
         "SuppressDuplicateRows: order column '" + p.order_column +
             "' is not an ordered kind");
  }
  // Missing order values sort last; ties keep the earlier row.
  auto earlier = [&](size_t a, size_t b) {
    const Value& va = ds.cell(a, order);
    const Value& vb = ds.cell(b, order);
    if (IsMissing(va) || IsMissing(vb)) return !IsMissing(va) && IsMissing(vb);
    return order_spec.Compare(va, vb) < 0;
  };
  std::map<std::vector<Value>, size_t> keep;
  for (size_t r = 0; r < ds.row_count(); ++r) {
    std::vector<Value> key;
    for (size_t k : keys) {
      const Value& v = ds.cell(r, k);
      key.push_back(IsMissing(v) ? Value(Missing{""}) : v);
    }
    auto [it, inserted] = keep.emplace(std::move(key), r);
    if (!inserted && earlier(r, it->second)) it->second = r;
  }
  std::vector<size_t> rows;
  for (const auto& [key, r] : keep) rows.push_back(r);
  std::sort(rows.begin(), rows.end());
  size_t before = ds.row_count();
  size_t removed = before - rows.size();
  Dataset out = removed == 0 ? ds : ds.SelectRows(rows);
  return {std::move(out),
          MakeRecord(p, before, rows.size(), removed * ds.column_count())};
}

Transformed ApplyRecodeCategories(const Dataset& ds, const RecodeCategories& p) {
  size_t col = ds.schema().IndexOf(p.column);
  ColumnSpec spec =
      RequireKind(ds, p.column, {ValueKind::kCategorical}, "RecodeCategories");
  for (const auto& [from, to] : p.mapping) {
    if (spec.IsMissingToken(to)) {
      Fail(ErrorCode::kInvalidArgument,
           "RecodeCategories: target '" + to + "' is a missing token");
    }
  }
  size_t rows = ds.row_count();
  if (p.mapping.empty()) return {ds, MakeRecord(p, rows, rows, 0)};
  Column out = ds.column(col);
  size_t affected = 0;
  for (Value& v : out) {
    const auto* s = std::get_if<std::string>(&v);
    if (!s) continue;
    auto it = p.mapping.find(*s);
    if (it == p.mapping.end() || it->second == *s) continue;
    v = it->second;
    ++affected;
  }
  if (!spec.levels.empty()) {
    std::vector<std::string> levels;
    for (const auto& l : spec.levels) {
      auto it = p.mapping.find(l);
      const std::string& mapped = it == p.mapping.end() ? l : it->second;
      if (std::find(levels.begin(), levels.end(), mapped) == levels.end()) {
        levels.push_back(mapped);
      }
    }
    spec.levels = std::move(levels);
  }
  return {ds.WithColumn(col, std::move(spec), std::move(out)),
          MakeRecord(p, rows, rows, affected)};
}

Transformed ApplyTruncateDateTime(const Dataset& ds, const TruncateDateTime& p) {
  size_t col = ds.schema().IndexOf(p.column);
  ColumnSpec spec =
      RequireKind(ds, p.column, {ValueKind::kDateTime}, "TruncateDateTime");
  Column out;
  out.reserve(ds.row_count());
  size_t affected = 0;
  for (const Value& v : ds.column(col)) {
    if (const auto* t = std::get_if<DateTime>(&v)) {
      out.emplace_back(t->day());
      ++affected;
    } else {
      out.push_back(v);
    }
  }
  spec.kind = ValueKind::kDate;
  size_t rows = ds.row_count();
  return {ds.WithColumn(col, std::move(spec), std::move(out)),
          MakeRecord(p, rows, rows, affected)};
}

Transformed ApplyGeneralizeDatePeriod(const Dataset& ds,
                                      const GeneralizeDatePeriod& p) {
  if (p.period_days < 1) {
    Fail(ErrorCode::kInvalidArgument,
         "GeneralizeDatePeriod: period_days must be at least 1");
  }
  size_t col = ds.schema().IndexOf(p.column);
  RequireKind(ds, p.column, {ValueKind::kDate}, "GeneralizeDatePeriod");
  const Column& values = ds.column(col);
  GeneralizeDatePeriod resolved = p;
  if (!resolved.anchor) {
    for (const Value& v : values) {
      if (const auto* d = std::get_if<Date>(&v)) {
        if (!resolved.anchor || *d < *resolved.anchor) resolved.anchor = *d;
      }
    }
  }
  std::map<int64_t, std::string> buckets;
  Column out;
  out.reserve(values.size());
  size_t affected = 0;
  for (const Value& v : values) {
    const auto* d = std::get_if<Date>(&v);
    if (!d) {
      out.push_back(v);
      continue;
    }
    int64_t i = FloorDiv(d->days - resolved.anchor->days, p.period_days);
    auto it = buckets.find(i);
    if (it == buckets.end()) {
      Date start{resolved.anchor->days + i * p.period_days};
      Date end{start.days + p.period_days - 1};
      it = buckets.emplace(i, FormatDate(start) + "–" + FormatDate(end)).first;
    }
    out.emplace_back(it->second);
    ++affected;
  }
  std::vector<std::string> levels;
  for (auto& [i, label] : buckets) levels.push_back(label);
  size_t rows = ds.row_count();
  return {ToLeveledCategorical(ds, col, std::move(levels), std::move(out)),
          MakeRecord(resolved, rows, rows, affected)};
}

Transformed ApplyBinFixedWidth(const Dataset& ds, const BinFixedWidth& p) {
  if (!(p.width > 0) || !std::isfinite(p.width) || !std::isfinite(p.origin)) {
    Fail(ErrorCode::kInvalidArgument, "BinFixedWidth: width must be positive");
  }
  size_t col = ds.schema().IndexOf(p.column);
  RequireKind(ds, p.column, {ValueKind::kNumeric}, "BinFixedWidth");
  const Column& values = ds.column(col);
  std::map<int64_t, std::string> buckets;
  std::vector<int64_t> index(values.size(), 0);
  for (size_t r = 0; r < values.size(); ++r) {
    const auto* v = std::get_if<double>(&values[r]);
    if (!v) continue;
    auto i = static_cast<int64_t>(std::floor((*v - p.origin) / p.width));
    // Guard the left-closed boundary against rounding in the division.
    if (*v < p.origin + double(i) * p.width) --i;
    if (*v >= p.origin + double(i + 1) * p.width) ++i;
    index[r] = i;
    if (!buckets.count(i)) {
      buckets[i] = IntervalLabel(p.origin + double(i) * p.width,
                                 p.origin + double(i + 1) * p.width, false);
    }
  }
  Column out;
  out.reserve(values.size());
  size_t affected = 0;
  for (size_t r = 0; r < values.size(); ++r) {
    if (IsMissing(values[r])) {
      out.push_back(values[r]);
    } else {
      out.emplace_back(buckets[index[r]]);
      ++affected;
    }
  }
  std::vector<std::string> levels;
  for (auto& [i, label] : buckets) levels.push_back(label);
  size_t rows = ds.row_count();
  return {ToLeveledCategorical(ds, col, std::move(levels), std::move(out)),
          MakeRecord(p, rows, rows, affected)};
}

std::vector<double> NearestRankCutPoints(std::vector<double> values, int q) {
  std::sort(values.begin(), values.end());
  std::vector<double> cuts;
  const size_t n = values.size();
  if (n == 0) return cuts;
  for (int j = 1; j < q; ++j) {
    size_t rank = (size_t(j) * n + size_t(q) - 1) / size_t(q);  // ceil(j n / q)
    cuts.push_back(values[std::max<size_t>(rank, 1) - 1]);
  }
  return cuts;
}

Transformed ApplyBinQuantiles(const Dataset& ds, const BinQuantiles& p) {
  if (p.q < 2) Fail(ErrorCode::kInvalidArgument, "BinQuantiles: q must be >= 2");
  size_t col = ds.schema().IndexOf(p.column);
  RequireKind(ds, p.column, {ValueKind::kNumeric}, "BinQuantiles");
  std::vector<double> values = NumericValues(ds.column(col));
  std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() < size_t(p.q)) {
    Fail(ErrorCode::kFailedPrecondition,
         "BinQuantiles: column '" + p.column + "' has " +
             std::to_string(distinct.size()) + " distinct values, need " +
             std::to_string(p.q));
  }
  double lo = *distinct.begin();
  double hi = *distinct.rbegin();
  std::vector<double> edges{lo};
  for (double c : NearestRankCutPoints(values, p.q)) {
    if (c > edges.back()) edges.push_back(c);
  }
  // A cut at the maximum yields the degenerate closed bin [max, max], which
  // keeps values below the cut apart from the maximum.
  edges.push_back(hi);
  return BinByEdges(ds, col, edges, p);
}

Transformed ApplyBinCustomRanges(const Dataset& ds, const BinCustomRanges& p) {
  if (p.edges.size() < 2) {
    Fail(ErrorCode::kInvalidArgument, "BinCustomRanges: need at least two edges");
  }
  for (size_t i = 1; i < p.edges.size(); ++i) {
    if (!(p.edges[i] > p.edges[i - 1])) {
      Fail(ErrorCode::kInvalidArgument,
           "BinCustomRanges: edges must be strictly increasing");
    }
  }
  size_t col = ds.schema().IndexOf(p.column);
  RequireKind(ds, p.column, {ValueKind::kNumeric}, "BinCustomRanges");
  for (double v : NumericValues(ds.column(col))) {
    if (v < p.edges.front() || v > p.edges.back()) {
      Fail(ErrorCode::kFailedPrecondition,
           "BinCustomRanges: value " + FormatNumber(v) + " outside " +
               IntervalLabel(p.edges.front(), p.edges.back(), true));
    }
  }
  return BinByEdges(ds, col, p.edges, p);
}

Transformed ApplyUniformIntegerNoise(const Dataset& ds,
                                     const AddUniformIntegerNoise& p) {
  if (p.lo > p.hi) {
    Fail(ErrorCode::kInvalidArgument, "AddUniformIntegerNoise: lo > hi");
  }
  if (!p.seed) {
    Fail(ErrorCode::kInvalidArgument, "AddUniformIntegerNoise: seed required");
  }
  size_t col = ds.schema().IndexOf(p.column);
  ColumnSpec spec = RequireKind(ds, p.column,
                                {ValueKind::kNumeric, ValueKind::kDate,
                                 ValueKind::kDateTime},
                                "AddUniformIntegerNoise");
  Rng rng(*p.seed);
  Column out;
  out.reserve(ds.row_count());
  size_t affected = 0;
  for (const Value& v : ds.column(col)) {
    if (const auto* d = std::get_if<double>(&v)) {
      out.emplace_back(*d + double(rng.UniformInt(p.lo, p.hi)));
      ++affected;
    } else if (const auto* day = std::get_if<Date>(&v)) {
      out.emplace_back(Date{day->days + rng.UniformInt(p.lo, p.hi)});
      ++affected;
    } else if (const auto* t = std::get_if<DateTime>(&v)) {
      // Whole days; the time of day is kept.
      out.emplace_back(DateTime{t->seconds + rng.UniformInt(p.lo, p.hi) * 86400});
      ++affected;
    } else {
      out.push_back(v);
    }
  }
  size_t rows = ds.row_count();
  return {ds.WithColumn(col, std::move(spec), std::move(out)),
          MakeRecord(p, rows, rows, affected)};
}

Transformed ApplyDropColumns(const Dataset& ds, const DropColumnsStep& p) {
  size_t rows = ds.row_count();
  return {DropColumns(ds, p.columns),
          MakeRecord(p, rows, rows, rows * p.columns.size())};
}

Transformed ApplyDeriveDuration(const Dataset& ds, const DeriveDurationStep& p) {
  size_t rows = ds.row_count();
  return {DeriveDuration(ds, p.start, p.end, p.new_name, p.drop_sources,
                         p.attribute_class),
          MakeRecord(p, rows, rows, rows)};
}

Transformed Apply(const Dataset& ds, const TransformStep& step) {
  return std::visit(
      Overloaded{
          [&](const SuppressCells& p) { return ApplySuppressCells(ds, p); },
          [&](const SuppressDuplicateRows& p) {
            return ApplySuppressDuplicateRows(ds, p);
          },
          [&](const RecodeCategories& p) { return ApplyRecodeCategories(ds, p); },
          [&](const TruncateDateTime& p) { return ApplyTruncateDateTime(ds, p); },
          [&](const GeneralizeDatePeriod& p) {
            return ApplyGeneralizeDatePeriod(ds, p);
          },
          [&](const BinFixedWidth& p) { return ApplyBinFixedWidth(ds, p); },
          [&](const BinQuantiles& p) { return ApplyBinQuantiles(ds, p); },
          [&](const BinCustomRanges& p) { return ApplyBinCustomRanges(ds, p); },
          [&](const AddUniformIntegerNoise& p) {
            return ApplyUniformIntegerNoise(ds, p);
          },
          [&](const DropColumnsStep& p) { return ApplyDropColumns(ds, p); },
          [&](const DeriveDurationStep& p) { return ApplyDeriveDuration(ds, p); },
      },
      step);
}

Dataset Replay(const Dataset& original, const Provenance& provenance) {
  Dataset ds = original;
  for (const auto& record : provenance) ds = Apply(ds, record.step).data;
  return ds;
}

std::vector<double> EqualFrequencyEdges(const Dataset& ds,
                                        const std::string& column, int bins,
                                        double min_width) {
  if (bins < 1) Fail(ErrorCode::kInvalidArgument, "bins must be positive");
  RequireKind(ds, column, {ValueKind::kNumeric}, "EqualFrequencyEdges");
  std::vector<double> values = NumericValues(ds.column(column));
  if (values.empty()) {
    Fail(ErrorCode::kFailedPrecondition,
         "column '" + column + "' has no values");
  }
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double lo = *mn, hi = *mx;
  if (lo == hi) return {lo, lo + std::max(min_width, 1.0)};
  std::vector<double> edges{lo};
  for (double c : NearestRankCutPoints(values, bins)) {
    if (c < hi && c - edges.back() >= min_width) edges.push_back(c);
  }
  if (edges.size() > 1 && hi - edges.back() < min_width) edges.pop_back();
  edges.push_back(hi);
  return edges;
}

}  // namespace sdc
