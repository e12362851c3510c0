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

#include "sdc/risk.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "sdc/error.h"

namespace sdc {
namespace {

// Order-preserving dictionary codes for one column; missing is code 0.
std::vector<uint32_t> EncodeColumn(const Dataset& ds, size_t col,
                                   std::vector<Value>& dictionary) {
  const ColumnSpec& spec = ds.schema()[col];
  const Column& values = ds.column(col);
  std::vector<size_t> order;
  for (size_t r = 0; r < values.size(); ++r) {
    if (!IsMissing(values[r])) order.push_back(r);
  }
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return spec.Compare(values[a], values[b]) < 0;
  });
  std::vector<uint32_t> codes(values.size(), 0);
  dictionary.assign(1, Missing{""});
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || spec.Compare(values[order[i - 1]], values[order[i]]) != 0) {
      dictionary.push_back(values[order[i]]);
    }
    codes[order[i]] = uint32_t(dictionary.size() - 1);
  }
  return codes;
}

}  // namespace

std::string Scenario::Label() const {
  std::string out;
  for (size_t i = 0; i < qis.size(); ++i) {
    if (i) out += ", ";
    out += qis[i];
  }
  return out;
}

Scenario ParseScenario(const std::string& comma_separated) {
  Scenario s;
  size_t start = 0;
  while (start <= comma_separated.size()) {
    size_t comma = comma_separated.find(',', start);
    std::string name = comma_separated.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
    while (!name.empty() && name.back() == ' ') name.pop_back();
    if (!name.empty()) s.qis.push_back(name);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

void ValidateScenario(const Schema& schema, const Scenario& scenario) {
  if (scenario.qis.empty()) {
    Fail(ErrorCode::kInvalidArgument, "scenario has no quasi-identifiers");
  }
  std::set<std::string> seen;
  for (const auto& name : scenario.qis) {
    if (!seen.insert(name).second) {
      Fail(ErrorCode::kInvalidArgument,
           "scenario lists '" + name + "' more than once");
    }
    const ColumnSpec& spec = schema.At(name);
    if (spec.attribute_class != AttributeClass::kQuasiIdentifier) {
      Fail(ErrorCode::kInvalidArgument,
           "scenario column '" + name + "' is classified " +
               std::string(AttributeClassName(spec.attribute_class)) +
               ", not QuasiIdentifier");
    }
  }
}

EquivalenceClassPartition Partition(const Dataset& ds,
                                    const Scenario& scenario) {
  ValidateScenario(ds.schema(), scenario);
  if (ds.empty()) Fail(ErrorCode::kInvalidArgument, "dataset has no rows");
  const size_t n = ds.row_count();
  const size_t m = scenario.qis.size();
  std::vector<std::vector<Value>> dictionaries(m);
  std::vector<std::vector<uint32_t>> codes(m);
  for (size_t j = 0; j < m; ++j) {
    codes[j] =
        EncodeColumn(ds, ds.schema().IndexOf(scenario.qis[j]), dictionaries[j]);
  }
  std::vector<size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  auto tuple_less = [&](size_t a, size_t b) {
    for (size_t j = 0; j < m; ++j) {
      if (codes[j][a] != codes[j][b]) return codes[j][a] < codes[j][b];
    }
    return false;
  };
  std::stable_sort(rows.begin(), rows.end(), tuple_less);

  EquivalenceClassPartition p;
  p.k_of_row.assign(n, 0);
  p.class_of_row.assign(n, 0);
  for (size_t i = 0; i < n;) {
    size_t j = i + 1;
    while (j < n && !tuple_less(rows[i], rows[j])) ++j;
    EquivalenceClass cls;
    for (size_t q = 0; q < m; ++q) {
      cls.key.push_back(dictionaries[q][codes[q][rows[i]]]);
    }
    cls.rows.assign(rows.begin() + i, rows.begin() + j);
    for (size_t r : cls.rows) {
      p.k_of_row[r] = j - i;
      p.class_of_row[r] = p.classes.size();
    }
    p.classes.push_back(std::move(cls));
    i = j;
  }
  return p;
}

std::string_view MetricName(Metric m) {
  return m == Metric::kKAnonymity ? "KAnonymity" : "RecordLinkage";
}

Metric ParseMetric(std::string_view name) {
  if (name == "KAnonymity") return Metric::kKAnonymity;
  if (name == "RecordLinkage") return Metric::kRecordLinkage;
  Fail(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

RiskResult KAnonymityRisk(const Dataset& ds, const Scenario& scenario) {
  EquivalenceClassPartition p = Partition(ds, scenario);
  RiskResult r;
  r.scenario = scenario;
  r.metric = Metric::kKAnonymity;
  r.row_count = ds.row_count();
  for (const auto& cls : p.classes) {
    r.k_histogram[cls.rows.size()]++;
    if (cls.rows.size() == 1) ++r.unique_count;
  }
  r.min_k = r.k_histogram.begin()->first;
  r.risk_percent = 100.0 * double(r.unique_count) / double(r.row_count);
  return r;
}

RiskResult SubsetRisk(const Dataset& ds, const Predicate& predicate,
                      const Scenario& scenario) {
  ValidateScenario(ds.schema(), scenario);
  Dataset subset = FilterSubset(ds, predicate);
  if (subset.empty()) {
    Fail(ErrorCode::kEmptySubset,
         "subset '" + FormatPredicate(predicate) + "' selects no rows");
  }
  return KAnonymityRisk(subset, scenario);
}

LDiversityResult LDiversity(const Dataset& ds, const Scenario& scenario,
                            const std::string& sensitive) {
  size_t si = ds.schema().IndexOf(sensitive);
  const ColumnSpec& spec = ds.schema()[si];
  if (spec.attribute_class != AttributeClass::kSensitive) {
    Fail(ErrorCode::kInvalidArgument,
         "column '" + sensitive + "' is not classified Sensitive");
  }
  const Column& values = ds.column(si);
  if (std::all_of(values.begin(), values.end(),
                  [](const Value& v) { return IsMissing(v); })) {
    Fail(ErrorCode::kFailedPrecondition,
         "sensitive column '" + sensitive + "' is entirely missing");
  }
  EquivalenceClassPartition p = Partition(ds, scenario);
  LDiversityResult out;
  bool any = false;
  for (const auto& cls : p.classes) {
    std::vector<const Value*> distinct;
    for (size_t r : cls.rows) {
      const Value& v = values[r];
      if (IsMissing(v)) continue;
      bool seen = false;
      for (const Value* d : distinct) seen = seen || spec.Compare(*d, v) == 0;
      if (!seen) distinct.push_back(&v);
    }
    out.distinct_per_class.push_back(distinct.size());
    if (!distinct.empty()) {
      out.min_l = any ? std::min(out.min_l, distinct.size()) : distinct.size();
      any = true;
    }
  }
  return out;
}

}  // namespace sdc
