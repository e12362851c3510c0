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

#include "sdc/linkage.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sdc/error.h"

namespace sdc {
namespace {

// Column prepared for comparison: exact-match columns as codes from a
// dictionary shared by both datasets, ordered columns as doubles.
struct PreparedColumn {
  DistanceRule rule;
  double range = 0;
  std::vector<double> a_axis, b_axis;
  std::vector<uint32_t> a_code, b_code;
  std::vector<uint8_t> a_missing, b_missing;
};

double Axis(const Value& v, const ColumnSpec& spec) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* d = std::get_if<Date>(&v)) return double(d->days);
  if (const auto* t = std::get_if<DateTime>(&v)) return double(t->seconds);
  const auto& s = std::get<std::string>(v);
  auto it = std::find(spec.levels.begin(), spec.levels.end(), s);
  return double(it - spec.levels.begin());
}

PreparedColumn Prepare(const Dataset& a, const Dataset& b,
                       const std::string& name, const DistanceSpec& spec) {
  const ColumnSpec& sa = a.schema().At(name);
  const ColumnSpec& sb = b.schema().At(name);
  if (sa.kind != sb.kind) {
    Fail(ErrorCode::kSchemaMismatch,
         "column '" + name + "' has different kinds in the two datasets");
  }
  PreparedColumn p;
  p.rule = spec.RuleFor(sa);
  const Column& ca = a.column(name);
  const Column& cb = b.column(name);
  auto missing = [](const Column& c) {
    std::vector<uint8_t> m(c.size());
    for (size_t i = 0; i < c.size(); ++i) m[i] = IsMissing(c[i]);
    return m;
  };
  p.a_missing = missing(ca);
  p.b_missing = missing(cb);
  if (p.rule == DistanceRule::kNormalizedAbsolute) {
    if (!sa.IsOrdered()) {
      Fail(ErrorCode::kInvalidArgument,
           "NormalizedAbsolute distance needs an ordered column, '" + name +
               "' is not");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto axis = [&](const Column& c, const ColumnSpec& s) {
      std::vector<double> out(c.size(), 0);
      for (size_t i = 0; i < c.size(); ++i) {
        if (IsMissing(c[i])) continue;
        out[i] = Axis(c[i], s);
        lo = std::min(lo, out[i]);
        hi = std::max(hi, out[i]);
      }
      return out;
    };
    p.a_axis = axis(ca, sa);
    p.b_axis = axis(cb, sb);
    p.range = hi > lo ? hi - lo : 0;
  } else {
    std::vector<std::pair<const Value*, uint32_t*>> refs;
    p.a_code.assign(ca.size(), 0);
    p.b_code.assign(cb.size(), 0);
    for (size_t i = 0; i < ca.size(); ++i) {
      if (!p.a_missing[i]) refs.emplace_back(&ca[i], &p.a_code[i]);
    }
    for (size_t i = 0; i < cb.size(); ++i) {
      if (!p.b_missing[i]) refs.emplace_back(&cb[i], &p.b_code[i]);
    }
    std::stable_sort(refs.begin(), refs.end(), [](const auto& x, const auto& y) {
      return *x.first < *y.first;
    });
    uint32_t code = 0;
    for (size_t i = 0; i < refs.size(); ++i) {
      if (i > 0 && *refs[i - 1].first != *refs[i].first) ++code;
      *refs[i].second = code;
    }
  }
  return p;
}

inline double ColumnDistance(const PreparedColumn& c, size_t ai, size_t bi) {
  if (c.a_missing[ai] || c.b_missing[bi]) return 1.0;
  if (c.rule == DistanceRule::kExactMatch) {
    return c.a_code[ai] == c.b_code[bi] ? 0.0 : 1.0;
  }
  if (c.range == 0) return 0.0;
  return std::fabs(c.a_axis[ai] - c.b_axis[bi]) / c.range;
}

LinkOutcome LinkOne(const std::vector<PreparedColumn>& cols, size_t n_attacker,
                    size_t bi) {
  const double m = double(cols.size());
  double best = std::numeric_limits<double>::infinity();
  size_t best_row = 0;
  size_t ties = 0;
  for (size_t ai = 0; ai < n_attacker; ++ai) {
    double sum = 0;
    bool abandoned = false;
    for (const auto& c : cols) {
      sum += ColumnDistance(c, ai, bi);
      // Remaining terms are non-negative, so the mean can only grow.
      if (sum / m > best) {
        abandoned = true;
        break;
      }
    }
    if (abandoned) continue;
    double mean = sum / m;
    if (mean < best) {
      best = mean;
      best_row = ai;
      ties = 1;
    } else if (mean == best) {
      ++ties;
    }
  }
  if (ties != 1) return LinkOutcome::kAmbiguous;
  return best_row == bi ? LinkOutcome::kCorrectUnique : LinkOutcome::kFalseUnique;
}

}  // namespace

std::string_view DistanceRuleName(DistanceRule r) {
  return r == DistanceRule::kExactMatch ? "ExactMatch" : "NormalizedAbsolute";
}

DistanceRule ParseDistanceRule(std::string_view name) {
  if (name == "ExactMatch") return DistanceRule::kExactMatch;
  if (name == "NormalizedAbsolute") return DistanceRule::kNormalizedAbsolute;
  Fail(ErrorCode::kInvalidArgument,
       "unknown distance rule '" + std::string(name) + "'");
}

DistanceRule DistanceSpec::RuleFor(const ColumnSpec& column) const {
  if (auto it = overrides.find(column.name); it != overrides.end()) {
    return it->second;
  }
  return IsOrderedKind(column.kind) ? DistanceRule::kNormalizedAbsolute
                                    : DistanceRule::kExactMatch;
}

double LinkageResult::MarginOfError() const {
  size_t matched = correct_count + false_count;
  return matched == 0 ? 0.0 : 100.0 * double(false_count) / double(matched);
}

LinkageResult RecordLinkage(const Dataset& attacker_view,
                            const Dataset& protected_ds,
                            const Scenario& scenario, const DistanceSpec& spec) {
  ValidateScenario(attacker_view.schema(), scenario);
  ValidateScenario(protected_ds.schema(), scenario);
  if (attacker_view.row_count() != protected_ds.row_count()) {
    Fail(ErrorCode::kInvalidArgument,
         "record linkage needs row-aligned datasets (" +
             std::to_string(attacker_view.row_count()) + " vs " +
             std::to_string(protected_ds.row_count()) + " rows)");
  }
  std::vector<PreparedColumn> cols;
  for (const auto& name : scenario.qis) {
    cols.push_back(Prepare(attacker_view, protected_ds, name, spec));
  }
  const size_t n = protected_ds.row_count();
  LinkageResult out;
  out.scenario = scenario;
  out.protected_rows = n;
  out.assignments.assign(n, LinkOutcome::kAmbiguous);

  size_t workers = 1;
  if (n * n > (size_t{1} << 20)) {
    workers = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, 16);
  }
  auto run = [&](size_t begin, size_t end) {
    for (size_t bi = begin; bi < end; ++bi) {
      out.assignments[bi] = LinkOne(cols, n, bi);
    }
  };
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> threads;
    size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = std::min(n, w * chunk);
      threads.emplace_back(run, begin, std::min(n, begin + chunk));
    }
    for (auto& t : threads) t.join();
  }

  for (LinkOutcome o : out.assignments) {
    switch (o) {
      case LinkOutcome::kCorrectUnique: ++out.correct_count; break;
      case LinkOutcome::kFalseUnique: ++out.false_count; break;
      case LinkOutcome::kAmbiguous: ++out.ambiguous_count; break;
    }
  }
  if (n > 0) {
    double denom = double(n);
    out.correct_match_percent = 100.0 * double(out.correct_count) / denom;
    out.false_match_percent = 100.0 * double(out.false_count) / denom;
    out.total_match_percent =
        100.0 * double(out.correct_count + out.false_count) / denom;
    out.ambiguous_percent = 100.0 * double(out.ambiguous_count) / denom;
  }
  return out;
}

double Assessment::RiskPercent() const {
  if (metric == Metric::kRecordLinkage) {
    return linkage ? linkage->total_match_percent : 0.0;
  }
  return k_anonymity ? k_anonymity->risk_percent : 0.0;
}

std::vector<double> RecordDistances(const Dataset& attacker_view,
                                    const Dataset& protected_ds,
                                    const Scenario& scenario,
                                    const DistanceSpec& spec, size_t protected_row) {
  ValidateScenario(attacker_view.schema(), scenario);
  ValidateScenario(protected_ds.schema(), scenario);
  if (protected_row >= protected_ds.row_count()) {
    Fail(ErrorCode::kInvalidArgument,
         "row " + std::to_string(protected_row) + " out of range");
  }
  std::vector<PreparedColumn> cols;
  for (const auto& name : scenario.qis) {
    cols.push_back(Prepare(attacker_view, protected_ds, name, spec));
  }
  const double m = double(cols.size());
  std::vector<double> out(attacker_view.row_count());
  for (size_t ai = 0; ai < out.size(); ++ai) {
    double sum = 0;
    for (const auto& c : cols) sum += ColumnDistance(c, ai, protected_row);
    out[ai] = sum / m;
  }
  return out;
}

std::vector<Assessment> AssessMatrix(
    const Dataset& attacker_view, const Dataset& protected_ds,
    const std::vector<Scenario>& scenarios, const DistanceSpec& spec,
    const std::set<std::string>& perturbed_columns) {
  std::vector<Assessment> out;
  out.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    Assessment a;
    a.scenario = s;
    bool perturbed = std::any_of(s.qis.begin(), s.qis.end(), [&](const auto& q) {
      return perturbed_columns.count(q) > 0;
    });
    if (perturbed) {
      a.metric = Metric::kRecordLinkage;
      a.linkage = RecordLinkage(attacker_view, protected_ds, s, spec);
    } else {
      a.metric = Metric::kKAnonymity;
      a.k_anonymity = KAnonymityRisk(protected_ds, s);
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace sdc
