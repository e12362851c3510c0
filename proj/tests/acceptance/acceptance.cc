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

// Runs the release criteria end to end and prints one PASS/FAIL line each.
// Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sdc/csv.h"
#include "sdc/error.h"
#include "sdc/json_io.h"
#include "sdc/linkage.h"
#include "sdc/pipeline.h"
#include "sdc/predicate.h"
#include "sdc/risk.h"
#include "sdc/rng.h"
#include "sdc/synth.h"
#include "sdc/transforms.h"
#include "test_util.h"

namespace sdc {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

const Dataset& Cohort() {
  static const Dataset* ds = new Dataset(Generate(SyntheticConfig::Defaults()));
  return *ds;
}

// Random table with one column of each ordered and unordered kind.
Dataset MixedDataset(Rng& rng, size_t rows) {
  using testing::Spec;
  std::vector<ColumnSpec> specs = {Spec("num", ValueKind::kNumeric),
                                   Spec("cat", ValueKind::kCategorical),
                                   Spec("date", ValueKind::kDate),
                                   Spec("ts", ValueKind::kDateTime)};
  std::vector<Column> cols(4, Column(rows));
  const int64_t num_domain = rng.UniformInt(3, 40);
  const int64_t cat_domain = rng.UniformInt(2, 6);
  const int64_t day_domain = rng.UniformInt(2, 30);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < 4; ++c) {
      if (rng.Bernoulli(0.05)) {
        cols[c][r] = Missing{"NA"};
        continue;
      }
      switch (c) {
        case 0: cols[c][r] = double(rng.UniformInt(0, num_domain)); break;
        case 1: cols[c][r] = std::string(1, char('a' + rng.UniformInt(0, cat_domain - 1))); break;
        case 2: cols[c][r] = Date{18300 + rng.UniformInt(0, day_domain)}; break;
        default:
          cols[c][r] = DateTime{(18300 + rng.UniformInt(0, 3)) * 86400 +
                                rng.UniformInt(0, 3) * 3600};
      }
    }
  }
  return Dataset(Schema(specs), std::move(cols));
}

Outcome KAnonymityOracle() {
  const auto start = Clock::now();
  Rng rng(20260101);
  size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const size_t n = size_t(rng.UniformInt(1, 200));
    const size_t cols = size_t(rng.UniformInt(1, 5));
    Dataset ds = testing::RandomDataset(rng, n, cols);
    std::vector<std::string> qis = ds.schema().Names();
    RiskResult r = KAnonymityRisk(ds, Scenario{qis});
    auto o = testing::BruteKAnonymity(ds, qis);
    mismatches += r.unique_count != o.uniques || r.risk_percent != o.risk ||
                  r.min_k != o.min_k;
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 10,
          "200 datasets, " + std::to_string(mismatches) + " mismatches, " +
              Fmt(secs, 3) + " s"};
}

Outcome LinkageOracle() {
  Rng rng(20260102);
  size_t mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const size_t n = size_t(rng.UniformInt(2, 100));
    const size_t cols = size_t(rng.UniformInt(2, 5));
    Dataset a = testing::RandomDataset(rng, n, cols);
    Dataset b = ApplyUniformIntegerNoise(a, {"q0", -3, 3, rng.Next()}).data;
    const std::vector<std::string> qis = a.schema().Names();
    LinkageResult r = RecordLinkage(a, b, Scenario{qis}, {});
    auto o = testing::BruteLinkage(a, b, qis);
    const double d = double(n);
    mismatches += r.correct_match_percent != 100.0 * double(o.correct) / d ||
                  r.false_match_percent != 100.0 * double(o.wrong) / d ||
                  r.ambiguous_percent != 100.0 * double(o.ambiguous) / d ||
                  r.total_match_percent != 100.0 * double(o.correct + o.wrong) / d;
  }
  return {mismatches == 0, "50 datasets, " + std::to_string(mismatches) + " mismatches"};
}

Outcome QiMonotonicity() {
  Rng rng(20260103);
  size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    Dataset ds = testing::RandomDataset(rng, size_t(rng.UniformInt(5, 200)), 5);
    std::vector<std::string> names = ds.schema().Names();
    rng.Shuffle(names);
    const size_t k1 = size_t(rng.UniformInt(1, 3));
    const size_t k2 = k1 + size_t(rng.UniformInt(1, 2));
    std::vector<double> chain;
    for (size_t k : {k1, k2, size_t(5)}) {
      chain.push_back(KAnonymityRisk(
          ds, Scenario{{names.begin(), names.begin() + long(k)}}).risk_percent);
    }
    violations += chain[0] > chain[1] || chain[1] > chain[2];
  }
  return {violations == 0, "100 chains, " + std::to_string(violations) + " violations"};
}

Outcome CoarseningMonotonicity() {
  Rng rng(20260104);
  const Scenario s{{"num", "cat", "date", "ts"}};
  size_t violations = 0, applied = 0;
  std::map<std::string, size_t> per_step;
  for (int i = 0; i < 100; ++i) {
    Dataset ds = MixedDataset(rng, size_t(rng.UniformInt(10, 200)));
    const double before = KAnonymityRisk(ds, s).risk_percent;
    const std::string cat_a(1, char('a' + rng.UniformInt(0, 2)));
    const std::string cat_b(1, char('a' + rng.UniformInt(0, 2)));
    std::vector<TransformStep> steps = {
        SuppressCells{"cat", ParsePredicate("num:ge:" + std::to_string(rng.UniformInt(0, 20))), "*"},
        SuppressCells{"num", ParsePredicate("cat:eq:" + cat_a), "*"},
        RecodeCategories{"cat", {{cat_a, "merged"}, {cat_b, "merged"}}},
        TruncateDateTime{"ts"},
        GeneralizeDatePeriod{"date", rng.UniformInt(1, 10), std::nullopt},
        BinFixedWidth{"num", double(rng.UniformInt(1, 10)), double(rng.UniformInt(-3, 0))},
        BinQuantiles{"num", int(rng.UniformInt(2, 6))},
        BinCustomRanges{"num", {0, double(rng.UniformInt(1, 20)), 41}},
    };
    for (const TransformStep& step : steps) {
      Transformed t;
      try {
        t = Apply(ds, step);
      } catch (const Error&) {
        continue;  // e.g. quantiles of a constant column
      }
      ++applied;
      ++per_step[StepName(step)];
      violations += KAnonymityRisk(t.data, s).risk_percent > before;
    }
  }
  return {violations == 0 && per_step.size() == 7,
          std::to_string(applied) + " applications over 100 datasets, " +
              std::to_string(per_step.size()) + " transforms, " +
              std::to_string(violations) + " violations"};
}

Outcome InitialRiskTrend() {
  const double coarse = KAnonymityRisk(Cohort(), ParseScenario("Age,Gender")).risk_percent;
  const double fine =
      KAnonymityRisk(Cohort(), ParseScenario("Age,DateOfFirstPositiveLabResult,Gender"))
          .risk_percent;
  return {fine >= 95 && coarse <= 10,
          "{Age, Gender} " + Fmt(coarse) + "%, {Age, DateOfFirstPositiveLabResult, Gender} " +
              Fmt(fine) + "%"};
}

Outcome WorkflowReproduction() {
  const PipelineSpec spec = testing::LoadRecipe();
  const RunResult run = Run(Cohort(), spec);
  const auto& last = run.report.steps.back().risk;
  std::optional<size_t> min_k;
  size_t wrong_metric = 0, linkage_rows = 0;
  for (const ScenarioRow& row : last) {
    if (!row.assessment) {
      ++wrong_metric;
      continue;
    }
    const auto& q = row.scenario.qis;
    const bool noised =
        std::find(q.begin(), q.end(), "DateOfFirstPositiveLabResult") != q.end();
    linkage_rows += noised;
    wrong_metric += row.assessment->metric !=
                    (noised ? Metric::kRecordLinkage : Metric::kKAnonymity);
    if (row.scenario.Label() == "Age, Gender, Outcome" && row.assessment->k_anonymity) {
      min_k = row.assessment->k_anonymity->min_k;
    }
  }
  return {min_k && *min_k >= 3 && wrong_metric == 0 && linkage_rows > 0,
          "{Age, Gender, Outcome} min_k " + (min_k ? std::to_string(*min_k) : "n/a") +
              ", " + std::to_string(linkage_rows) + " noised-date scenarios, " +
              std::to_string(wrong_metric) + " metric mismatches"};
}

Outcome RowSuppressionCount() {
  std::set<std::string> ids;
  for (const Value& v : Cohort().column("RecordId")) ids.insert(FormatValue(v));
  const size_t repeats = Cohort().row_count() - ids.size();
  const Dataset out =
      ApplySuppressDuplicateRows(Cohort(), {{"RecordId"}, "DateOfHospitalisation"}).data;
  return {Cohort().row_count() == 1716 && repeats == 31 && out.row_count() == 1685,
          std::to_string(Cohort().row_count()) + " rows, " + std::to_string(repeats) +
              " re-incidents, " + std::to_string(out.row_count()) + " after suppression"};
}

Outcome NoiseContract() {
  const size_t n = 10000;
  Dataset zeros(Schema({testing::Spec("v", ValueKind::kNumeric)}),
                {Column(n, Value(0.0))});
  const Dataset out = ApplyUniformIntegerNoise(zeros, {"v", -3, 3, 20260105}).data;
  std::map<int64_t, size_t> counts;
  size_t out_of_bounds = 0;
  for (const Value& v : out.column("v")) {
    const double x = std::get<double>(v);
    out_of_bounds += x < -3 || x > 3;
    counts[int64_t(x)]++;
  }
  const double p = 1.0 / 7, sigma = std::sqrt(double(n) * p * (1 - p));
  double worst = 0;
  for (int64_t k = -3; k <= 3; ++k) {
    worst = std::max(worst, std::fabs(double(counts[k]) - double(n) * p) / sigma);
  }
  return {out_of_bounds == 0 && counts.size() == 7 && worst <= 5,
          std::to_string(n) + " draws, " + std::to_string(out_of_bounds) +
              " out of bounds, max deviation " + Fmt(worst) + " sigma"};
}

Outcome Determinism() {
  const PipelineSpec spec = testing::LoadRecipe();
  const RunResult a = Run(Generate(SyntheticConfig::Defaults()), spec);
  const RunResult b = Run(Generate(SyntheticConfig::Defaults()), spec);
  const bool json = RenderReport(a.report, ReportFormat::kJson) ==
                    RenderReport(b.report, ReportFormat::kJson);
  const bool md = RenderReport(a.report, ReportFormat::kMarkdown) ==
                  RenderReport(b.report, ReportFormat::kMarkdown);
  const bool csv = WriteCsv(a.data) == WriteCsv(b.data);
  return {json && md && csv, std::string("json report ") + (json ? "equal" : "differs") +
                                 ", markdown report " + (md ? "equal" : "differs") +
                                 ", export " + (csv ? "equal" : "differs")};
}

Outcome SubsetDominance() {
  const PipelineSpec spec = testing::LoadRecipe();
  // Subset scenarios may use the derived length of stay; keep every source
  // column so all of them can be evaluated on the raw cohort.
  const Dataset ds =
      ApplyDeriveDuration(Classify(Cohort(), spec.classification),
                          {"DateOfHospitalisation", "DateOfDischarge", "HospitalisationDays",
                           false, AttributeClass::kQuasiIdentifier})
          .data;
  size_t checks = 0, violations = 0;
  for (const SubsetSpec& sub : spec.subsets) {
    const std::vector<size_t> rows = MatchingRows(ds, sub.predicate);
    if (rows.empty()) continue;
    for (const Scenario& sc : sub.scenarios) {
      const auto full = Partition(ds, sc);
      size_t unique_in_full = 0;
      for (size_t r : rows) unique_in_full += full.k_of_row[r] == 1;
      const double full_rate = 100.0 * double(unique_in_full) / double(rows.size());
      ++checks;
      violations += SubsetRisk(ds, sub.predicate, sc).risk_percent < full_rate;
    }
  }
  return {violations == 0 && checks > 0 && spec.subsets.size() == 4,
          std::to_string(spec.subsets.size()) + " subsets, " + std::to_string(checks) +
              " scenario checks, " + std::to_string(violations) + " violations"};
}

}  // namespace
}  // namespace sdc

int main() {
  using sdc::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence (k-anonymity)", sdc::KAnonymityOracle},
      {"oracle equivalence (linkage)", sdc::LinkageOracle},
      {"QI monotonicity", sdc::QiMonotonicity},
      {"coarsening monotonicity", sdc::CoarseningMonotonicity},
      {"initial risk trend", sdc::InitialRiskTrend},
      {"workflow reproduction", sdc::WorkflowReproduction},
      {"row-suppression count", sdc::RowSuppressionCount},
      {"noise contract", sdc::NoiseContract},
      {"determinism", sdc::Determinism},
      {"subset dominance", sdc::SubsetDominance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n";
  }
  std::cout << (criteria.size() - size_t(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
