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

#ifndef SDC_PIPELINE_H_
#define SDC_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdc/dataset.h"
#include "sdc/error.h"
#include "sdc/json_io.h"
#include "sdc/linkage.h"
#include "sdc/risk.h"
#include "sdc/table_ops.h"
#include "sdc/transforms.h"

namespace sdc {

enum class Level { kLow, kModerate, kHigh, kVeryHigh };
enum class Decision { kRelease, kReleaseWithControls, kDoNotRelease };

std::string_view LevelName(Level l);  // L, M, H, VH
Level ParseLevel(std::string_view name);
std::string_view DecisionName(Decision d);
Decision ParseDecision(std::string_view name);

struct LevelRange {
  Level level = Level::kLow;
  double lo = 0;
  double hi = 0;
  bool hi_inclusive = false;
  friend bool operator==(const LevelRange&, const LevelRange&) = default;
};

// Ranges must tile [0, 100] without gaps or overlaps, in increasing order.
struct RiskLevelCutoffs {
  std::vector<LevelRange> ranges;
  // L [0,5), M [5,20), H [20,50), VH [50,100].
  static RiskLevelCutoffs Defaults();
  void Validate() const;
  friend bool operator==(const RiskLevelCutoffs&,
                         const RiskLevelCutoffs&) = default;
};

Level RiskToLevel(double risk_percent, const RiskLevelCutoffs& cutoffs);

// Release decision per (risk level, benefit level). Validate() checks the
// matrix is monotone: never more permissive as risk rises, never less
// permissive as benefit rises.
struct RiskBenefitMatrix {
  std::array<std::array<Decision, 4>, 4> cells{};  // [risk][benefit]
  RiskLevelCutoffs cutoffs = RiskLevelCutoffs::Defaults();

  // Moderate risk is released with controls at every benefit level; the
  // other rows follow from monotonicity.
  static RiskBenefitMatrix Defaults();
  void Validate() const;
  friend bool operator==(const RiskBenefitMatrix&,
                         const RiskBenefitMatrix&) = default;
};

Decision Decide(const RiskBenefitMatrix& matrix, Level risk, Level benefit);

struct Thresholds {
  double max_risk_percent = 100;
  size_t min_class_size = 1;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct SubsetSpec {
  std::string name;
  Predicate predicate;
  std::vector<Scenario> scenarios;
};

struct PipelineSpec {
  std::map<std::string, AttributeClass> classification;
  std::vector<TransformStep> steps;
  std::vector<Scenario> scenarios;
  std::vector<SubsetSpec> subsets;
  Thresholds thresholds;
  DistanceSpec distance;
  Level benefit_level = Level::kModerate;
  uint64_t seed = 0;
  RiskBenefitMatrix matrix = RiskBenefitMatrix::Defaults();

  void Validate() const;
};

PipelineSpec PipelineSpecFromJson(const Json& j);
Json PipelineSpecToJson(const PipelineSpec& spec);

// Risk of one scenario at one point of the run. `assessment` is absent when
// the scenario cannot be evaluated on the current data (for example a column
// that a later step derives); `note` then says why.
struct ScenarioRow {
  Scenario scenario;
  std::optional<Assessment> assessment;
  std::string note;
  friend bool operator==(const ScenarioRow&, const ScenarioRow&) = default;
};

struct SubsetRow {
  std::string subset;
  Scenario scenario;
  size_t rows = 0;
  std::optional<RiskResult> result;
  std::string status;  // "ok", "empty" or "not-applicable: ..."
  friend bool operator==(const SubsetRow&, const SubsetRow&) = default;
};

struct ColumnUtility {
  std::string column;
  std::optional<FrequencyTable> before;
  std::optional<FrequencyTable> after;
  friend bool operator==(const ColumnUtility&, const ColumnUtility&) = default;
};

struct StepReport {
  size_t index = 0;  // 1-based
  StepRecord record;
  std::vector<ScenarioRow> risk;
  std::vector<SubsetRow> subsets;
  std::vector<ColumnUtility> utility;
  friend bool operator==(const StepReport&, const StepReport&) = default;
};

struct ScenarioVerdict {
  Scenario scenario;
  std::optional<Metric> metric;
  double risk_percent = 0;
  std::optional<size_t> min_k;
  bool passed = false;
  std::string reason;
  friend bool operator==(const ScenarioVerdict&,
                         const ScenarioVerdict&) = default;
};

struct FinalVerdict {
  std::vector<ScenarioVerdict> scenarios;
  double max_risk_percent = 0;
  std::optional<size_t> min_k;  // over k-anonymity scenarios
  Level risk_level = Level::kLow;
  Level benefit_level = Level::kModerate;
  Decision decision = Decision::kDoNotRelease;
  bool passed = false;
  std::vector<std::string> warnings;
  friend bool operator==(const FinalVerdict&, const FinalVerdict&) = default;
};

struct RunReport {
  size_t input_rows = 0;
  size_t output_rows = 0;
  Thresholds thresholds;
  std::vector<ScenarioRow> baseline;
  std::vector<SubsetRow> baseline_subsets;
  std::vector<StepReport> steps;
  std::optional<FinalVerdict> final;
  std::optional<std::string> error;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

Json ScenarioRowToJson(const ScenarioRow& row);
Json RiskMatrixToJson(const std::vector<ScenarioRow>& rows);
Json SubsetRowToJson(const SubsetRow& row);
Json FrequencyTableToJson(const FrequencyTable& table);

Json ReportToJson(const RunReport& report);
RunReport ReportFromJson(const Json& j);

enum class ReportFormat { kJson, kMarkdown };
ReportFormat ParseReportFormat(std::string_view name);
std::string RenderReport(const RunReport& report, ReportFormat format);

// Incremental iterate-and-reassess engine. Holds the original dataset, the
// protected dataset (all steps applied) and the attacker view (truthful
// steps only), and reassesses every scenario after each step. Undo replays
// the remaining provenance on the original.
class Runner {
 public:
  // Applies spec.classification to `original` and records the baseline.
  // spec.steps is not applied; use Apply() or Run().
  Runner(const Dataset& original, PipelineSpec spec);

  // Applies one step. On error the runner state is unchanged.
  const StepReport& Apply(const TransformStep& step);
  void Undo();

  const Dataset& original() const { return original_; }
  const Dataset& current() const { return current_; }
  const Dataset& attacker_view() const { return attacker_; }
  const Provenance& provenance() const { return provenance_; }
  const std::set<std::string>& perturbed_columns() const { return perturbed_; }
  const PipelineSpec& spec() const { return spec_; }

  // Risk matrix of the current state (the last step's, or the baseline).
  const std::vector<ScenarioRow>& CurrentMatrix() const;
  RunReport Report() const;

 private:
  std::vector<ScenarioRow> AssessAll(const Dataset& protected_ds,
                                     const Dataset& attacker,
                                     const std::set<std::string>& perturbed) const;
  std::vector<SubsetRow> AssessSubsets(const Dataset& ds) const;
  void Rebuild();

  PipelineSpec spec_;
  Dataset original_;
  Dataset current_;
  Dataset attacker_;
  Provenance provenance_;
  std::set<std::string> perturbed_;
  std::vector<ScenarioRow> baseline_;
  std::vector<SubsetRow> baseline_subsets_;
  std::vector<StepReport> steps_;
};

// Evaluates the thresholds and the risk-benefit decision on a risk matrix.
FinalVerdict Judge(const std::vector<ScenarioRow>& matrix,
                   const PipelineSpec& spec, const Dataset& output);

// A failed step aborts the run; the exception carries the report up to and
// including the failure.
class PipelineError : public Error {
 public:
  PipelineError(ErrorCode code, const std::string& message, RunReport partial)
      : Error(code, message), partial_(std::move(partial)) {}
  const RunReport& partial_report() const { return partial_; }

 private:
  RunReport partial_;
};

struct RunResult {
  Dataset data;
  RunReport report;
  Provenance provenance;
};

// Applies spec.steps in order, reassessing after each.
RunResult Run(const Dataset& ds, const PipelineSpec& spec);

}  // namespace sdc

#endif  // SDC_PIPELINE_H_
