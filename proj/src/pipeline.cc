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

#include "sdc/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "sdc/predicate.h"
#include "sdc/rng.h"

namespace sdc {

namespace {

constexpr Level kLevels[] = {Level::kLow, Level::kModerate, Level::kHigh,
                             Level::kVeryHigh};

int Rank(Decision d) { return static_cast<int>(d); }

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string_view LevelName(Level l) {
  switch (l) {
    case Level::kLow: return "L";
    case Level::kModerate: return "M";
    case Level::kHigh: return "H";
    case Level::kVeryHigh: return "VH";
  }
  return "?";
}

Level ParseLevel(std::string_view name) {
  for (Level l : kLevels) {
    if (LevelName(l) == name) return l;
  }
  if (name == "Low") return Level::kLow;
  if (name == "Moderate") return Level::kModerate;
  if (name == "High") return Level::kHigh;
  if (name == "VeryHigh") return Level::kVeryHigh;
  Fail(ErrorCode::kInvalidArgument,
       "unknown level '" + std::string(name) + "' (expected L, M, H or VH)");
}

std::string_view DecisionName(Decision d) {
  switch (d) {
    case Decision::kRelease: return "Release";
    case Decision::kReleaseWithControls: return "ReleaseWithControls";
    case Decision::kDoNotRelease: return "DoNotRelease";
  }
  return "?";
}

Decision ParseDecision(std::string_view name) {
  for (Decision d : {Decision::kRelease, Decision::kReleaseWithControls,
                     Decision::kDoNotRelease}) {
    if (DecisionName(d) == name) return d;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown decision '" + std::string(name) + "'");
}

RiskLevelCutoffs RiskLevelCutoffs::Defaults() {
  return {{{Level::kLow, 0, 5, false},
           {Level::kModerate, 5, 20, false},
           {Level::kHigh, 20, 50, false},
           {Level::kVeryHigh, 50, 100, true}}};
}

void RiskLevelCutoffs::Validate() const {
  if (ranges.empty()) Fail(ErrorCode::kInvalidArgument, "no risk levels");
  double expect = 0;
  for (size_t i = 0; i < ranges.size(); ++i) {
    const LevelRange& r = ranges[i];
    if (r.lo != expect) {
      Fail(ErrorCode::kInvalidArgument,
           "risk level " + std::string(LevelName(r.level)) + " starts at " +
               FormatNumber(r.lo) + ", expected " + FormatNumber(expect) +
               " (gap or overlap)");
    }
    if (!(r.hi > r.lo)) {
      Fail(ErrorCode::kInvalidArgument,
           "risk level " + std::string(LevelName(r.level)) + " is empty");
    }
    const bool last = i + 1 == ranges.size();
    if (r.hi_inclusive != last) {
      Fail(ErrorCode::kInvalidArgument,
           "only the last risk level may include its upper bound");
    }
    if (i > 0 && !(static_cast<int>(r.level) >
                   static_cast<int>(ranges[i - 1].level))) {
      Fail(ErrorCode::kInvalidArgument, "risk levels must increase");
    }
    expect = r.hi;
  }
  if (expect != 100) {
    Fail(ErrorCode::kInvalidArgument, "risk levels must end at 100");
  }
}

Level RiskToLevel(double risk_percent, const RiskLevelCutoffs& cutoffs) {
  if (!(risk_percent >= 0 && risk_percent <= 100)) {
    Fail(ErrorCode::kInvalidArgument,
         "risk " + FormatNumber(risk_percent) + " outside [0, 100]");
  }
  for (const LevelRange& r : cutoffs.ranges) {
    if (risk_percent >= r.lo &&
        (risk_percent < r.hi || (r.hi_inclusive && risk_percent == r.hi))) {
      return r.level;
    }
  }
  Fail(ErrorCode::kInvalidArgument,
       "risk " + FormatNumber(risk_percent) + " matches no level");
}

RiskBenefitMatrix RiskBenefitMatrix::Defaults() {
  using D = Decision;
  RiskBenefitMatrix m;
  m.cells = {{
      {D::kRelease, D::kRelease, D::kRelease, D::kRelease},
      {D::kReleaseWithControls, D::kReleaseWithControls,
       D::kReleaseWithControls, D::kReleaseWithControls},
      {D::kDoNotRelease, D::kDoNotRelease, D::kReleaseWithControls,
       D::kReleaseWithControls},
      {D::kDoNotRelease, D::kDoNotRelease, D::kDoNotRelease,
       D::kDoNotRelease},
  }};
  return m;
}

void RiskBenefitMatrix::Validate() const {
  cutoffs.Validate();
  for (size_t r = 0; r < 4; ++r) {
    for (size_t b = 0; b < 4; ++b) {
      if (r > 0 && Rank(cells[r][b]) < Rank(cells[r - 1][b])) {
        Fail(ErrorCode::kInvalidArgument,
             "decision matrix is not monotone: risk " +
                 std::string(LevelName(kLevels[r])) + " is more permissive "
                 "than risk " + std::string(LevelName(kLevels[r - 1])));
      }
      if (b > 0 && Rank(cells[r][b]) > Rank(cells[r][b - 1])) {
        Fail(ErrorCode::kInvalidArgument,
             "decision matrix is not monotone: benefit " +
                 std::string(LevelName(kLevels[b])) + " is less permissive "
                 "than benefit " + std::string(LevelName(kLevels[b - 1])));
      }
    }
  }
}

Decision Decide(const RiskBenefitMatrix& matrix, Level risk, Level benefit) {
  return matrix.cells[static_cast<size_t>(risk)][static_cast<size_t>(benefit)];
}

void PipelineSpec::Validate() const {
  if (!(thresholds.max_risk_percent >= 0 &&
        thresholds.max_risk_percent <= 100)) {
    Fail(ErrorCode::kInvalidArgument, "max_risk_percent must be in [0, 100]");
  }
  if (thresholds.min_class_size < 1) {
    Fail(ErrorCode::kInvalidArgument, "min_class_size must be at least 1");
  }
  matrix.Validate();
  auto check = [](const Scenario& s) {
    if (s.qis.empty()) Fail(ErrorCode::kInvalidArgument, "empty scenario");
    std::set<std::string> seen(s.qis.begin(), s.qis.end());
    if (seen.size() != s.qis.size()) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate column in scenario {" + s.Label() + "}");
    }
  };
  for (const Scenario& s : scenarios) check(s);
  std::set<std::string> names;
  for (const SubsetSpec& sub : subsets) {
    if (sub.name.empty()) Fail(ErrorCode::kInvalidArgument, "unnamed subset");
    if (!names.insert(sub.name).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate subset '" + sub.name + "'");
    }
    for (const Scenario& s : sub.scenarios) check(s);
  }
}

// ---------------------------------------------------------------------------
// Spec JSON

namespace {

Json CutoffsToJson(const RiskLevelCutoffs& c) {
  Json out = Json::array();
  for (const LevelRange& r : c.ranges) {
    out.push_back({{"level", LevelName(r.level)},
                   {"lo", r.lo},
                   {"hi", r.hi},
                   {"hi_inclusive", r.hi_inclusive}});
  }
  return out;
}

RiskLevelCutoffs CutoffsFromJson(const Json& j) {
  RiskLevelCutoffs c;
  for (const Json& r : j) {
    c.ranges.push_back({ParseLevel(r.at("level").get<std::string>()),
                        r.at("lo").get<double>(), r.at("hi").get<double>(),
                        r.value("hi_inclusive", false)});
  }
  return c;
}

Json MatrixToJson(const RiskBenefitMatrix& m) {
  Json out = Json::object();
  for (Level r : kLevels) {
    Json row = Json::object();
    for (Level b : kLevels) row[std::string(LevelName(b))] = DecisionName(Decide(m, r, b));
    out[std::string(LevelName(r))] = std::move(row);
  }
  return out;
}

std::array<std::array<Decision, 4>, 4> CellsFromJson(const Json& j) {
  std::array<std::array<Decision, 4>, 4> cells{};
  for (Level r : kLevels) {
    const Json& row = j.at(std::string(LevelName(r)));
    for (Level b : kLevels) {
      cells[static_cast<size_t>(r)][static_cast<size_t>(b)] =
          ParseDecision(row.at(std::string(LevelName(b))).get<std::string>());
    }
  }
  return cells;
}

std::vector<Scenario> ScenariosFromJson(const Json& j) {
  std::vector<Scenario> out;
  for (const Json& s : j) out.push_back(ScenarioFromJson(s));
  return out;
}

Json ScenariosToJson(const std::vector<Scenario>& v) {
  Json out = Json::array();
  for (const Scenario& s : v) out.push_back(ScenarioToJson(s));
  return out;
}

}  // namespace

PipelineSpec PipelineSpecFromJson(const Json& j) {
  PipelineSpec spec = WithJsonErrors("pipeline spec", [&] {
    if (!j.is_object()) {
      Fail(ErrorCode::kInvalidArgument, "pipeline spec must be an object");
    }
    PipelineSpec s;
    if (j.contains("classification")) {
      for (const auto& [name, cls] : j.at("classification").items()) {
        s.classification[name] = ParseAttributeClass(cls.get<std::string>());
      }
    }
    if (j.contains("steps")) {
      for (const Json& step : j.at("steps")) s.steps.push_back(StepFromJson(step));
    }
    if (j.contains("scenarios")) s.scenarios = ScenariosFromJson(j.at("scenarios"));
    if (j.contains("subsets")) {
      for (const Json& sub : j.at("subsets")) {
        SubsetSpec ss;
        ss.name = sub.at("name").get<std::string>();
        ss.predicate = ParsePredicate(sub.at("predicate").get<std::string>());
        ss.scenarios = sub.contains("scenarios")
                           ? ScenariosFromJson(sub.at("scenarios"))
                           : s.scenarios;
        s.subsets.push_back(std::move(ss));
      }
    }
    if (j.contains("thresholds")) {
      const Json& t = j.at("thresholds");
      s.thresholds.max_risk_percent = t.value("max_risk_percent", 100.0);
      s.thresholds.min_class_size = t.value("min_class_size", size_t{1});
    }
    if (j.contains("distance_spec")) {
      s.distance = DistanceSpecFromJson(j.at("distance_spec"));
    }
    if (j.contains("benefit_level")) {
      s.benefit_level = ParseLevel(j.at("benefit_level").get<std::string>());
    }
    s.seed = j.value("seed", uint64_t{0});
    if (j.contains("risk_levels")) {
      s.matrix.cutoffs = CutoffsFromJson(j.at("risk_levels"));
    }
    if (j.contains("decision_matrix")) {
      s.matrix.cells = CellsFromJson(j.at("decision_matrix"));
    }
    return s;
  });
  spec.Validate();
  return spec;
}

Json PipelineSpecToJson(const PipelineSpec& spec) {
  Json j = Json::object();
  Json cls = Json::object();
  for (const auto& [name, c] : spec.classification) {
    cls[name] = AttributeClassName(c);
  }
  j["classification"] = std::move(cls);
  Json steps = Json::array();
  for (const TransformStep& s : spec.steps) steps.push_back(StepToJson(s));
  j["steps"] = std::move(steps);
  j["scenarios"] = ScenariosToJson(spec.scenarios);
  Json subs = Json::array();
  for (const SubsetSpec& s : spec.subsets) {
    subs.push_back({{"name", s.name},
                    {"predicate", FormatPredicate(s.predicate)},
                    {"scenarios", ScenariosToJson(s.scenarios)}});
  }
  j["subsets"] = std::move(subs);
  j["thresholds"] = {{"max_risk_percent", spec.thresholds.max_risk_percent},
                     {"min_class_size", spec.thresholds.min_class_size}};
  j["distance_spec"] = DistanceSpecToJson(spec.distance);
  j["benefit_level"] = LevelName(spec.benefit_level);
  j["seed"] = spec.seed;
  j["risk_levels"] = CutoffsToJson(spec.matrix.cutoffs);
  j["decision_matrix"] = MatrixToJson(spec.matrix);
  return j;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

// Resolves an unseeded noise step to a seed derived from the run seed and
// the step position, so a rerun of the same spec is identical.
TransformStep ResolveSeed(const TransformStep& step, uint64_t run_seed,
                          size_t position) {
  TransformStep out = step;
  if (auto* noise = std::get_if<AddUniformIntegerNoise>(&out)) {
    if (!noise->seed) noise->seed = MixSeed(run_seed, position);
  }
  return out;
}

void TrackPerturbed(const StepRecord& rec, std::set<std::string>& perturbed) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AddUniformIntegerNoise>) {
          perturbed.insert(s.column);
        } else if constexpr (std::is_same_v<T, DropColumnsStep>) {
          for (const auto& c : s.columns) perturbed.erase(c);
        } else if constexpr (std::is_same_v<T, DeriveDurationStep>) {
          if (perturbed.count(s.start) || perturbed.count(s.end)) {
            perturbed.insert(s.new_name);
          }
          if (s.drop_sources) {
            perturbed.erase(s.start);
            perturbed.erase(s.end);
          }
        }
      },
      rec.step);
}

std::optional<FrequencyTable> MaybeFrequencies(const Dataset& ds,
                                               const std::string& column) {
  if (!ds.schema().Find(column)) return std::nullopt;
  return Frequencies(ds, column);
}

}  // namespace

Runner::Runner(const Dataset& original, PipelineSpec spec)
    : spec_(std::move(spec)),
      original_(Classify(original, spec_.classification)),
      current_(original_),
      attacker_(original_) {
  spec_.Validate();
  baseline_ = AssessAll(current_, attacker_, perturbed_);
  baseline_subsets_ = AssessSubsets(current_);
}

std::vector<ScenarioRow> Runner::AssessAll(
    const Dataset& protected_ds, const Dataset& attacker,
    const std::set<std::string>& perturbed) const {
  std::vector<ScenarioRow> rows;
  for (const Scenario& s : spec_.scenarios) {
    ScenarioRow row{s, std::nullopt, ""};
    try {
      ValidateScenario(protected_ds.schema(), s);
      auto assessed =
          AssessMatrix(attacker, protected_ds, {s}, spec_.distance, perturbed);
      Assessment a = std::move(assessed.front());
      if (a.linkage) a.linkage->assignments.clear();
      row.assessment = std::move(a);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotFound &&
          e.code() != ErrorCode::kInvalidArgument &&
          e.code() != ErrorCode::kFailedPrecondition) {
        throw;
      }
      row.note = std::string("not applicable: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SubsetRow> Runner::AssessSubsets(const Dataset& ds) const {
  std::vector<SubsetRow> rows;
  for (const SubsetSpec& sub : spec_.subsets) {
    std::optional<Dataset> filtered;
    std::string filter_error;
    try {
      filtered = FilterSubset(ds, sub.predicate);
    } catch (const Error& e) {
      filter_error = e.what();
    }
    for (const Scenario& s : sub.scenarios) {
      SubsetRow row{sub.name, s, 0, std::nullopt, "ok"};
      if (!filtered) {
        row.status = "not-applicable: " + filter_error;
      } else if (filtered->empty()) {
        row.status = "empty";
      } else {
        row.rows = filtered->row_count();
        try {
          ValidateScenario(filtered->schema(), s);
          row.result = KAnonymityRisk(*filtered, s);
        } catch (const Error& e) {
          row.status = std::string("not-applicable: ") + e.what();
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

const StepReport& Runner::Apply(const TransformStep& step) {
  const TransformStep resolved =
      ResolveSeed(step, spec_.seed, provenance_.size());
  Transformed t = sdc::Apply(current_, resolved);
  Dataset attacker = attacker_;
  if (!t.record.perturbative) {
    attacker = sdc::Apply(attacker_, t.record.step).data;
    if (attacker.row_count() != t.data.row_count()) {
      Fail(ErrorCode::kFailedPrecondition,
           "attacker view and protected data diverged in row count");
    }
  }
  std::set<std::string> perturbed = perturbed_;
  TrackPerturbed(t.record, perturbed);

  StepReport rep;
  rep.index = provenance_.size() + 1;
  rep.record = t.record;
  rep.risk = AssessAll(t.data, attacker, perturbed);
  rep.subsets = AssessSubsets(t.data);
  std::vector<std::string> cols = StepColumns(t.record.step);
  if (const auto* d = std::get_if<DeriveDurationStep>(&t.record.step)) {
    cols.push_back(d->new_name);
  }
  for (const std::string& c : cols) {
    rep.utility.push_back(
        {c, MaybeFrequencies(current_, c), MaybeFrequencies(t.data, c)});
  }

  current_ = std::move(t.data);
  attacker_ = std::move(attacker);
  perturbed_ = std::move(perturbed);
  provenance_.push_back(std::move(t.record));
  steps_.push_back(std::move(rep));
  return steps_.back();
}

void Runner::Undo() {
  if (provenance_.empty()) {
    Fail(ErrorCode::kFailedPrecondition, "nothing to undo");
  }
  provenance_.pop_back();
  steps_.pop_back();
  Rebuild();
}

void Runner::Rebuild() {
  current_ = Replay(original_, provenance_);
  Provenance truthful;
  std::set<std::string> perturbed;
  for (const StepRecord& r : provenance_) {
    if (!r.perturbative) truthful.push_back(r);
    TrackPerturbed(r, perturbed);
  }
  attacker_ = Replay(original_, truthful);
  perturbed_ = std::move(perturbed);
}

const std::vector<ScenarioRow>& Runner::CurrentMatrix() const {
  return steps_.empty() ? baseline_ : steps_.back().risk;
}

RunReport Runner::Report() const {
  RunReport r;
  r.input_rows = original_.row_count();
  r.output_rows = current_.row_count();
  r.thresholds = spec_.thresholds;
  r.baseline = baseline_;
  r.baseline_subsets = baseline_subsets_;
  r.steps = steps_;
  r.final = Judge(CurrentMatrix(), spec_, current_);
  return r;
}

FinalVerdict Judge(const std::vector<ScenarioRow>& matrix,
                   const PipelineSpec& spec, const Dataset& output) {
  FinalVerdict v;
  v.benefit_level = spec.benefit_level;
  v.passed = true;
  for (const ScenarioRow& row : matrix) {
    ScenarioVerdict sv;
    sv.scenario = row.scenario;
    if (!row.assessment) {
      sv.passed = false;
      sv.reason = row.note;
    } else {
      const Assessment& a = *row.assessment;
      sv.metric = a.metric;
      sv.risk_percent = a.RiskPercent();
      if (a.k_anonymity) sv.min_k = a.k_anonymity->min_k;
      sv.passed = true;
      if (sv.risk_percent > spec.thresholds.max_risk_percent) {
        sv.passed = false;
        sv.reason = "risk " + Fixed2(sv.risk_percent) + "% exceeds " +
                    Fixed2(spec.thresholds.max_risk_percent) + "%";
      }
      if (sv.min_k && *sv.min_k < spec.thresholds.min_class_size) {
        if (!sv.reason.empty()) sv.reason += "; ";
        sv.reason += "smallest class " + std::to_string(*sv.min_k) +
                     " below " + std::to_string(spec.thresholds.min_class_size);
        sv.passed = false;
      }
      v.max_risk_percent = std::max(v.max_risk_percent, sv.risk_percent);
      if (sv.min_k) v.min_k = v.min_k ? std::min(*v.min_k, *sv.min_k) : *sv.min_k;
    }
    v.passed = v.passed && sv.passed;
    v.scenarios.push_back(std::move(sv));
  }
  v.risk_level = RiskToLevel(v.max_risk_percent, spec.matrix.cutoffs);
  v.decision = Decide(spec.matrix, v.risk_level, v.benefit_level);
  for (const std::string& c : DirectIdentifiers(output)) {
    v.warnings.push_back("direct identifier '" + c +
                         "' is still present in the output");
  }
  return v;
}

RunResult Run(const Dataset& ds, const PipelineSpec& spec) {
  Runner runner(ds, spec);
  for (size_t i = 0; i < spec.steps.size(); ++i) {
    try {
      runner.Apply(spec.steps[i]);
    } catch (const Error& e) {
      RunReport partial = runner.Report();
      std::string msg = "step " + std::to_string(i + 1) + " (" +
                        StepName(spec.steps[i]) + "): " + e.what();
      partial.error = msg;
      throw PipelineError(e.code(), msg, std::move(partial));
    }
  }
  return {runner.current(), runner.Report(), runner.provenance()};
}

// ---------------------------------------------------------------------------
// Report JSON

Json ScenarioRowToJson(const ScenarioRow& r) {
  Json j = {{"scenario", ScenarioToJson(r.scenario)}};
  j["assessment"] = r.assessment ? AssessmentToJson(*r.assessment) : Json();
  j["note"] = r.note;
  return j;
}

Json RiskMatrixToJson(const std::vector<ScenarioRow>& rows) {
  Json out = Json::array();
  for (const ScenarioRow& r : rows) out.push_back(ScenarioRowToJson(r));
  return out;
}

Json SubsetRowToJson(const SubsetRow& r) {
  return {{"subset", r.subset},
          {"scenario", ScenarioToJson(r.scenario)},
          {"rows", r.rows},
          {"result", r.result ? RiskResultToJson(*r.result) : Json()},
          {"status", r.status}};
}

Json FrequencyTableToJson(const FrequencyTable& f) {
  Json counts = Json::array();
  for (const auto& [label, n] : f.counts) counts.push_back({label, n});
  return {{"column", f.column}, {"counts", counts}, {"missing", f.missing}};
}

namespace {

ScenarioRow ScenarioRowFromJson(const Json& j) {
  ScenarioRow r;
  r.scenario = ScenarioFromJson(j.at("scenario"));
  if (!j.at("assessment").is_null()) {
    r.assessment = AssessmentFromJson(j.at("assessment"));
  }
  r.note = j.at("note").get<std::string>();
  return r;
}

SubsetRow SubsetRowFromJson(const Json& j) {
  SubsetRow r;
  r.subset = j.at("subset").get<std::string>();
  r.scenario = ScenarioFromJson(j.at("scenario"));
  r.rows = j.at("rows").get<size_t>();
  if (!j.at("result").is_null()) r.result = RiskResultFromJson(j.at("result"));
  r.status = j.at("status").get<std::string>();
  return r;
}

Json FreqToJson(const std::optional<FrequencyTable>& f) {
  if (!f) return Json();
  return FrequencyTableToJson(*f);
}

std::optional<FrequencyTable> FreqFromJson(const Json& j) {
  if (j.is_null()) return std::nullopt;
  FrequencyTable f;
  f.column = j.at("column").get<std::string>();
  for (const Json& c : j.at("counts")) {
    f.counts.emplace_back(c.at(0).get<std::string>(), c.at(1).get<size_t>());
  }
  f.missing = j.at("missing").get<size_t>();
  return f;
}

template <typename T, typename F>
Json MapArray(const std::vector<T>& v, F f) {
  Json out = Json::array();
  for (const T& x : v) out.push_back(f(x));
  return out;
}

template <typename T, typename F>
std::vector<T> UnmapArray(const Json& j, F f) {
  std::vector<T> out;
  for (const Json& x : j) out.push_back(f(x));
  return out;
}

Json OptSize(const std::optional<size_t>& v) { return v ? Json(*v) : Json(); }
std::optional<size_t> OptSizeFrom(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<size_t>();
}

Json VerdictToJson(const FinalVerdict& v) {
  Json scen = Json::array();
  for (const ScenarioVerdict& s : v.scenarios) {
    scen.push_back({{"scenario", ScenarioToJson(s.scenario)},
                    {"metric", s.metric ? Json(MetricName(*s.metric)) : Json()},
                    {"risk_percent", s.risk_percent},
                    {"min_k", OptSize(s.min_k)},
                    {"passed", s.passed},
                    {"reason", s.reason}});
  }
  return {{"scenarios", scen},
          {"max_risk_percent", v.max_risk_percent},
          {"min_k", OptSize(v.min_k)},
          {"risk_level", LevelName(v.risk_level)},
          {"benefit_level", LevelName(v.benefit_level)},
          {"decision", DecisionName(v.decision)},
          {"passed", v.passed},
          {"warnings", v.warnings}};
}

FinalVerdict VerdictFromJson(const Json& j) {
  FinalVerdict v;
  for (const Json& s : j.at("scenarios")) {
    ScenarioVerdict sv;
    sv.scenario = ScenarioFromJson(s.at("scenario"));
    if (!s.at("metric").is_null()) {
      sv.metric = ParseMetric(s.at("metric").get<std::string>());
    }
    sv.risk_percent = s.at("risk_percent").get<double>();
    sv.min_k = OptSizeFrom(s.at("min_k"));
    sv.passed = s.at("passed").get<bool>();
    sv.reason = s.at("reason").get<std::string>();
    v.scenarios.push_back(std::move(sv));
  }
  v.max_risk_percent = j.at("max_risk_percent").get<double>();
  v.min_k = OptSizeFrom(j.at("min_k"));
  v.risk_level = ParseLevel(j.at("risk_level").get<std::string>());
  v.benefit_level = ParseLevel(j.at("benefit_level").get<std::string>());
  v.decision = ParseDecision(j.at("decision").get<std::string>());
  v.passed = j.at("passed").get<bool>();
  v.warnings = j.at("warnings").get<std::vector<std::string>>();
  return v;
}

}  // namespace

Json ReportToJson(const RunReport& report) {
  Json j = Json::object();
  j["input_rows"] = report.input_rows;
  j["output_rows"] = report.output_rows;
  j["thresholds"] = {{"max_risk_percent", report.thresholds.max_risk_percent},
                     {"min_class_size", report.thresholds.min_class_size}};
  j["baseline"] = MapArray(report.baseline, ScenarioRowToJson);
  j["baseline_subsets"] = MapArray(report.baseline_subsets, SubsetRowToJson);
  j["steps"] = MapArray(report.steps, [](const StepReport& s) {
    Json util = Json::array();
    for (const ColumnUtility& u : s.utility) {
      util.push_back({{"column", u.column},
                      {"before", FreqToJson(u.before)},
                      {"after", FreqToJson(u.after)}});
    }
    return Json{{"index", s.index},
                {"record", StepRecordToJson(s.record)},
                {"risk", MapArray(s.risk, ScenarioRowToJson)},
                {"subsets", MapArray(s.subsets, SubsetRowToJson)},
                {"utility", util}};
  });
  j["final"] = report.final ? VerdictToJson(*report.final) : Json();
  j["error"] = report.error ? Json(*report.error) : Json();
  return j;
}

RunReport ReportFromJson(const Json& j) {
  return WithJsonErrors("report", [&] {
    RunReport r;
    r.input_rows = j.at("input_rows").get<size_t>();
    r.output_rows = j.at("output_rows").get<size_t>();
    r.thresholds.max_risk_percent =
        j.at("thresholds").at("max_risk_percent").get<double>();
    r.thresholds.min_class_size =
        j.at("thresholds").at("min_class_size").get<size_t>();
    r.baseline = UnmapArray<ScenarioRow>(j.at("baseline"), ScenarioRowFromJson);
    r.baseline_subsets =
        UnmapArray<SubsetRow>(j.at("baseline_subsets"), SubsetRowFromJson);
    r.steps = UnmapArray<StepReport>(j.at("steps"), [](const Json& s) {
      StepReport rep;
      rep.index = s.at("index").get<size_t>();
      rep.record = StepRecordFromJson(s.at("record"));
      rep.risk = UnmapArray<ScenarioRow>(s.at("risk"), ScenarioRowFromJson);
      rep.subsets = UnmapArray<SubsetRow>(s.at("subsets"), SubsetRowFromJson);
      for (const Json& u : s.at("utility")) {
        rep.utility.push_back({u.at("column").get<std::string>(),
                               FreqFromJson(u.at("before")),
                               FreqFromJson(u.at("after"))});
      }
      return rep;
    });
    if (!j.at("final").is_null()) r.final = VerdictFromJson(j.at("final"));
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    return r;
  });
}

// ---------------------------------------------------------------------------
// Markdown

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  Fail(ErrorCode::kInvalidArgument,
       "unknown report format '" + std::string(name) + "'");
}

namespace {

std::string RiskCell(const ScenarioRow* row) {
  if (!row) return "n/a";
  if (!row->assessment) return "n/a";
  return Fixed2(row->assessment->RiskPercent());
}

std::string MetricCell(const ScenarioRow* row) {
  if (!row || !row->assessment) return "-";
  return std::string(MetricName(row->assessment->metric));
}

const ScenarioRow* FindRow(const std::vector<ScenarioRow>& rows,
                           const Scenario& s) {
  for (const ScenarioRow& r : rows) {
    if (r.scenario == s) return &r;
  }
  return nullptr;
}

void RenderMatrix(std::ostringstream& out, const std::vector<ScenarioRow>& rows) {
  out << "| Scenario | Metric | Risk % | Min k | Detail |\n"
         "|---|---|---:|---:|---|\n";
  for (const ScenarioRow& r : rows) {
    out << "| " << r.scenario.Label() << " | " << MetricCell(&r) << " | "
        << RiskCell(&r) << " | ";
    if (r.assessment && r.assessment->k_anonymity) {
      out << r.assessment->k_anonymity->min_k << " | "
          << r.assessment->k_anonymity->unique_count << " unique of "
          << r.assessment->k_anonymity->row_count;
    } else if (r.assessment && r.assessment->linkage) {
      const LinkageResult& l = *r.assessment->linkage;
      out << "- | correct " << Fixed2(l.correct_match_percent) << "%, false "
          << Fixed2(l.false_match_percent) << "%, ambiguous "
          << Fixed2(l.ambiguous_percent) << "%, margin of error "
          << Fixed2(l.MarginOfError()) << "%";
    } else {
      out << "- | " << r.note;
    }
    out << " |\n";
  }
}

void RenderSubsets(std::ostringstream& out, const std::vector<SubsetRow>& rows) {
  if (rows.empty()) return;
  out << "\n| Subset | Scenario | Rows | Risk % | Min k | Status |\n"
         "|---|---|---:|---:|---:|---|\n";
  for (const SubsetRow& r : rows) {
    out << "| " << r.subset << " | " << r.scenario.Label() << " | " << r.rows
        << " | " << (r.result ? Fixed2(r.result->risk_percent) : "n/a")
        << " | " << (r.result ? std::to_string(r.result->min_k) : "-")
        << " | " << r.status << " |\n";
  }
}

}  // namespace

std::string RenderReport(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) return ReportToJson(report).dump(2) + "\n";
  std::ostringstream out;
  out << "# Disclosure risk report\n\n"
      << "Input rows: " << report.input_rows
      << "  \nOutput rows: " << report.output_rows
      << "  \nThresholds: max risk " << Fixed2(report.thresholds.max_risk_percent)
      << "%, min class size " << report.thresholds.min_class_size << "\n";
  if (report.error) out << "\n**Run aborted:** " << *report.error << "\n";

  out << "\n## Baseline\n\n";
  RenderMatrix(out, report.baseline);
  RenderSubsets(out, report.baseline_subsets);

  const std::vector<ScenarioRow>* before = &report.baseline;
  for (const StepReport& s : report.steps) {
    out << "\n## Step " << s.index << ": " << StepName(s.record.step) << "\n\n"
        << "```json\n" << StepToJson(s.record.step).dump() << "\n```\n\n"
        << "Rows " << s.record.rows_before << " -> " << s.record.rows_after
        << ", cells changed " << s.record.affected_cells
        << (s.record.perturbative ? ", perturbative" : ", truthful") << "\n";
    for (const ScenarioRow& r : s.risk) {
      const ScenarioRow* prev = FindRow(*before, r.scenario);
      out << "\n#### Scenario: " << r.scenario.Label() << "\n\n"
          << "| | Metric | Risk % |\n|---|---|---:|\n"
          << "| Before | " << MetricCell(prev) << " | " << RiskCell(prev)
          << " |\n"
          << "| After | " << MetricCell(&r) << " | " << RiskCell(&r) << " |\n";
      if (!r.assessment) out << "\n" << r.note << "\n";
    }
    RenderSubsets(out, s.subsets);
    for (const ColumnUtility& u : s.utility) {
      out << "\nDistinct values of " << u.column << ": "
          << (u.before ? std::to_string(u.before->counts.size()) : "-")
          << " -> " << (u.after ? std::to_string(u.after->counts.size()) : "-")
          << "; missing: " << (u.before ? std::to_string(u.before->missing) : "-")
          << " -> " << (u.after ? std::to_string(u.after->missing) : "-") << "\n";
    }
    before = &s.risk;
  }

  if (report.final) {
    const FinalVerdict& v = *report.final;
    out << "\n## Final\n\n";
    out << "| Scenario | Metric | Risk % | Min k | Result |\n"
           "|---|---|---:|---:|---|\n";
    for (const ScenarioVerdict& s : v.scenarios) {
      out << "| " << s.scenario.Label() << " | "
          << (s.metric ? std::string(MetricName(*s.metric)) : "-") << " | "
          << (s.metric ? Fixed2(s.risk_percent) : "n/a") << " | "
          << (s.min_k ? std::to_string(*s.min_k) : "-") << " | "
          << (s.passed ? "pass" : "FAIL: " + s.reason) << " |\n";
    }
    out << "\nMaximum risk " << Fixed2(v.max_risk_percent) << "% (level "
        << LevelName(v.risk_level) << "), benefit " << LevelName(v.benefit_level)
        << ": **" << DecisionName(v.decision) << "**  \nThresholds "
        << (v.passed ? "met" : "NOT met") << "\n";
    for (const std::string& w : v.warnings) out << "\n> Warning: " << w << "\n";
  }
  return out.str();
}

}  // namespace sdc
