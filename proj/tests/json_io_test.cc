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

#include <gtest/gtest.h>

#include "sdc/error.h"
#include "sdc/json_io.h"
#include "sdc/pipeline.h"
#include "sdc/synth.h"
#include "sdc/transforms.h"
#include "test_util.h"

namespace sdc {
namespace {

std::vector<TransformStep> AllVariants() {
  return {
      SuppressCells{"AgeMonth", ParsePredicate("Age:ge:1"), "*"},
      SuppressDuplicateRows{{"RecordId"}, "DateOfHospitalisation"},
      RecodeCategories{"Outcome", {{"H", "Recovered"}, {"N", "Recovered"}}},
      TruncateDateTime{"DFPLR"},
      GeneralizeDatePeriod{"DFPLR", 7, MakeDate(2020, 3, 10)},
      GeneralizeDatePeriod{"DFPLR", 14, std::nullopt},
      BinFixedWidth{"Age", 5, 0},
      BinQuantiles{"Days", 4},
      BinCustomRanges{"Age", {0, 16, 30, 120}},
      AddUniformIntegerNoise{"DFPLR", -3, 3, 42},
      AddUniformIntegerNoise{"DFPLR", -1, 2, std::nullopt},
      DropColumnsStep{{"a", "b"}, "unused"},
      DeriveDurationStep{"s", "e", "d", false, AttributeClass::kQuasiIdentifier},
  };
}

TEST(JsonIoTest, StepRoundTrip) {
  for (const TransformStep& step : AllVariants()) {
    Json j = StepToJson(step);
    EXPECT_EQ(StepFromJson(j), step) << j.dump();
    EXPECT_EQ(StepFromJson(ParseJson(j.dump())), step);
  }
}

TEST(JsonIoTest, StepRecordRoundTrip) {
  StepRecord r{BinFixedWidth{"Age", 5, 0}, 10, 9, 7, false};
  EXPECT_EQ(StepRecordFromJson(StepRecordToJson(r)), r);
}

TEST(JsonIoTest, BadStepsAreRejected) {
  EXPECT_ANY_THROW(StepFromJson(ParseJson(R"({"variant":"Nope","columns":["a"]})")));
  EXPECT_ANY_THROW(StepFromJson(ParseJson(R"({"variant":"BinFixedWidth"})")));
  EXPECT_ANY_THROW(StepFromJson(ParseJson(
      R"({"variant":"BinFixedWidth","columns":["a"],"params":{"width":"x"}})")));
  EXPECT_ANY_THROW(ParseJson("{"));
}

TEST(JsonIoTest, SchemaRoundTrip) {
  Dataset ds = Generate(SyntheticConfig::Defaults());
  EXPECT_EQ(SchemaFromJson(SchemaToJson(ds.schema())), ds.schema());
}

TEST(JsonIoTest, AssessmentRoundTrip) {
  Rng rng(6);
  Dataset a = testing::RandomDataset(rng, 40, 3);
  Dataset b = ApplyUniformIntegerNoise(a, {"q0", -1, 1, 5}).data;
  std::vector<Scenario> s = {Scenario{{"q0", "q1"}}, Scenario{{"q1", "q2"}}};
  // Per-row link outcomes are not serialized.
  for (Assessment x : AssessMatrix(a, b, s, {}, {"q0"})) {
    if (x.linkage) x.linkage->assignments.clear();
    EXPECT_EQ(AssessmentFromJson(AssessmentToJson(x)), x);
  }
  RiskResult r = KAnonymityRisk(a, s[1]);
  EXPECT_EQ(RiskResultFromJson(RiskResultToJson(r)), r);
  LinkageResult l = RecordLinkage(a, b, s[0], {});
  l.assignments.clear();
  EXPECT_EQ(LinkageResultFromJson(LinkageResultToJson(l)), l);
}

TEST(JsonIoTest, ScenarioAndDistanceRoundTrip) {
  Scenario s = ParseScenario("Age,Gender");
  EXPECT_EQ(ScenarioFromJson(ScenarioToJson(s)), s);
  DistanceSpec d;
  d.overrides["Age"] = DistanceRule::kExactMatch;
  EXPECT_EQ(DistanceSpecFromJson(DistanceSpecToJson(d)), d);
}

TEST(JsonIoTest, PipelineSpecRoundTrip) {
  PipelineSpec spec = testing::LoadRecipe();
  Json j = PipelineSpecToJson(spec);
  EXPECT_EQ(PipelineSpecToJson(PipelineSpecFromJson(j)), j);
  EXPECT_EQ(spec.steps.size(), 8u);
  EXPECT_EQ(spec.thresholds.min_class_size, 3u);
}

TEST(JsonIoTest, SyntheticConfigRoundTrip) {
  SyntheticConfig c = SyntheticConfig::Defaults();
  Json j = SyntheticConfigToJson(c);
  EXPECT_EQ(SyntheticConfigToJson(SyntheticConfigFromJson(j)), j);
  Json shipped = ParseJson(ReadFile(testing::SourcePath("configs/synthetic.json")));
  EXPECT_EQ(SyntheticConfigToJson(SyntheticConfigFromJson(shipped)), j);
}

}  // namespace
}  // namespace sdc
