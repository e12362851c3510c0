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

#ifndef SDC_JSON_IO_H_
#define SDC_JSON_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "sdc/error.h"
#include "sdc/linkage.h"
#include "sdc/risk.h"
#include "sdc/schema.h"
#include "sdc/transforms.h"

namespace sdc {

using Json = nlohmann::ordered_json;

// Parses a JSON document; syntax errors become kParse.
Json ParseJson(std::string_view text);

// Schema side-car: [{name, kind, class, missing_tokens, levels?}, ...].
// missing_tokens may be omitted and then take the defaults.
Json SchemaToJson(const Schema& schema);
Schema SchemaFromJson(const Json& j);

// {variant, column | columns, params, seed?}
Json StepToJson(const TransformStep& step);
TransformStep StepFromJson(const Json& j);

Json StepRecordToJson(const StepRecord& r);
StepRecord StepRecordFromJson(const Json& j);

Json ScenarioToJson(const Scenario& s);
Scenario ScenarioFromJson(const Json& j);

Json DistanceSpecToJson(const DistanceSpec& d);
DistanceSpec DistanceSpecFromJson(const Json& j);

// {scenario, metric, risk_percent, unique_count, row_count, k_histogram,
// min_k}. k_histogram keys are class sizes rendered as strings.
Json RiskResultToJson(const RiskResult& r);
RiskResult RiskResultFromJson(const Json& j);

// Rates plus counts; per-record assignments are not serialized.
Json LinkageResultToJson(const LinkageResult& r);
LinkageResult LinkageResultFromJson(const Json& j);

Json AssessmentToJson(const Assessment& a);
Assessment AssessmentFromJson(const Json& j);

// Runs `body`, converting nlohmann type/key errors into kInvalidArgument.
template <typename F>
auto WithJsonErrors(std::string_view what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed " + std::string(what) + ": " + e.what());
  }
}

}  // namespace sdc

#endif  // SDC_JSON_IO_H_
