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

#include "sdc/json_io.h"

#include "sdc/error.h"

namespace sdc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json Params(const Json& j) {
  return j.contains("params") ? j.at("params") : Json::object();
}

std::string SingleColumn(const Json& j) {
  if (j.contains("column")) return j.at("column").get<std::string>();
  const Json& cols = j.at("columns");
  if (cols.size() != 1) {
    Fail(ErrorCode::kInvalidArgument, "step expects exactly one column");
  }
  return cols.at(0).get<std::string>();
}

std::vector<std::string> ColumnList(const Json& j) {
  if (j.contains("columns")) return j.at("columns").get<std::vector<std::string>>();
  return {j.at("column").get<std::string>()};
}

}  // namespace

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Json SchemaToJson(const Schema& schema) {
  Json out = Json::array();
  for (const auto& c : schema.columns()) {
    Json col;
    col["name"] = c.name;
    col["kind"] = KindName(c.kind);
    col["class"] = AttributeClassName(c.attribute_class);
    col["missing_tokens"] = c.missing_tokens;
    if (!c.levels.empty()) col["levels"] = c.levels;
    out.push_back(std::move(col));
  }
  return out;
}

Schema SchemaFromJson(const Json& j) {
  return WithJsonErrors("schema", [&] {
    std::vector<ColumnSpec> specs;
    for (const auto& col : j) {
      ColumnSpec c;
      c.name = col.at("name").get<std::string>();
      c.kind = ParseKind(col.at("kind").get<std::string>());
      if (col.contains("class")) {
        c.attribute_class = ParseAttributeClass(col.at("class").get<std::string>());
      }
      if (col.contains("missing_tokens")) {
        c.missing_tokens = col.at("missing_tokens").get<std::set<std::string>>();
      }
      if (col.contains("levels")) {
        c.levels = col.at("levels").get<std::vector<std::string>>();
      }
      specs.push_back(std::move(c));
    }
    return Schema(std::move(specs));
  });
}

Json StepToJson(const TransformStep& step) {
  Json j;
  j["variant"] = StepName(step);
  Json params = Json::object();
  std::visit(
      Overloaded{
          [&](const SuppressCells& p) {
            j["column"] = p.column;
            params["where"] = FormatPredicate(p.where);
            params["symbol"] = p.symbol;
          },
          [&](const SuppressDuplicateRows& p) {
            j["columns"] = p.key_columns;
            params["order_column"] = p.order_column;
          },
          [&](const RecodeCategories& p) {
            j["column"] = p.column;
            Json mapping = Json::object();
            for (const auto& [k, v] : p.mapping) mapping[k] = v;
            params["mapping"] = std::move(mapping);
          },
          [&](const TruncateDateTime& p) { j["column"] = p.column; },
          [&](const GeneralizeDatePeriod& p) {
            j["column"] = p.column;
            params["period_days"] = p.period_days;
            params["anchor"] = p.anchor ? FormatDate(*p.anchor) : "dataset-min";
          },
          [&](const BinFixedWidth& p) {
            j["column"] = p.column;
            params["width"] = p.width;
            params["origin"] = p.origin;
          },
          [&](const BinQuantiles& p) {
            j["column"] = p.column;
            params["q"] = p.q;
          },
          [&](const BinCustomRanges& p) {
            j["column"] = p.column;
            params["edges"] = p.edges;
          },
          [&](const AddUniformIntegerNoise& p) {
            j["column"] = p.column;
            params["lo"] = p.lo;
            params["hi"] = p.hi;
            if (p.seed) j["seed"] = *p.seed;
          },
          [&](const DropColumnsStep& p) {
            j["columns"] = p.columns;
            params["reason"] = p.reason;
          },
          [&](const DeriveDurationStep& p) {
            j["columns"] = {p.start, p.end};
            params["new_name"] = p.new_name;
            params["drop_sources"] = p.drop_sources;
            params["class"] = AttributeClassName(p.attribute_class);
          },
      },
      step);
  j["params"] = std::move(params);
  return j;
}

TransformStep StepFromJson(const Json& j) {
  return WithJsonErrors("transform step", [&]() -> TransformStep {
    const std::string variant = j.at("variant").get<std::string>();
    const Json params = Params(j);
    if (variant == "SuppressCells") {
      SuppressCells p;
      p.column = SingleColumn(j);
      p.where = ParsePredicate(params.value("where", std::string()));
      p.symbol = params.value("symbol", std::string("*"));
      return p;
    }
    if (variant == "SuppressDuplicateRows") {
      SuppressDuplicateRows p;
      p.key_columns = ColumnList(j);
      p.order_column = params.at("order_column").get<std::string>();
      return p;
    }
    if (variant == "RecodeCategories") {
      RecodeCategories p;
      p.column = SingleColumn(j);
      for (const auto& [k, v] : params.at("mapping").items()) {
        p.mapping[k] = v.get<std::string>();
      }
      return p;
    }
    if (variant == "TruncateDateTime") return TruncateDateTime{SingleColumn(j)};
    if (variant == "GeneralizeDatePeriod") {
      GeneralizeDatePeriod p;
      p.column = SingleColumn(j);
      p.period_days = params.at("period_days").get<int64_t>();
      std::string anchor = params.value("anchor", std::string("dataset-min"));
      if (anchor != "dataset-min") {
        auto d = ParseDate(anchor);
        if (!d) Fail(ErrorCode::kInvalidArgument, "bad anchor date '" + anchor + "'");
        p.anchor = *d;
      }
      return p;
    }
    if (variant == "BinFixedWidth") {
      BinFixedWidth p;
      p.column = SingleColumn(j);
      p.width = params.at("width").get<double>();
      p.origin = params.value("origin", 0.0);
      return p;
    }
    if (variant == "BinQuantiles") {
      BinQuantiles p;
      p.column = SingleColumn(j);
      p.q = params.at("q").get<int>();
      return p;
    }
    if (variant == "BinCustomRanges") {
      BinCustomRanges p;
      p.column = SingleColumn(j);
      p.edges = params.at("edges").get<std::vector<double>>();
      return p;
    }
    if (variant == "AddUniformIntegerNoise") {
      AddUniformIntegerNoise p;
      p.column = SingleColumn(j);
      p.lo = params.at("lo").get<int64_t>();
      p.hi = params.at("hi").get<int64_t>();
      if (j.contains("seed") && !j.at("seed").is_null()) {
        p.seed = j.at("seed").get<uint64_t>();
      }
      return p;
    }
    if (variant == "DropColumns") {
      DropColumnsStep p;
      p.columns = ColumnList(j);
      p.reason = params.value("reason", std::string());
      return p;
    }
    if (variant == "DeriveDuration") {
      DeriveDurationStep p;
      auto cols = ColumnList(j);
      if (cols.size() != 2) {
        Fail(ErrorCode::kInvalidArgument,
             "DeriveDuration expects columns [start, end]");
      }
      p.start = cols[0];
      p.end = cols[1];
      p.new_name = params.at("new_name").get<std::string>();
      p.drop_sources = params.value("drop_sources", true);
      if (params.contains("class")) {
        p.attribute_class =
            ParseAttributeClass(params.at("class").get<std::string>());
      }
      return p;
    }
    Fail(ErrorCode::kInvalidArgument, "unknown step variant '" + variant + "'");
  });
}

Json StepRecordToJson(const StepRecord& r) {
  Json j;
  j["step"] = StepToJson(r.step);
  j["rows_before"] = r.rows_before;
  j["rows_after"] = r.rows_after;
  j["affected_cells"] = r.affected_cells;
  j["perturbative"] = r.perturbative;
  return j;
}

StepRecord StepRecordFromJson(const Json& j) {
  return WithJsonErrors("step record", [&] {
    StepRecord r;
    r.step = StepFromJson(j.at("step"));
    r.rows_before = j.at("rows_before").get<size_t>();
    r.rows_after = j.at("rows_after").get<size_t>();
    r.affected_cells = j.at("affected_cells").get<size_t>();
    r.perturbative = j.at("perturbative").get<bool>();
    return r;
  });
}

Json ScenarioToJson(const Scenario& s) { return s.qis; }

Scenario ScenarioFromJson(const Json& j) {
  return WithJsonErrors("scenario", [&] {
    if (j.is_string()) return ParseScenario(j.get<std::string>());
    return Scenario{j.get<std::vector<std::string>>()};
  });
}

Json DistanceSpecToJson(const DistanceSpec& d) {
  Json j = Json::object();
  for (const auto& [name, rule] : d.overrides) j[name] = DistanceRuleName(rule);
  return j;
}

DistanceSpec DistanceSpecFromJson(const Json& j) {
  return WithJsonErrors("distance spec", [&] {
    DistanceSpec d;
    for (const auto& [name, rule] : j.items()) {
      d.overrides[name] = ParseDistanceRule(rule.get<std::string>());
    }
    return d;
  });
}

Json RiskResultToJson(const RiskResult& r) {
  Json j;
  j["scenario"] = ScenarioToJson(r.scenario);
  j["metric"] = MetricName(r.metric);
  j["risk_percent"] = r.risk_percent;
  j["unique_count"] = r.unique_count;
  j["row_count"] = r.row_count;
  Json hist = Json::object();
  for (const auto& [k, count] : r.k_histogram) hist[std::to_string(k)] = count;
  j["k_histogram"] = std::move(hist);
  j["min_k"] = r.min_k;
  return j;
}

RiskResult RiskResultFromJson(const Json& j) {
  return WithJsonErrors("risk result", [&] {
    RiskResult r;
    r.scenario = ScenarioFromJson(j.at("scenario"));
    r.metric = ParseMetric(j.at("metric").get<std::string>());
    r.risk_percent = j.at("risk_percent").get<double>();
    r.unique_count = j.at("unique_count").get<size_t>();
    r.row_count = j.at("row_count").get<size_t>();
    for (const auto& [k, count] : j.at("k_histogram").items()) {
      r.k_histogram[std::stoull(k)] = count.get<size_t>();
    }
    r.min_k = j.at("min_k").get<size_t>();
    return r;
  });
}

Json LinkageResultToJson(const LinkageResult& r) {
  Json j;
  j["scenario"] = ScenarioToJson(r.scenario);
  j["metric"] = MetricName(Metric::kRecordLinkage);
  j["protected_rows"] = r.protected_rows;
  j["total_match_percent"] = r.total_match_percent;
  j["correct_match_percent"] = r.correct_match_percent;
  j["false_match_percent"] = r.false_match_percent;
  j["ambiguous_percent"] = r.ambiguous_percent;
  j["margin_of_error_percent"] = r.MarginOfError();
  j["correct_count"] = r.correct_count;
  j["false_count"] = r.false_count;
  j["ambiguous_count"] = r.ambiguous_count;
  return j;
}

LinkageResult LinkageResultFromJson(const Json& j) {
  return WithJsonErrors("linkage result", [&] {
    LinkageResult r;
    r.scenario = ScenarioFromJson(j.at("scenario"));
    r.protected_rows = j.at("protected_rows").get<size_t>();
    r.total_match_percent = j.at("total_match_percent").get<double>();
    r.correct_match_percent = j.at("correct_match_percent").get<double>();
    r.false_match_percent = j.at("false_match_percent").get<double>();
    r.ambiguous_percent = j.at("ambiguous_percent").get<double>();
    r.correct_count = j.at("correct_count").get<size_t>();
    r.false_count = j.at("false_count").get<size_t>();
    r.ambiguous_count = j.at("ambiguous_count").get<size_t>();
    return r;
  });
}

Json AssessmentToJson(const Assessment& a) {
  if (a.metric == Metric::kRecordLinkage && a.linkage) {
    Json j = LinkageResultToJson(*a.linkage);
    j["risk_percent"] = a.RiskPercent();
    return j;
  }
  if (a.k_anonymity) return RiskResultToJson(*a.k_anonymity);
  Fail(ErrorCode::kInvalidArgument, "assessment carries no result");
}

Assessment AssessmentFromJson(const Json& j) {
  return WithJsonErrors("assessment", [&] {
    Assessment a;
    a.scenario = ScenarioFromJson(j.at("scenario"));
    a.metric = ParseMetric(j.at("metric").get<std::string>());
    if (a.metric == Metric::kRecordLinkage) {
      a.linkage = LinkageResultFromJson(j);
    } else {
      a.k_anonymity = RiskResultFromJson(j);
    }
    return a;
  });
}

}  // namespace sdc
