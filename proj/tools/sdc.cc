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

// Command-line front end: assess, transform, pipeline, synth, serve.
//
// Exit status: 0 success (pipeline: thresholds met), 2 pipeline thresholds
// not met, 1 any error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sdc/csv.h"
#include "sdc/json_io.h"
#include "sdc/pipeline.h"
#include "sdc/predicate.h"
#include "sdc/risk.h"
#include "sdc/service.h"
#include "sdc/synth.h"
#include "sdc/table_ops.h"

namespace {

using sdc::Json;

// data.csv -> data.schema.json
std::string SidecarPath(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".schema.json");
  return p.string();
}

// Without --schema, a sidecar next to the data is used when present.
sdc::Dataset LoadData(const std::string& data, const std::string& schema) {
  std::optional<sdc::Schema> s;
  std::string path = schema;
  if (path.empty() && std::filesystem::exists(SidecarPath(data))) {
    path = SidecarPath(data);
  }
  if (!path.empty()) {
    s = sdc::SchemaFromJson(sdc::ParseJson(sdc::ReadFile(path)));
  }
  return sdc::LoadCsvFile(data, s);
}

void WriteDataset(const sdc::Dataset& ds, const std::string& out) {
  sdc::WriteCsvFile(ds, out);
  sdc::WriteFile(SidecarPath(out), sdc::SchemaToJson(ds.schema()).dump(2) + "\n");
}

sdc::PipelineSpec LoadSpec(const std::string& path) {
  return sdc::PipelineSpecFromJson(sdc::ParseJson(sdc::ReadFile(path)));
}

int Assess(const std::string& data, const std::string& schema,
           const std::string& qis, const std::string& subset) {
  sdc::Dataset ds = LoadData(data, schema);
  const sdc::Scenario scenario = sdc::ParseScenario(qis);
  // The named columns are the quasi-identifiers, whatever the schema says.
  std::map<std::string, sdc::AttributeClass> classes;
  for (const auto& q : scenario.qis) classes[q] = sdc::AttributeClass::kQuasiIdentifier;
  ds = sdc::Classify(ds, classes);
  sdc::ValidateScenario(ds.schema(), scenario);
  const sdc::RiskResult r =
      subset.empty() ? sdc::KAnonymityRisk(ds, scenario)
                     : sdc::SubsetRisk(ds, sdc::ParsePredicate(subset), scenario);
  std::cout << sdc::RiskResultToJson(r).dump(2) << "\n";
  return 0;
}

int Transform(const std::string& data, const std::string& schema,
              const std::string& spec_path, const std::string& out,
              const std::string& provenance_path) {
  const sdc::Dataset ds = LoadData(data, schema);
  const sdc::PipelineSpec spec = LoadSpec(spec_path);
  sdc::Runner runner(ds, spec);
  for (const sdc::TransformStep& step : spec.steps) runner.Apply(step);
  WriteDataset(runner.current(), out);
  if (!provenance_path.empty()) {
    Json p = Json::array();
    for (const auto& r : runner.provenance()) p.push_back(sdc::StepRecordToJson(r));
    sdc::WriteFile(provenance_path, p.dump(2) + "\n");
  }
  std::cerr << "wrote " << runner.current().row_count() << " rows to " << out
            << "\n";
  return 0;
}

int Pipeline(const std::string& data, const std::string& schema,
             const std::string& spec_path, const std::string& report_path,
             std::string format, const std::string& out) {
  const sdc::Dataset ds = LoadData(data, schema);
  const sdc::PipelineSpec spec = LoadSpec(spec_path);
  if (format.empty()) {
    const std::string ext = std::filesystem::path(report_path).extension().string();
    format = (ext == ".md" || ext == ".markdown") ? "markdown" : "json";
  }
  const sdc::ReportFormat fmt = sdc::ParseReportFormat(format);
  try {
    sdc::RunResult result = sdc::Run(ds, spec);
    sdc::WriteFile(report_path, sdc::RenderReport(result.report, fmt));
    if (!out.empty()) WriteDataset(result.data, out);
    const sdc::FinalVerdict& v = *result.report.final;
    std::cerr << "decision " << sdc::DecisionName(v.decision) << ", thresholds "
              << (v.passed ? "met" : "not met") << "\n";
    return v.passed ? 0 : 2;
  } catch (const sdc::PipelineError& e) {
    sdc::WriteFile(report_path, sdc::RenderReport(e.partial_report(), fmt));
    throw;
  }
}

int Synth(const std::string& config_path, std::optional<uint64_t> seed,
          const std::string& out) {
  sdc::SyntheticConfig config =
      config_path.empty()
          ? sdc::SyntheticConfig::Defaults()
          : sdc::SyntheticConfigFromJson(sdc::ParseJson(sdc::ReadFile(config_path)));
  if (seed) config.seed = *seed;
  const sdc::Dataset ds = sdc::Generate(config);
  WriteDataset(ds, out);
  const sdc::RealismReport realism = sdc::ValidateRealism(ds, config);
  for (const auto& c : realism.checks) {
    if (!c.passed) std::cerr << "realism check failed: " << c.name << ": " << c.detail << "\n";
  }
  std::cerr << "wrote " << ds.row_count() << " rows to " << out << "\n";
  return 0;
}

int Serve(const std::string& addr, const std::string& state_dir) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    sdc::Fail(sdc::ErrorCode::kInvalidArgument, "--addr must be HOST:PORT");
  }
  const std::string host = addr.substr(0, colon);
  const auto port = sdc::ParseNumber(addr.substr(colon + 1));
  if (!port || *port < 0 || *port > 65535) {
    sdc::Fail(sdc::ErrorCode::kInvalidArgument, "bad port in '" + addr + "'");
  }
  sdc::ServiceOptions options;
  if (!state_dir.empty()) options.state_dir = state_dir;
  sdc::Service service(options);
  std::cerr << "listening on " << addr << "\n";
  service.Serve(host, static_cast<int>(*port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disclosure risk assessment and de-identification workbench"};
  app.require_subcommand(1);

  std::string data, schema, qis, subset, spec, out, report, format, config,
      addr, state_dir, provenance;
  std::optional<uint64_t> seed;

  auto* assess = app.add_subcommand("assess", "k-anonymity risk of a scenario");
  assess->add_option("--data", data, "CSV file")->required();
  assess->add_option("--schema", schema, "schema JSON (sidecar or inferred when omitted)");
  assess->add_option("--qis", qis, "comma-separated quasi-identifiers")->required();
  assess->add_option("--subset", subset, "predicate col:op:value,...");

  auto* transform = app.add_subcommand("transform", "apply the steps of a spec");
  transform->add_option("--data", data)->required();
  transform->add_option("--schema", schema);
  transform->add_option("--spec", spec, "pipeline spec JSON")->required();
  transform->add_option("--out", out, "output CSV")->required();
  transform->add_option("--provenance", provenance, "write applied steps here");

  auto* pipeline = app.add_subcommand("pipeline", "run a spec and write a report");
  pipeline->add_option("--data", data)->required();
  pipeline->add_option("--schema", schema);
  pipeline->add_option("--spec", spec)->required();
  pipeline->add_option("--report", report, "report path")->required();
  pipeline->add_option("--format", format, "json or markdown (default: by extension)");
  pipeline->add_option("--out", out, "also write the protected CSV");

  auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
  synth->add_option("--config", config, "synthetic config JSON");
  synth->add_option("--seed", seed);
  synth->add_option("--out", out)->required();

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--addr", addr, "HOST:PORT")->default_val("127.0.0.1:8080");
  serve->add_option("--state-dir", state_dir, "write-through state directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    if (*assess) return Assess(data, schema, qis, subset);
    if (*transform) return Transform(data, schema, spec, out, provenance);
    if (*pipeline) return Pipeline(data, schema, spec, report, format, out);
    if (*synth) return Synth(config, seed, out);
    if (*serve) return Serve(addr, state_dir);
  } catch (const sdc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
