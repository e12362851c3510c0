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
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "sdc/csv.h"
#include "sdc/json_io.h"
#include "sdc/pipeline.h"
#include "sdc/service.h"
#include "sdc/synth.h"
#include "sdc/transforms.h"
#include "test_util.h"

namespace sdc {
namespace {

namespace fs = std::filesystem;

HttpResponse Get(Service& s, const std::string& path,
                 std::map<std::string, std::string> query = {}) {
  return s.Handle({"GET", path, std::move(query), "", ""});
}

HttpResponse Post(Service& s, const std::string& path, const std::string& body,
                  const std::string& type = "application/json") {
  return s.Handle({"POST", path, {}, type, body});
}

Json Body(const HttpResponse& r) { return ParseJson(r.body); }

const Dataset& Cohort() {
  static const Dataset* ds = new Dataset(Generate(SyntheticConfig::Defaults()));
  return *ds;
}

std::string Upload(Service& s) {
  Json body = {{"csv", WriteCsv(Cohort())},
               {"schema", SchemaToJson(Cohort().schema())}};
  HttpResponse r = Post(s, "/v1/datasets", body.dump());
  EXPECT_EQ(r.status, 201) << r.body;
  return Body(r).at("dataset_id").get<std::string>();
}

std::string Open(Service& s, const std::string& dataset) {
  Json body = PipelineSpecToJson(testing::LoadRecipe());
  body.erase("steps");
  body["dataset_id"] = dataset;
  HttpResponse r = Post(s, "/v1/sessions", body.dump());
  EXPECT_EQ(r.status, 201) << r.body;
  return Body(r).at("session_id").get<std::string>();
}

std::string StepBody(const TransformStep& step) { return StepToJson(step).dump(); }

TEST(ServiceTest, Health) {
  Service s;
  HttpResponse r = Get(s, "/v1/health");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(Body(r).at("status"), "ok");
}

TEST(ServiceTest, DatasetUploadSchemaHistogram) {
  Service s;
  HttpResponse csv = Post(s, "/v1/datasets", "Age,Gender\n67,M\n30,F\n", "text/csv");
  ASSERT_EQ(csv.status, 201);
  const std::string id = Body(csv).at("dataset_id");
  EXPECT_EQ(Body(csv).at("rows"), 2);
  HttpResponse schema = Get(s, "/v1/datasets/" + id + "/schema");
  ASSERT_EQ(schema.status, 200);
  EXPECT_EQ(SchemaFromJson(Body(schema).at("schema")).Names(),
            (std::vector<std::string>{"Age", "Gender"}));

  const std::string big = Upload(s);
  HttpResponse h = Get(s, "/v1/datasets/" + big + "/columns/Age/histogram", {{"bins", "8"}});
  ASSERT_EQ(h.status, 200) << h.body;
  const Json hist = Body(h);
  size_t total = 0;
  for (const Json& b : hist.at("bins")) total += b.at("count").get<size_t>();
  EXPECT_EQ(total + hist.at("missing").get<size_t>(), Cohort().row_count());
  EXPECT_EQ(hist.at("bins").size(), 8u);
}

TEST(ServiceTest, ErrorStatuses) {
  Service s;
  EXPECT_EQ(Get(s, "/v1/sessions/s99").status, 404);
  EXPECT_EQ(Get(s, "/v1/datasets/d99/schema").status, 404);
  EXPECT_EQ(Get(s, "/v1/nothing").status, 404);
  EXPECT_EQ(Post(s, "/v1/health", "").status, 405);
  EXPECT_EQ(Post(s, "/v1/datasets", "x", "application/xml").status, 415);
  EXPECT_EQ(Post(s, "/v1/datasets", "Age\nabc\n1\n", "text/csv").status, 201);
  HttpResponse bad = Post(s, "/v1/datasets", "{not json");
  EXPECT_EQ(bad.status, 400);
  EXPECT_TRUE(Body(bad).at("error").contains("code"));

  const std::string d = Upload(s);
  const std::string id = Open(s, d);
  EXPECT_EQ(Post(s, "/v1/sessions/" + id + "/undo", "").status, 409);
  EXPECT_EQ(Post(s, "/v1/sessions/" + id + "/steps",
                 StepBody(BinFixedWidth{"Gender", 5, 0})).status, 409);
  EXPECT_EQ(Post(s, "/v1/sessions/" + id + "/steps",
                 R"({"variant":"Bogus","columns":["Age"]})").status, 400);
  EXPECT_EQ(Post(s, "/v1/sessions/" + id + "/steps", "x", "text/plain").status, 415);
  EXPECT_EQ(Get(s, "/v1/sessions/" + id + "/risk", {{"scenario", "99"}}).status, 400);
  EXPECT_EQ(Get(s, "/v1/sessions/" + id + "/subset-risk",
                {{"predicate", "Outcome:eq:ZZ"}}).status, 409);
  Json schema_mismatch = {{"csv", "Age\n1\n"}, {"schema", SchemaToJson(Cohort().schema())}};
  EXPECT_EQ(Post(s, "/v1/datasets", schema_mismatch.dump()).status, 422);
  Json no_dataset = {{"dataset_id", "d99"}, {"scenarios", Json::array()}};
  EXPECT_EQ(Post(s, "/v1/sessions", no_dataset.dump()).status, 404);
}

TEST(ServiceTest, StepRiskMatchesLibrary) {
  Service s;
  const std::string id = Open(s, Upload(s));
  const TransformStep step = TruncateDateTime{"DateOfFirstPositiveLabResult"};
  HttpResponse r = Post(s, "/v1/sessions/" + id + "/steps", StepBody(step));
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Body(r).at("index"), 1);

  Dataset expect = Apply(Classify(Cohort(), testing::LoadRecipe().classification), step).data;
  const Scenario sc = ParseScenario("Age,DateOfFirstPositiveLabResult,Gender");
  HttpResponse risk = Get(s, "/v1/sessions/" + id + "/risk",
                          {{"qis", "Age,DateOfFirstPositiveLabResult,Gender"}});
  ASSERT_EQ(risk.status, 200) << risk.body;
  Assessment a = AssessmentFromJson(Body(risk));
  EXPECT_EQ(a.RiskPercent(), KAnonymityRisk(expect, sc).risk_percent);
  // By index, the same value as the matrix entry.
  HttpResponse by_index = Get(s, "/v1/sessions/" + id + "/risk", {{"scenario", "4"}});
  ASSERT_EQ(by_index.status, 200);
  EXPECT_EQ(AssessmentFromJson(Body(by_index)).RiskPercent(), a.RiskPercent());

  HttpResponse sub = Get(s, "/v1/sessions/" + id + "/subset-risk",
                         {{"predicate", "Outcome:eq:D"}, {"qis", "Age,Gender"}});
  ASSERT_EQ(sub.status, 200) << sub.body;
  EXPECT_EQ(RiskResultFromJson(Body(sub)),
            SubsetRisk(expect, ParsePredicate("Outcome:eq:D"), ParseScenario("Age,Gender")));
}

TEST(ServiceTest, UndoRestoresBaseline) {
  Service s;
  const std::string id = Open(s, Upload(s));
  const Json baseline = Body(Get(s, "/v1/sessions/" + id + "/risk"));
  ASSERT_EQ(Post(s, "/v1/sessions/" + id + "/steps",
                 StepBody(TruncateDateTime{"DateOfFirstPositiveLabResult"})).status, 200);
  ASSERT_EQ(Post(s, "/v1/sessions/" + id + "/steps",
                 StepBody(AddUniformIntegerNoise{"DateOfFirstPositiveLabResult", -3, 3,
                                                 std::nullopt})).status, 200);
  EXPECT_NE(Body(Get(s, "/v1/sessions/" + id + "/risk")), baseline);
  HttpResponse u1 = Post(s, "/v1/sessions/" + id + "/undo", "");
  ASSERT_EQ(u1.status, 200);
  EXPECT_EQ(Body(u1).at("steps"), 1);
  ASSERT_EQ(Post(s, "/v1/sessions/" + id + "/undo", "").status, 200);
  EXPECT_EQ(Body(Get(s, "/v1/sessions/" + id + "/risk")), baseline);
}

TEST(ServiceTest, ReportAndExport) {
  Service s;
  const std::string d = Upload(s);
  const std::string id = Open(s, d);
  const PipelineSpec spec = testing::LoadRecipe();
  for (const TransformStep& step : spec.steps) {
    ASSERT_EQ(Post(s, "/v1/sessions/" + id + "/steps", StepBody(step)).status, 200);
  }
  RunResult lib = sdc::Run(Cohort(), spec);
  HttpResponse exp = Get(s, "/v1/sessions/" + id + "/export");
  ASSERT_EQ(exp.status, 200);
  EXPECT_EQ(exp.content_type, "text/csv");
  EXPECT_EQ(exp.body, WriteCsv(lib.data));
  HttpResponse rep = Get(s, "/v1/sessions/" + id + "/report");
  ASSERT_EQ(rep.status, 200);
  EXPECT_EQ(ReportFromJson(Body(rep)), lib.report);
  HttpResponse md = Get(s, "/v1/sessions/" + id + "/report", {{"format", "markdown"}});
  ASSERT_EQ(md.status, 200);
  EXPECT_EQ(md.body, RenderReport(lib.report, ReportFormat::kMarkdown));
  HttpResponse info = Get(s, "/v1/sessions/" + id);
  ASSERT_EQ(info.status, 200);
  EXPECT_EQ(Body(info).at("provenance").size(), spec.steps.size());
  EXPECT_EQ(Body(info).at("rows"), 1685);
}

TEST(ServiceTest, SessionWithInitialSteps) {
  Service s;
  const std::string d = Upload(s);
  Json body = PipelineSpecToJson(testing::LoadRecipe());
  body["dataset_id"] = d;
  HttpResponse r = Post(s, "/v1/sessions", body.dump());
  ASSERT_EQ(r.status, 201) << r.body;
  EXPECT_EQ(Body(r).at("steps"), 8);
}

TEST(ServiceTest, StateDirReload) {
  const fs::path dir = fs::temp_directory_path() / "sdc_service_state_test";
  fs::remove_all(dir);
  std::string id;
  Json risk;
  {
    Service s({dir.string()});
    id = Open(s, Upload(s));
    ASSERT_EQ(Post(s, "/v1/sessions/" + id + "/steps",
                   StepBody(BinFixedWidth{"Age", 5, 0})).status, 200);
    risk = Body(Get(s, "/v1/sessions/" + id + "/risk"));
  }
  Service reloaded({dir.string()});
  HttpResponse r = Get(reloaded, "/v1/sessions/" + id + "/risk");
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Body(r), risk);
  // New ids do not collide with reloaded ones.
  EXPECT_NE(Open(reloaded, Upload(reloaded)), id);
  fs::remove_all(dir);
}

TEST(ServiceTest, StatusMapping) {
  EXPECT_EQ(HttpStatusFor(ErrorCode::kInvalidArgument), 400);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kParse), 400);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kNotFound), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kFailedPrecondition), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kEmptySubset), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kSchemaMismatch), 422);
}

TEST(ServiceTest, ServesOverHttp) {
  Service s;
  const int port = 20000 + int(::getpid() % 20000);
  std::thread t([&] { s.Serve("127.0.0.1", port); });
  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int i = 0; i < 100 && !res; ++i) {
    res = client.Get("/v1/health");
    if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto up = client.Post("/v1/datasets", "Age,Gender\n1,F\n", "text/csv");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 201);
  auto opt = client.Options("/v1/datasets");
  ASSERT_TRUE(opt);
  EXPECT_EQ(opt->status, 204);
  s.Stop();
  t.join();
}

}  // namespace
}  // namespace sdc
