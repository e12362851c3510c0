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

#include "sdc/service.h"

#include <filesystem>
#include <regex>
#include <utility>
#include <vector>

#include "httplib.h"
#include "sdc/csv.h"
#include "sdc/json_io.h"
#include "sdc/predicate.h"
#include "sdc/table_ops.h"

namespace sdc {

namespace fs = std::filesystem;

namespace {

HttpResponse JsonResponse(int status, const Json& body) {
  return {status, "application/json", body.dump() + "\n"};
}

HttpResponse ErrorResponse(int status, std::string_view code,
                           const std::string& message) {
  return JsonResponse(status, {{"error", {{"code", code}, {"message", message}}}});
}

HttpResponse ErrorResponse(const Error& e) {
  return ErrorResponse(HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
}

bool HasType(const HttpRequest& r, std::string_view type) {
  const std::string& ct = r.content_type;
  return ct.compare(0, type.size(), type) == 0 &&
         (ct.size() == type.size() || ct[type.size()] == ';');
}

void RequireJson(const HttpRequest& r) {
  if (!HasType(r, "application/json")) {
    throw HttpResponse(ErrorResponse(415, "unsupported_media_type",
                                     "expected Content-Type application/json"));
  }
}

Json ParseBody(const HttpRequest& r) {
  RequireJson(r);
  return ParseJson(r.body);
}

std::string Query(const HttpRequest& r, const std::string& key,
                  std::string fallback = "") {
  auto it = r.query.find(key);
  return it == r.query.end() ? fallback : it->second;
}

size_t ParseIndex(const std::string& text, const std::string& what) {
  auto v = ParseNumber(text);
  if (!v || *v < 0 || *v != static_cast<double>(static_cast<size_t>(*v))) {
    Fail(ErrorCode::kInvalidArgument, what + " must be a non-negative integer");
  }
  return static_cast<size_t>(*v);
}

Json HistogramToJson(const Histogram& h) {
  Json bins = Json::array();
  for (const HistogramBin& b : h.bins) {
    Json bin = {{"label", b.label}, {"count", b.count}};
    if (!h.categorical) {
      bin["lo"] = b.lo;
      bin["hi"] = b.hi;
      bin["density"] = b.density;
    }
    bins.push_back(std::move(bin));
  }
  return {{"column", h.column},
          {"categorical", h.categorical},
          {"bins", bins},
          {"missing", h.missing}};
}

Json DatasetSummary(const std::string& id, const Dataset& ds) {
  return {{"dataset_id", id},
          {"rows", ds.row_count()},
          {"schema", SchemaToJson(ds.schema())}};
}

Json PerturbedJson(const Runner& r) {
  Json out = Json::array();
  for (const std::string& c : r.perturbed_columns()) out.push_back(c);
  return out;
}

Json ProvenanceJson(const Provenance& p) {
  Json out = Json::array();
  for (const StepRecord& r : p) out.push_back(StepRecordToJson(r));
  return out;
}

// Errors raised by a step (as opposed to a malformed request) report a
// violated precondition.
HttpResponse StepErrorResponse(const Error& e) {
  const int status = e.code() == ErrorCode::kSchemaMismatch ? 422 : 409;
  return ErrorResponse(status, ErrorCodeName(e.code()), e.what());
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kFailedPrecondition:
    case ErrorCode::kEmptySubset:
      return 409;
    case ErrorCode::kSchemaMismatch:
      return 422;
  }
  return 500;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (options_.state_dir) LoadState();
}

Service::~Service() { Stop(); }

HttpResponse Service::Handle(const HttpRequest& request) {
  try {
    return Route(request);
  } catch (const HttpResponse& r) {
    return r;
  } catch (const Error& e) {
    return ErrorResponse(e);
  } catch (const std::exception& e) {
    return ErrorResponse(500, "internal", e.what());
  }
}

HttpResponse Service::Route(const HttpRequest& r) {
  static const std::regex kDatasets(R"(/v1/datasets/?)");
  static const std::regex kSchema(R"(/v1/datasets/([^/]+)/schema)");
  static const std::regex kHistogram(
      R"(/v1/datasets/([^/]+)/columns/([^/]+)/histogram)");
  static const std::regex kSessions(R"(/v1/sessions/?)");
  static const std::regex kSession(R"(/v1/sessions/([^/]+))");
  static const std::regex kSessionOp(
      R"(/v1/sessions/([^/]+)/(steps|undo|risk|subset-risk|report|export))");
  std::smatch m;
  const bool get = r.method == "GET";
  const bool post = r.method == "POST";
  auto wrong_method = [&] {
    return ErrorResponse(405, "method_not_allowed",
                         r.method + " not allowed on " + r.path);
  };

  if (r.path == "/v1/health") {
    return get ? JsonResponse(200, {{"status", "ok"}}) : wrong_method();
  }
  if (std::regex_match(r.path, m, kDatasets)) {
    return post ? PostDataset(r) : wrong_method();
  }
  if (std::regex_match(r.path, m, kSchema)) {
    return get ? GetSchema(m[1]) : wrong_method();
  }
  if (std::regex_match(r.path, m, kHistogram)) {
    return get ? GetHistogram(m[1], m[2], r) : wrong_method();
  }
  if (std::regex_match(r.path, m, kSessions)) {
    return post ? PostSession(r) : wrong_method();
  }
  if (std::regex_match(r.path, m, kSession)) {
    return get ? GetSession(m[1]) : wrong_method();
  }
  if (std::regex_match(r.path, m, kSessionOp)) {
    const std::string id = m[1];
    const std::string op = m[2];
    if (op == "steps") return post ? PostStep(id, r) : wrong_method();
    if (op == "undo") return post ? PostUndo(id) : wrong_method();
    if (!get) return wrong_method();
    if (op == "risk") return GetRisk(id, r);
    if (op == "subset-risk") return GetSubsetRisk(id, r);
    if (op == "report") return GetReport(id, r);
    return GetExport(id);
  }
  return ErrorResponse(404, "not_found", "no route for " + r.path);
}

std::shared_ptr<const Service::StoredDataset> Service::FindDataset(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = datasets_.find(id);
  if (it == datasets_.end()) {
    Fail(ErrorCode::kNotFound, "unknown dataset '" + id + "'");
  }
  return it->second;
}

std::shared_ptr<Service::Session> Service::FindSession(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    Fail(ErrorCode::kNotFound, "unknown session '" + id + "'");
  }
  return it->second;
}

std::string Service::AddDataset(Dataset data) {
  auto stored = std::make_shared<StoredDataset>(StoredDataset{std::move(data)});
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    id = "d" + std::to_string(next_dataset_++);
    datasets_[id] = stored;
  }
  if (options_.state_dir) {
    const fs::path dir = fs::path(*options_.state_dir) / "datasets";
    fs::create_directories(dir);
    WriteFile((dir / (id + ".csv")).string(), WriteCsv(stored->data));
    WriteFile((dir / (id + ".schema.json")).string(),
              SchemaToJson(stored->data.schema()).dump(2));
  }
  return id;
}

HttpResponse Service::PostDataset(const HttpRequest& r) {
  std::string csv;
  std::optional<Schema> schema;
  if (HasType(r, "text/csv")) {
    csv = r.body;
  } else if (HasType(r, "application/json")) {
    const Json body = ParseJson(r.body);
    WithJsonErrors("dataset upload", [&] {
      csv = body.at("csv").get<std::string>();
      if (body.contains("schema") && !body.at("schema").is_null()) {
        schema = SchemaFromJson(body.at("schema"));
      }
      return 0;
    });
  } else {
    return ErrorResponse(415, "unsupported_media_type",
                         "expected Content-Type text/csv or application/json");
  }
  Dataset ds = LoadCsv(csv, schema);
  const std::string id = AddDataset(ds);
  return JsonResponse(201, DatasetSummary(id, ds));
}

HttpResponse Service::GetSchema(const std::string& id) {
  auto ds = FindDataset(id);
  return JsonResponse(200, DatasetSummary(id, ds->data));
}

HttpResponse Service::GetHistogram(const std::string& id,
                                   const std::string& column,
                                   const HttpRequest& r) {
  auto ds = FindDataset(id);
  const size_t bins = ParseIndex(Query(r, "bins", "10"), "bins");
  if (bins == 0) Fail(ErrorCode::kInvalidArgument, "bins must be positive");
  return JsonResponse(200, HistogramToJson(ComputeHistogram(ds->data, column, bins)));
}

HttpResponse Service::PostSession(const HttpRequest& r) {
  Json body = ParseBody(r);
  if (!body.is_object()) {
    Fail(ErrorCode::kInvalidArgument, "session request must be an object");
  }
  const std::string dataset_id = WithJsonErrors("session request", [&] {
    return body.at("dataset_id").get<std::string>();
  });
  auto ds = FindDataset(dataset_id);
  Json steps = body.contains("steps") ? body.at("steps") : Json::array();
  body.erase("dataset_id");
  body.erase("steps");
  PipelineSpec spec = PipelineSpecFromJson(body);

  auto session = std::make_shared<Session>();
  session->dataset_id = dataset_id;
  session->spec_json = PipelineSpecToJson(spec);
  try {
    session->runner = std::make_unique<Runner>(ds->data, spec);
  } catch (const Error& e) {
    return StepErrorResponse(e);
  }
  for (const Json& s : steps) {
    TransformStep step = StepFromJson(s);
    try {
      session->runner->Apply(step);
    } catch (const Error& e) {
      return StepErrorResponse(e);
    }
  }
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    id = "s" + std::to_string(next_session_++);
    sessions_[id] = session;
  }
  Persist(id, *session);
  Json out = {{"session_id", id},
              {"dataset_id", dataset_id},
              {"steps", session->runner->provenance().size()},
              {"risk", RiskMatrixToJson(session->runner->CurrentMatrix())}};
  return JsonResponse(201, out);
}

HttpResponse Service::GetSession(const std::string& id) {
  auto s = FindSession(id);
  std::shared_lock lock(s->mutex);
  const Runner& r = *s->runner;
  Json scenarios = Json::array();
  for (const Scenario& sc : r.spec().scenarios) scenarios.push_back(ScenarioToJson(sc));
  return JsonResponse(200, {{"session_id", id},
                            {"dataset_id", s->dataset_id},
                            {"rows", r.current().row_count()},
                            {"schema", SchemaToJson(r.current().schema())},
                            {"scenarios", scenarios},
                            {"provenance", ProvenanceJson(r.provenance())},
                            {"perturbed_columns", PerturbedJson(r)},
                            {"risk", RiskMatrixToJson(r.CurrentMatrix())}});
}

HttpResponse Service::PostStep(const std::string& id, const HttpRequest& r) {
  auto s = FindSession(id);
  const TransformStep step = StepFromJson(ParseBody(r));
  std::unique_lock lock(s->mutex);
  try {
    const StepReport& rep = s->runner->Apply(step);
    Json subsets = Json::array();
    for (const SubsetRow& row : rep.subsets) subsets.push_back(SubsetRowToJson(row));
    Json out = {{"index", rep.index},
                {"record", StepRecordToJson(rep.record)},
                {"risk", RiskMatrixToJson(rep.risk)},
                {"subsets", subsets},
                {"perturbed_columns", PerturbedJson(*s->runner)}};
    Persist(id, *s);
    return JsonResponse(200, out);
  } catch (const Error& e) {
    return StepErrorResponse(e);
  }
}

HttpResponse Service::PostUndo(const std::string& id) {
  auto s = FindSession(id);
  std::unique_lock lock(s->mutex);
  s->runner->Undo();
  Persist(id, *s);
  return JsonResponse(200, {{"steps", s->runner->provenance().size()},
                            {"risk", RiskMatrixToJson(s->runner->CurrentMatrix())},
                            {"perturbed_columns", PerturbedJson(*s->runner)}});
}

HttpResponse Service::GetRisk(const std::string& id, const HttpRequest& r) {
  auto s = FindSession(id);
  std::shared_lock lock(s->mutex);
  const Runner& run = *s->runner;
  const std::string qis = Query(r, "qis");
  if (!qis.empty()) {
    const Scenario sc = ParseScenario(qis);
    ValidateScenario(run.current().schema(), sc);
    auto a = AssessMatrix(run.attacker_view(), run.current(), {sc},
                          run.spec().distance, run.perturbed_columns());
    if (a.front().linkage) a.front().linkage->assignments.clear();
    return JsonResponse(200, AssessmentToJson(a.front()));
  }
  const std::string index = Query(r, "scenario");
  const auto& matrix = run.CurrentMatrix();
  if (index.empty()) return JsonResponse(200, RiskMatrixToJson(matrix));
  const size_t i = ParseIndex(index, "scenario");
  if (i >= matrix.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "scenario index " + index + " out of range (" +
             std::to_string(matrix.size()) + " scenarios)");
  }
  if (!matrix[i].assessment) {
    Fail(ErrorCode::kFailedPrecondition, matrix[i].note);
  }
  return JsonResponse(200, AssessmentToJson(*matrix[i].assessment));
}

HttpResponse Service::GetSubsetRisk(const std::string& id, const HttpRequest& r) {
  auto s = FindSession(id);
  std::shared_lock lock(s->mutex);
  const Runner& run = *s->runner;
  const Predicate predicate = ParsePredicate(Query(r, "predicate"));
  Scenario sc;
  if (!Query(r, "qis").empty()) {
    sc = ParseScenario(Query(r, "qis"));
  } else {
    const auto& scenarios = run.spec().scenarios;
    const size_t i = ParseIndex(Query(r, "scenario", "0"), "scenario");
    if (i >= scenarios.size()) {
      Fail(ErrorCode::kInvalidArgument, "scenario index out of range");
    }
    sc = scenarios[i];
  }
  ValidateScenario(run.current().schema(), sc);
  return JsonResponse(200, RiskResultToJson(SubsetRisk(run.current(), predicate, sc)));
}

HttpResponse Service::GetReport(const std::string& id, const HttpRequest& r) {
  auto s = FindSession(id);
  std::shared_lock lock(s->mutex);
  const ReportFormat format = ParseReportFormat(Query(r, "format", "json"));
  const std::string body = RenderReport(s->runner->Report(), format);
  return {200, format == ReportFormat::kJson ? "application/json" : "text/markdown",
          body};
}

HttpResponse Service::GetExport(const std::string& id) {
  auto s = FindSession(id);
  std::shared_lock lock(s->mutex);
  return {200, "text/csv", WriteCsv(s->runner->current())};
}

void Service::Persist(const std::string& id, const Session& session) const {
  if (!options_.state_dir) return;
  const fs::path dir = fs::path(*options_.state_dir) / "sessions";
  fs::create_directories(dir);
  Json j = {{"dataset_id", session.dataset_id},
            {"spec", session.spec_json},
            {"provenance", ProvenanceJson(session.runner->provenance())}};
  const fs::path tmp = dir / (id + ".json.tmp");
  WriteFile(tmp.string(), j.dump(2));
  fs::rename(tmp, dir / (id + ".json"));
}

void Service::LoadState() {
  const fs::path root(*options_.state_dir);
  auto number_of = [](const std::string& stem, char prefix) -> uint64_t {
    if (stem.size() < 2 || stem[0] != prefix) return 0;
    auto v = ParseNumber(stem.substr(1));
    return v ? static_cast<uint64_t>(*v) : 0;
  };
  if (fs::is_directory(root / "datasets")) {
    for (const auto& entry : fs::directory_iterator(root / "datasets")) {
      const fs::path p = entry.path();
      if (p.extension() != ".csv") continue;
      const std::string id = p.stem().string();
      const fs::path schema_path = root / "datasets" / (id + ".schema.json");
      Schema schema = SchemaFromJson(ParseJson(ReadFile(schema_path.string())));
      datasets_[id] = std::make_shared<StoredDataset>(
          StoredDataset{LoadCsv(ReadFile(p.string()), schema)});
      next_dataset_ = std::max(next_dataset_, number_of(id, 'd') + 1);
    }
  }
  if (fs::is_directory(root / "sessions")) {
    for (const auto& entry : fs::directory_iterator(root / "sessions")) {
      const fs::path p = entry.path();
      if (p.extension() != ".json") continue;
      const std::string id = p.stem().string();
      const Json j = ParseJson(ReadFile(p.string()));
      auto session = std::make_shared<Session>();
      session->dataset_id = j.at("dataset_id").get<std::string>();
      session->spec_json = j.at("spec");
      auto ds = datasets_.at(session->dataset_id);
      session->runner = std::make_unique<Runner>(
          ds->data, PipelineSpecFromJson(session->spec_json));
      for (const Json& rec : j.at("provenance")) {
        session->runner->Apply(StepRecordFromJson(rec).step);
      }
      sessions_[id] = session;
      next_session_ = std::max(next_session_, number_of(id, 's') + 1);
    }
  }
}

void Service::Serve(const std::string& host, int port) {
  httplib::Server server;
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    r.content_type = req.get_header_value("Content-Type");
    r.body = req.body;
    HttpResponse out = Handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.Get(R"(/v1/.*)", bridge);
  server.Post(R"(/v1/.*)", bridge);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    server_ = &server;
  }
  const bool ok = server.listen(host, port);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    server_ = nullptr;
  }
  if (!ok) {
    Fail(ErrorCode::kFailedPrecondition,
         "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void Service::Stop() {
  std::lock_guard<std::mutex> lock(mutex_);
  if (server_) static_cast<httplib::Server*>(server_)->stop();
}

}  // namespace sdc
