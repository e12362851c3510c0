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

#ifndef SDC_SERVICE_H_
#define SDC_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "sdc/dataset.h"
#include "sdc/pipeline.h"

namespace sdc {

struct HttpRequest {
  std::string method;  // "GET", "POST"
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string content_type;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// HTTP status for a library error raised while serving a request.
int HttpStatusFor(ErrorCode code);

struct ServiceOptions {
  // When set, uploaded datasets and session provenance are written here and
  // reloaded on construction.
  std::optional<std::string> state_dir;
};

// The /v1 API. Handle() is a pure dispatch over an in-memory request so the
// routing can be tested without sockets; Serve() binds it to HTTP.
//
//   POST /v1/datasets                         text/csv, or JSON {csv, schema?}
//   GET  /v1/datasets/{id}/schema
//   GET  /v1/datasets/{id}/columns/{name}/histogram?bins=K
//   POST /v1/sessions                         {dataset_id, scenarios, ...}
//   GET  /v1/sessions/{id}
//   POST /v1/sessions/{id}/steps              TransformStep JSON
//   POST /v1/sessions/{id}/undo
//   GET  /v1/sessions/{id}/risk?scenario=i    or ?qis=a,b
//   GET  /v1/sessions/{id}/subset-risk?predicate=EXPR&scenario=i
//   GET  /v1/sessions/{id}/report?format=json|markdown
//   GET  /v1/sessions/{id}/export
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  HttpResponse Handle(const HttpRequest& request);

  // Blocks until Stop() is called from another thread.
  void Serve(const std::string& host, int port);
  void Stop();

 private:
  struct StoredDataset {
    Dataset data;
  };
  struct Session {
    std::string dataset_id;
    Json spec_json;
    std::unique_ptr<Runner> runner;
    mutable std::shared_mutex mutex;
  };

  HttpResponse Route(const HttpRequest& request);
  HttpResponse PostDataset(const HttpRequest& request);
  HttpResponse GetSchema(const std::string& id);
  HttpResponse GetHistogram(const std::string& id, const std::string& column,
                            const HttpRequest& request);
  HttpResponse PostSession(const HttpRequest& request);
  HttpResponse GetSession(const std::string& id);
  HttpResponse PostStep(const std::string& id, const HttpRequest& request);
  HttpResponse PostUndo(const std::string& id);
  HttpResponse GetRisk(const std::string& id, const HttpRequest& request);
  HttpResponse GetSubsetRisk(const std::string& id, const HttpRequest& request);
  HttpResponse GetReport(const std::string& id, const HttpRequest& request);
  HttpResponse GetExport(const std::string& id);

  std::shared_ptr<const StoredDataset> FindDataset(const std::string& id) const;
  std::shared_ptr<Session> FindSession(const std::string& id) const;
  std::string AddDataset(Dataset data);
  void Persist(const std::string& id, const Session& session) const;
  void LoadState();

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const StoredDataset>> datasets_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  uint64_t next_dataset_ = 1;
  uint64_t next_session_ = 1;
  void* server_ = nullptr;  // httplib::Server while serving
};

}  // namespace sdc

#endif  // SDC_SERVICE_H_
