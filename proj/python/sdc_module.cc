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

// Python bindings. Structured values cross the boundary as plain dicts and
// lists by way of the JSON encodings in json_io.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdc/csv.h"
#include "sdc/error.h"
#include "sdc/json_io.h"
#include "sdc/linkage.h"
#include "sdc/pipeline.h"
#include "sdc/predicate.h"
#include "sdc/risk.h"
#include "sdc/synth.h"
#include "sdc/table_ops.h"
#include "sdc/transforms.h"

namespace py = pybind11;

namespace sdc {
namespace {

py::object ToPy(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json FromPy(const py::handle& obj) {
  return ParseJson(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object CellToPy(const Value& v) {
  if (IsMissing(v)) return py::none();
  if (const auto* d = std::get_if<double>(&v)) return py::float_(*d);
  return py::str(FormatValue(v));
}

Scenario ToScenario(const std::vector<std::string>& qis) { return Scenario{qis}; }

std::optional<Schema> OptionalSchema(const py::object& schema) {
  if (schema.is_none()) return std::nullopt;
  return SchemaFromJson(FromPy(schema));
}

Json LDiversityToJson(const LDiversityResult& r) {
  return {{"distinct_per_class", r.distinct_per_class}, {"min_l", r.min_l}};
}

Json RealismToJson(const RealismReport& r) {
  Json checks = Json::array();
  for (const RealismCheck& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return {{"checks", checks}, {"missing_cells", r.missing_cells},
          {"all_passed", r.AllPassed()}};
}

SyntheticConfig ConfigFrom(const py::object& config, std::optional<uint64_t> seed) {
  SyntheticConfig c = config.is_none() ? SyntheticConfig::Defaults()
                                       : SyntheticConfigFromJson(FromPy(config));
  if (seed) c.seed = *seed;
  return c;
}

}  // namespace
}  // namespace sdc

PYBIND11_MODULE(_sdc, m) {
  using namespace sdc;
  m.doc() = "Disclosure risk assessment and de-identification";

  // The module keeps both types alive; the handles are never released.
  static PyObject* error = py::exception<Error>(m, "SdcError").ptr();
  static PyObject* pipeline_error =
      py::exception<PipelineError>(m, "PipelineError", error).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](PyObject* type, const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(type)(e.what());
      inst.attr("code") = std::string(ErrorCodeName(e.code()));
      if (const auto* pe = dynamic_cast<const PipelineError*>(&e)) {
        inst.attr("partial_report") = ToPy(ReportToJson(pe->partial_report()));
      }
      PyErr_SetObject(type, inst.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PipelineError& e) {
      raise(pipeline_error, e);
    } catch (const Error& e) {
      raise(error, e);
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("rows", &Dataset::row_count)
      .def_property_readonly("columns", [](const Dataset& d) { return d.schema().Names(); })
      .def_property_readonly("schema",
                             [](const Dataset& d) { return ToPy(SchemaToJson(d.schema())); })
      .def("column",
           [](const Dataset& d, const std::string& name) {
             py::list out;
             for (const Value& v : d.column(name)) out.append(CellToPy(v));
             return out;
           })
      .def("to_csv", &WriteCsv)
      .def("classify",
           [](const Dataset& d, const std::map<std::string, std::string>& classes) {
             std::map<std::string, AttributeClass> m;
             for (const auto& [k, v] : classes) m[k] = ParseAttributeClass(v);
             return Classify(d, m);
           })
      .def("filter", [](const Dataset& d, const std::string& predicate) {
        return FilterSubset(d, ParsePredicate(predicate));
      })
      .def("__len__", &Dataset::row_count)
      .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; })
      .def("__repr__", [](const Dataset& d) {
        return "<Dataset " + std::to_string(d.row_count()) + " rows x " +
               std::to_string(d.column_count()) + " columns>";
      });

  m.def("load_csv",
        [](const std::string& path, const py::object& schema) {
          return LoadCsvFile(path, OptionalSchema(schema));
        },
        py::arg("path"), py::arg("schema") = py::none());
  m.def("parse_csv",
        [](const std::string& text, const py::object& schema) {
          return LoadCsv(text, OptionalSchema(schema));
        },
        py::arg("text"), py::arg("schema") = py::none());

  m.def("k_anonymity_risk",
        [](const Dataset& d, const std::vector<std::string>& qis) {
          return ToPy(RiskResultToJson(KAnonymityRisk(d, ToScenario(qis))));
        },
        py::arg("data"), py::arg("qis"));
  m.def("subset_risk",
        [](const Dataset& d, const std::string& predicate,
           const std::vector<std::string>& qis) {
          return ToPy(RiskResultToJson(
              SubsetRisk(d, ParsePredicate(predicate), ToScenario(qis))));
        },
        py::arg("data"), py::arg("predicate"), py::arg("qis"));
  m.def("l_diversity",
        [](const Dataset& d, const std::vector<std::string>& qis,
           const std::string& sensitive) {
          return ToPy(LDiversityToJson(LDiversity(d, ToScenario(qis), sensitive)));
        },
        py::arg("data"), py::arg("qis"), py::arg("sensitive"));
  m.def("record_linkage",
        [](const Dataset& attacker, const Dataset& prot,
           const std::vector<std::string>& qis, const py::object& distance) {
          DistanceSpec spec;
          if (!distance.is_none()) spec = DistanceSpecFromJson(FromPy(distance));
          return ToPy(LinkageResultToJson(
              RecordLinkage(attacker, prot, ToScenario(qis), spec)));
        },
        py::arg("attacker_view"), py::arg("protected"), py::arg("qis"),
        py::arg("distance") = py::none());

  m.def("apply_step",
        [](const Dataset& d, const py::object& step) {
          Transformed t = Apply(d, StepFromJson(FromPy(step)));
          return py::make_tuple(t.data, ToPy(StepRecordToJson(t.record)));
        },
        py::arg("data"), py::arg("step"));

  m.def("run_pipeline",
        [](const Dataset& d, const py::object& spec) {
          RunResult r = Run(d, PipelineSpecFromJson(FromPy(spec)));
          return py::make_tuple(r.data, ToPy(ReportToJson(r.report)));
        },
        py::arg("data"), py::arg("spec"));
  m.def("render_report",
        [](const py::object& report, const std::string& format) {
          return RenderReport(ReportFromJson(FromPy(report)), ParseReportFormat(format));
        },
        py::arg("report"), py::arg("format") = "markdown");

  m.def("generate",
        [](const py::object& config, std::optional<uint64_t> seed) {
          return Generate(ConfigFrom(config, seed));
        },
        py::arg("config") = py::none(), py::arg("seed") = py::none());
  m.def("default_config",
        [] { return ToPy(SyntheticConfigToJson(SyntheticConfig::Defaults())); });
  m.def("validate_realism",
        [](const Dataset& d, const py::object& config) {
          return ToPy(RealismToJson(ValidateRealism(d, ConfigFrom(config, std::nullopt))));
        },
        py::arg("data"), py::arg("config") = py::none());
}
