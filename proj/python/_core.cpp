// JSON-in, JSON-out bindings; python/tbi/__init__.py turns the strings into
// Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tbi/catalog.hpp"
#include "tbi/errors.hpp"
#include "tbi/report.hpp"
#include "tbi/riemann_variety.hpp"

namespace py = pybind11;
using namespace tbi;

namespace {

InputDocument load(const std::string& text) { return parse_document(text); }

std::string validate(const std::string& text, std::optional<double> tol) {
  const InputDocument doc = load(text);
  const ValidationResult v = validate_document(doc, resolve_tolerance(tol, &doc));
  nlohmann::json out{{"exit_code", v.exit_code}, {"messages", v.messages}};
  if (v.riemann)
    out["riemann"] = {{"member", v.riemann->member},
                      {"residual", v.riemann->residual_norm},
                      {"threshold", v.riemann->threshold}};
  return out.dump();
}

std::string invariants(const std::string& text, std::optional<double> tol) {
  const InputDocument doc = load(text);
  return dump_json(invariants_report(doc, resolve_tolerance(tol, &doc)));
}

std::string decomposition(const std::string& text, std::optional<double> tol) {
  const InputDocument doc = load(text);
  return dump_json(decomposition_report(doc, resolve_tolerance(tol, &doc)));
}

std::string sample(const std::string& text, std::uint64_t seed, int count, int max_attempts,
                   std::optional<double> tol) {
  const InputDocument doc = load(text);
  const auto violations = validate_form(doc.A);
  if (!violations.empty()) throw Error(ErrorKind::Form, violations.front().describe());
  const double t = resolve_tolerance(tol, &doc);
  nlohmann::json out = nlohmann::json::array();
  for (const SampleOutcome& o : sample_points(doc.A, seed, count, max_attempts, t)) {
    if (!o.success) {
      out.push_back(nullptr);
      continue;
    }
    InputDocument point = doc;
    point.V = o.V;
    point.U = o.U;
    out.push_back(to_json(point));
  }
  return out.dump();
}

std::string group(const std::string& text, const std::string& g1, const std::string& g2) {
  const InputDocument doc = load(text);
  return group_report(doc.A, parse_group_element(g1, doc.A), parse_group_element(g2, doc.A)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Invariants of principal torus bundles over complex tori";

  // TbiError(message, exit_code); the exit code matches the CLI.
  // Deliberately leaked: must outlive interpreter teardown.
  static auto* error = new py::exception<Error>(m, "TbiError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error->ptr(), py::make_tuple(e.what(), e.exit_code()).ptr());
    }
  });

  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;
  m.def("catalog_names", &catalog_names);
  m.def("catalog", [](const std::string& name) { return to_json(make_document(catalog(name))).dump(); });
  m.def("validate", &validate, py::arg("document"), py::arg("tol") = py::none());
  m.def("invariants", &invariants, py::arg("document"), py::arg("tol") = py::none());
  m.def("decompose", &decomposition, py::arg("document"), py::arg("tol") = py::none());
  m.def("sample", &sample, py::arg("document"), py::arg("seed") = 0, py::arg("count") = 1,
        py::arg("max_attempts") = 100, py::arg("tol") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("group", &group, py::arg("document"), py::arg("g1"), py::arg("g2"));
  m.def("curve", [](int genus, int fibre_dim, std::optional<IntVector> chern) {
    return curve_report(genus, fibre_dim, chern).dump();
  }, py::arg("genus"), py::arg("fibre_dim"), py::arg("chern") = py::none());
  m.def("content_hash", [](const std::string& text) {
    return content_hash(nlohmann::json::parse(text));
  });
}
