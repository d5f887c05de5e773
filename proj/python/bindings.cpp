#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qtensor/arith.hpp"
#include "qtensor/catalog.hpp"
#include "qtensor/closed_forms.hpp"
#include "qtensor/error.hpp"
#include "qtensor/group_spec.hpp"
#include "qtensor/presentation.hpp"
#include "qtensor/tensor_analyzer.hpp"

namespace py = pybind11;
using namespace qtensor;

namespace {

// Results cross the boundary as JSON text and come back as plain dicts.
py::object to_python(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

// "cyclic 6" style shorthand or a GroupSpec dict.
GroupSpec spec_of(const py::object& group) {
  if (py::isinstance<py::str>(group)) {
    std::istringstream in(group.cast<std::string>());
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    return parse_group_args(tokens);
  }
  const std::string text = py::module_::import("json").attr("dumps")(group).cast<std::string>();
  return group_spec_from_json(nlohmann::json::parse(text));
}

RunConfig config_of(std::uint64_t seed, std::size_t max_cosets) {
  RunConfig c;
  c.seed = seed;
  c.max_cosets = max_cosets;
  c.validate();
  return c;
}

py::int_ big(const mpz_class& v) { return py::int_(py::str(v.get_str())); }

}  // namespace

PYBIND11_MODULE(_qtensor, m) {
  m.doc() = "q-tensor squares of finite groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

  m.def(
      "analyze",
      [](const py::object& group, std::int64_t q, std::uint64_t seed, std::size_t max_cosets) {
        const GroupSpec spec = spec_of(group);
        TensorReport r = analyze(build_group(spec), q, config_of(seed, max_cosets).analysis_options());
        r.group = spec.label();
        return to_python(to_json(r));
      },
      py::arg("group"), py::arg("q"), py::arg("seed") = 1, py::arg("max_cosets") = RunConfig{}.max_cosets,
      "Enumerate nu^q(G) and return the report as a dict.");

  m.def(
      "verify",
      [](const py::object& groups, std::int64_t q_from, std::int64_t q_to, std::uint64_t seed) {
        std::vector<CatalogEntry> catalog;
        if (groups.is_none()) catalog = default_catalog();
        else
          for (const auto& g : groups) catalog.push_back({spec_of(py::reinterpret_borrow<py::object>(g)), {}});
        VerifySummary s;
        {
          py::gil_scoped_release release;
          s = run_verify(catalog, q_from, q_to, config_of(seed, RunConfig{}.max_cosets));
        }
        return to_python(to_json(s));
      },
      py::arg("groups") = py::none(), py::arg("q_from") = 0, py::arg("q_to") = 4, py::arg("seed") = 1,
      "Cross-check a list of groups (default catalog when None).");

  m.def(
      "export_presentation",
      [](const py::object& group, std::int64_t q, const std::string& format) {
        return export_presentation(build_nu_q(build_group(spec_of(group)), q), export_format_from_name(format));
      },
      py::arg("group"), py::arg("q"), py::arg("format") = "gap");

  m.def(
      "cyclic_tensor", [](std::int64_t n, std::int64_t q) { return to_python(to_json(cyclic_tensor(n, q))); },
      py::arg("n"), py::arg("q"), "n = 0 stands for the infinite cyclic group.");
  m.def(
      "free_tensor", [](std::int64_t n, std::int64_t q) { return to_python(to_json(free_tensor(n, q))); },
      py::arg("n"), py::arg("q"));
  m.def(
      "freenil_tensor",
      [](std::int64_t n, std::int64_t c, std::int64_t q) { return to_python(to_json(freenil_tensor(n, c, q))); },
      py::arg("n"), py::arg("c"), py::arg("q"));
  m.def(
      "freenil2_structure", [](std::int64_t n, std::int64_t q) { return to_python(to_json(freenil2_structure(n, q))); },
      py::arg("n"), py::arg("q"));
  m.def(
      "bacon_bound", [](std::int64_t n, std::int64_t q, bool coprime) { return big(bacon_bound(n, q, coprime)); },
      py::arg("n"), py::arg("q"), py::arg("coprime") = false);
  m.def(
      "witt_rank", [](std::int64_t n, std::int64_t r) { return big(witt_rank(n, r)); }, py::arg("n"), py::arg("r"));
  m.def(
      "class2_generators",
      [](std::int64_t n, std::int64_t q) {
        std::vector<std::string> out;
        for (const auto& d : class2_generators(n, q)) out.push_back(d.to_string());
        return out;
      },
      py::arg("n"), py::arg("q"));
}
