// Thin wrapper: results cross the boundary as JSON text and are decoded on
// the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asinv/errors.hpp"
#include "asinv/roadmap.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace asinv;

namespace {

RoadmapOptions options(bool ring, std::uint64_t seed, bool timing) {
  RoadmapOptions o;
  o.ring = ring;
  o.seed = seed;
  o.timing = timing;
  return o;
}

}  // namespace

PYBIND11_MODULE(_asinv, m) {
  m.doc() = "Invariants of Artin-Schreier curves";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_AssertionError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def(
      "describe",
      [](std::uint32_t p, std::vector<std::uint32_t> orders) {
        const ComponentDescriptor c = describe(p, std::move(orders));
        nlohmann::ordered_json j;
        j["p"] = c.p;
        j["orders"] = c.orders;
        j["g"] = c.g;
        j["s"] = c.s;
        j["D"] = c.D;
        j["dim"] = c.dim;
        return j.dump();
      },
      py::arg("p"), py::arg("orders"));
  m.def(
      "roadmap",
      [](std::uint32_t p, const std::vector<std::uint32_t>& orders, bool ring, std::uint64_t seed, bool timing) {
        py::gil_scoped_release nogil;
        return run_roadmap(p, orders, options(ring, seed, timing)).to_json();
      },
      py::arg("p"), py::arg("orders"), py::arg("ring") = false, py::arg("seed") = 1, py::arg("timing") = true);
  m.def(
      "table1",
      [](bool timing) {
        py::gil_scoped_release nogil;
        return table1_json(run_table1(options(true, 1, timing)));
      },
      py::arg("timing") = true);
  m.def(
      "iso",
      [](const std::string& a, const std::string& b) {
        py::gil_scoped_release nogil;
        return compare_curves(a, b).to_json();
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "verify",
      [](const std::string& name, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        return run_suite(name, options(false, seed, false)).to_json();
      },
      py::arg("suite"), py::arg("seed") = 1);
  m.def("suite_names", &suite_names);
}
