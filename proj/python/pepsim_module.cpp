// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "peps/circuit.hpp"
#include "peps/contraction.hpp"
#include "peps/cost_model.hpp"
#include "peps/error.hpp"
#include "peps/measurement.hpp"
#include "peps/oracle.hpp"
#include "peps/statistics.hpp"

namespace py = pybind11;
using namespace peps;

namespace {

py::int_ to_python(const BigInt& value) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

py::dict cost_dict(const CostReport& r) {
  py::dict d;
  d["strategy"] = to_string(r.strategy);
  d["orientation"] = to_string(r.orientation);
  d["space_elements"] = to_python(r.space_elements);
  d["space_bytes"] = to_python(r.space_bytes);
  d["time_ops"] = to_python(r.time_ops);
  d["space_human"] = format_bytes(r.space_bytes);
  d["formula"] = r.formula;
  return d;
}

ContractOptions contract_options(std::uint64_t budget) {
  ContractOptions o;
  o.budget_bytes = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(pepsim, m) {
  m.doc() = "PEPS simulator of random quantum circuits on 2-D lattices";

  // Later registrations are tried first, so derived types come after the base.
  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", base);
  py::register_exception<NumericalError>(m, "NumericalError", base);

  m.attr("DEFAULT_BUDGET_BYTES") = kDefaultBudgetBytes;

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("rows", &Circuit::rows)
      .def_readonly("cols", &Circuit::cols)
      .def_property_readonly("depth", &Circuit::depth)
      .def_property_readonly("num_qubits", &Circuit::num_qubits)
      .def_property_readonly("num_layers", [](const Circuit& c) { return c.layers.size(); })
      .def_property_readonly("num_gates",
                             [](const Circuit& c) {
                               std::size_t n = 0;
                               for (const auto& l : c.layers) n += l.gates.size();
                               return n;
                             })
      .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; })
      .def("__str__", &serialize_circuit);

  m.def("generate_rqc", &generate_rqc, py::arg("rows"), py::arg("cols"), py::arg("depth"),
        py::arg("seed"), "Random circuit of depth (1+depth+1).");
  m.def("serialize_circuit", &serialize_circuit);
  m.def("parse_circuit", [](const std::string& text) { return parse_circuit(text); });
  m.def("predicted_bond_dimension", &predicted_bond_dimension);

  py::class_<PepsState>(m, "PepsState")
      .def(py::init([](int rows, int cols, const std::string& bits) { return PepsState(rows, cols, bits); }),
           py::arg("rows"), py::arg("cols"), py::arg("bits") = "")
      .def_property_readonly("rows", &PepsState::rows)
      .def_property_readonly("cols", &PepsState::cols)
      .def_property_readonly("num_qubits", &PepsState::num_qubits)
      .def_property_readonly("bond_dimension", &PepsState::bond_dimension)
      .def_property_readonly("element_count", &PepsState::element_count)
      .def("apply_single_qubit",
           [](PepsState& s, const Matrix2& gate, int row, int col) { s.apply_single_qubit(gate, {row, col}); },
           py::arg("gate"), py::arg("row"), py::arg("col"),
           "gate: four complex entries, row-major")
      .def("apply_two_qubit",
           [](PepsState& s, const Matrix4& gate, std::pair<int, int> a, std::pair<int, int> b) {
             s.apply_two_qubit(gate, {a.first, a.second}, {b.first, b.second});
           },
           py::arg("gate"), py::arg("site_a"), py::arg("site_b"),
           "gate: sixteen complex entries, row-major, index (bit_a, bit_b)");

  m.def("evolve", [](const Circuit& c) { return evolve(c); }, py::call_guard<py::gil_scoped_release>());

  m.def(
      "amplitude",
      [](const PepsState& s, const std::string& tau, const std::string& strategy, std::uint64_t budget) {
        py::gil_scoped_release release;
        if (strategy == "auto") return amplitude(s, tau, contract_options(budget));
        return amplitude(s, tau, parse_strategy(strategy), contract_options(budget));
      },
      py::arg("state"), py::arg("tau"), py::arg("strategy") = "auto",
      py::arg("budget_bytes") = kDefaultBudgetBytes);
  m.def(
      "amplitudes",
      [](const PepsState& s, const std::vector<std::string>& taus, std::uint64_t budget) {
        py::gil_scoped_release release;
        return amplitudes(s, taus, contract_options(budget));
      },
      py::arg("state"), py::arg("taus"), py::arg("budget_bytes") = kDefaultBudgetBytes);

  m.def(
      "estimate_cost",
      [](int rows, int cols, int depth, const std::string& strategy) {
        return cost_dict(estimate_cost(rows, cols, depth, parse_strategy(strategy)));
      },
      py::arg("rows"), py::arg("cols"), py::arg("depth"), py::arg("strategy"));
  m.def(
      "plan_contraction",
      [](int rows, int cols, int depth, std::uint64_t budget) {
        return cost_dict(plan_contraction(rows, cols, depth, budget).cost);
      },
      py::arg("rows"), py::arg("cols"), py::arg("depth"), py::arg("budget_bytes") = kDefaultBudgetBytes);
  m.def("format_bytes", [](py::int_ bytes) { return format_bytes(BigInt(py::str(bytes).cast<std::string>())); });
  m.def("parse_byte_size", &parse_byte_size);

  m.def(
      "simulate_statevector",
      [](const Circuit& c) {
        const StateVector sv = [&] {
          py::gil_scoped_release release;
          return simulate_statevector(c);
        }();
        const auto amps = sv.amplitudes();
        py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(amps.size()));
        std::copy(amps.begin(), amps.end(), out.mutable_data());
        return out;
      },
      "All 2^N amplitudes; index bit (N-1-k) is qubit k in row-major order.");
  m.def("basis_index", [](const std::string& tau) { return basis_index(tau); });

  m.def(
      "porter_thomas_report",
      [](const std::vector<double>& probs, double dimension) {
        const DistributionReport r = porter_thomas_report(probs, dimension);
        py::dict d;
        d["ks_distance"] = r.ks_distance;
        d["ks_critical_99"] = r.ks_critical_99;
        d["chaotic"] = r.chaotic;
        d["histogram_csv"] = histogram_csv(r);
        return d;
      },
      py::arg("probabilities"), py::arg("dimension"));

  m.def(
      "sample_measure_all",
      [](const PepsState& s, std::size_t shots, std::uint64_t seed) {
        py::gil_scoped_release release;
        return sample_measure_all(s, shots, seed);
      },
      py::arg("state"), py::arg("shots"), py::arg("seed"));
}
