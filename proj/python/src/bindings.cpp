// Copyright 2026 The entwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "entwit/analysis.hpp"
#include "entwit/partitions.hpp"
#include "entwit/sep_oracle.hpp"
#include "entwit/states.hpp"
#include "entwit/witness_solver.hpp"

namespace py = pybind11;
using namespace entwit;

namespace {

// None in Python means a released side.
double bound_from(const std::optional<double>& b) { return b ? *b : kUnbounded; }

py::object bound_to(double b) {
  if (std::isinf(b)) return py::none();
  return py::float_(b);
}

}  // namespace

PYBIND11_MODULE(_entwit, m) {
  m.doc() = "Witnessed entanglement measures for multipartite states";

  py::register_exception<StateError>(m, "StateError", PyExc_ValueError);
  py::register_exception<PartitionError>(m, "PartitionError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<Partition>(m, "Partition")
      .def_static("parse", &Partition::parse, py::arg("text"), py::arg("n_parties") = 0)
      .def_static("finest", &Partition::finest)
      .def_static("coarsest", &Partition::coarsest)
      .def("size", &Partition::size)
      .def("diameter", &Partition::diameter)
      .def("refines", &Partition::refines)
      .def("__str__", &Partition::to_string)
      .def("__repr__", [](const Partition& p) { return "Partition('" + p.to_string() + "')"; })
      .def("__eq__", [](const Partition& a, const Partition& b) { return a.to_string() == b.to_string(); });

  m.def("enumerate_partitions", &enumerate_partitions, py::arg("m"), py::arg("k"));
  m.def("maximal_partitions", &maximal_partitions, py::arg("m"), py::arg("k"));

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Dims, Matrix>(), py::arg("dims"), py::arg("op"))
      .def_static("from_pure", &DensityMatrix::from_pure, py::arg("dims"), py::arg("psi"))
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
      .def_property_readonly("dims", &DensityMatrix::dims)
      .def_property_readonly("op", &DensityMatrix::op)
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def("purity", &DensityMatrix::purity)
      .def("rank", &DensityMatrix::rank, py::arg("tol") = 1e-8);

  m.def("ghz", &ghz);
  m.def("w_state", &w_state);
  m.def("wghz_family", &wghz_family, py::arg("q"));
  m.def("random_pure", &random_pure, py::arg("dims"), py::arg("seed"));
  m.def("random_density", &random_density, py::arg("dims"), py::arg("rank"), py::arg("seed"));
  m.def("partial_trace", py::overload_cast<const DensityMatrix&, const std::vector<int>&>(&partial_trace),
        py::arg("rho"), py::arg("keep"));

  py::class_<OracleConfig>(m, "OracleConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &OracleConfig::restarts)
      .def_readwrite("inner_tol", &OracleConfig::inner_tol)
      .def_readwrite("max_sweeps", &OracleConfig::max_sweeps)
      .def_readwrite("seed", &OracleConfig::seed);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("value", &OracleResult::value)
      .def_readonly("converged", &OracleResult::converged)
      .def_readonly("restarts_used", &OracleResult::restarts_used)
      .def_readonly("agreeing_restarts", &OracleResult::agreeing_restarts)
      .def_property_readonly("minimizer", [](const OracleResult& r) { return r.minimizer.full_vector(); });

  m.def("min_over_k_separable",
        py::overload_cast<const Matrix&, const Dims&, int, const OracleConfig&>(&min_over_k_separable),
        py::arg("w"), py::arg("dims"), py::arg("k"), py::arg("cfg") = OracleConfig{});

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_iter", &SolverConfig::max_iter)
      .def_readwrite("oracle", &SolverConfig::oracle);

  py::class_<MeasureResult>(m, "MeasureResult")
      .def_readonly("measure", &MeasureResult::measure)
      .def_readonly("k", &MeasureResult::k)
      .def_property_readonly("lower", [](const MeasureResult& r) { return bound_to(r.lower); })
      .def_property_readonly("upper", [](const MeasureResult& r) { return bound_to(r.upper); })
      .def_readonly("value", &MeasureResult::value)
      .def_readonly("gap", &MeasureResult::gap)
      .def_readonly("primal_value", &MeasureResult::primal_value)
      .def_readonly("dual_value", &MeasureResult::dual_value)
      .def_readonly("iterations", &MeasureResult::iterations)
      .def_readonly("cuts", &MeasureResult::cuts)
      .def_readonly("converged", &MeasureResult::converged)
      .def_readonly("cap_active", &MeasureResult::cap_active)
      .def_readonly("primal_weights", &MeasureResult::primal_weights)
      .def_property_readonly("witness", [](const MeasureResult& r) { return r.witness.op; })
      .def("separable_weight", &MeasureResult::separable_weight)
      .def("__repr__", [](const MeasureResult& r) {
        return "<MeasureResult " + r.measure + " value=" + std::to_string(r.value) + ">";
      });

  m.def(
      "compute_e_mn",
      [](const DensityMatrix& rho, int k, std::optional<double> lower, std::optional<double> upper,
         const SolverConfig& cfg) {
        py::gil_scoped_release nogil;
        return compute_e_mn(rho, k, bound_from(lower), bound_from(upper), cfg);
      },
      py::arg("rho"), py::arg("k"), py::arg("lower"), py::arg("upper"), py::arg("cfg") = SolverConfig{});
  m.def(
      "robustness",
      [](const DensityMatrix& rho, int k, const SolverConfig& cfg) {
        py::gil_scoped_release nogil;
        return robustness(rho, k, cfg);
      },
      py::arg("rho"), py::arg("k") = 1, py::arg("cfg") = SolverConfig{});
  m.def(
      "bsa",
      [](const DensityMatrix& rho, int k, const SolverConfig& cfg) {
        py::gil_scoped_release nogil;
        return bsa(rho, k, cfg);
      },
      py::arg("rho"), py::arg("k") = 1, py::arg("cfg") = SolverConfig{});
  m.def("negativity", &negativity, py::arg("rho"), py::arg("cut"));

  py::class_<TheoremReport>(m, "TheoremReport")
      .def_readonly("name", &TheoremReport::name)
      .def_readonly("has_verdict", &TheoremReport::has_verdict)
      .def_readonly("passed", &TheoremReport::pass)
      .def_property_readonly("residuals",
                             [](const TheoremReport& r) {
                               py::dict d;
                               for (const auto& x : r.residuals) d[py::str(x.name)] = py::make_tuple(x.value, x.threshold);
                               return d;
                             })
      .def_property_readonly("artifacts", [](const TheoremReport& r) {
        py::dict d;
        for (const auto& [n, v] : r.artifacts) d[py::str(n)] = v;
        return d;
      });

  m.def("lemma1_check", &lemma1_check, py::arg("rho"), py::arg("k"), py::arg("cfg") = SolverConfig{});
  m.def("witness_support_form_check", &witness_support_form_check, py::arg("rho"), py::arg("result"),
        py::arg("tol") = 1e-4);
}
