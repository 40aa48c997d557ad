#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modwig/algebra.hpp"
#include "modwig/hmodule.hpp"
#include "modwig/opalgebra.hpp"
#include "modwig/selftest.hpp"
#include "modwig/serialize.hpp"
#include "modwig/wigner.hpp"

namespace py = pybind11;
using namespace modwig;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "finite Hilbert C*-modules over M_d(C) and the symmetry decomposition "
      "engine";

  py::register_exception<Error>(m, "EngineError");

  py::class_<ModuleElement>(m, "ModuleElement")
      .def(py::init<Mat>(), py::arg("slots"))
      .def_property_readonly("d", &ModuleElement::dim)
      .def_property_readonly("n", &ModuleElement::slot_count)
      .def_property_readonly("slots",
                             [](const ModuleElement& f) { return f.slots(); })
      .def_static("zero", &ModuleElement::zero, py::arg("d"), py::arg("n"))
      .def_static("slot", &ModuleElement::slot, py::arg("xi"), py::arg("n"),
                  py::arg("k"))
      .def("__add__",
           [](const ModuleElement& a, const ModuleElement& b) { return a + b; })
      .def("__sub__",
           [](const ModuleElement& a, const ModuleElement& b) { return a - b; })
      .def("__rmul__",
           [](const ModuleElement& f, Complex c) { return c * f; });

  py::class_<ModularBasis>(m, "ModularBasis")
      .def_readonly("elements", &ModularBasis::elements)
      .def_readonly("d", &ModularBasis::d)
      .def_readonly("n", &ModularBasis::n)
      .def("__len__", &ModularBasis::size);

  py::class_<ModuleOperator>(m, "ModuleOperator")
      .def(py::init<Mat, Index>(), py::arg("matrix"), py::arg("d"))
      .def_readonly("matrix", &ModuleOperator::matrix)
      .def_readonly("d", &ModuleOperator::d)
      .def_property_readonly("n", &ModuleOperator::n)
      .def_static("identity", &ModuleOperator::identity, py::arg("d"),
                  py::arg("n"));

  py::class_<OperatorMap>(m, "OperatorMap")
      .def_readonly("action", &OperatorMap::action)
      .def("__call__", &OperatorMap::operator());

  py::class_<SymmetryOracle>(m, "SymmetryOracle")
      .def_property_readonly("d", &SymmetryOracle::dim)
      .def_property_readonly("n", &SymmetryOracle::slot_count)
      .def("__call__", &SymmetryOracle::operator())
      .def_static("synthetic", &SymmetryOracle::synthetic, py::arg("u"),
                  py::arg("seed"), py::arg("phase_factor") = Complex(1.0, 0.0))
      .def_static("table", &SymmetryOracle::table, py::arg("d"), py::arg("n"),
                  py::arg("entries"))
      .def_static("conjugation", &SymmetryOracle::conjugation, py::arg("d"),
                  py::arg("n"));

  py::class_<PreservationReport>(m, "PreservationReport")
      .def_readonly("max_deviation", &PreservationReport::max_deviation)
      .def_readonly("worst_pair", &PreservationReport::worst_pair)
      .def_readonly("passed", &PreservationReport::pass);

  py::class_<PhaseSample>(m, "PhaseSample")
      .def_readonly("element", &PhaseSample::element)
      .def_readonly("phase", &PhaseSample::phase)
      .def_readonly("residual", &PhaseSample::residual);

  py::class_<WignerDecomposition>(m, "WignerDecomposition")
      .def_readonly("isometry", &WignerDecomposition::isometry)
      .def_readonly("phases", &WignerDecomposition::phases)
      .def_readonly("max_residual", &WignerDecomposition::max_residual)
      .def_readonly("gauge_note", &WignerDecomposition::gauge_note);

  m.def("op_norm", &algebra::op_norm, py::arg("a"));
  m.def("abs_value", &algebra::abs, py::arg("a"));
  m.def("is_minimal_projection", &algebra::is_minimal_projection,
        py::arg("a"), py::arg("tol") = kDefaultTol);

  m.def("inner", &hmodule::inner, py::arg("f"), py::arg("g"));
  m.def("module_action", &hmodule::module_action, py::arg("a"), py::arg("f"));
  m.def("modular_gram_schmidt", &hmodule::modular_gram_schmidt,
        py::arg("generators"), py::arg("tol") = kDefaultTol);
  m.def("in_submodule", &hmodule::in_submodule, py::arg("k"), py::arg("basis"),
        py::arg("tol") = kDefaultTol);

  m.def("apply", &opalgebra::apply, py::arg("s"), py::arg("f"));
  m.def("compose", &opalgebra::compose, py::arg("s"), py::arg("t"));
  m.def("op_adjoint", &opalgebra::op_adjoint, py::arg("s"));
  m.def("rank_one", &opalgebra::rank_one, py::arg("f"), py::arg("g"));
  m.def("projection_from_set", &opalgebra::projection_from_set,
        py::arg("basis"));
  m.def("is_A_isometry", &opalgebra::is_A_isometry, py::arg("s"),
        py::arg("tol") = kDefaultTol);
  m.def("commutant_dimension", &opalgebra::commutant_dimension, py::arg("d"),
        py::arg("n"));
  m.def(
      "classify_jordan",
      [](const OperatorMap& phi, int trials, double tol) {
        return std::string(
            opalgebra::to_string(opalgebra::classify_jordan(phi, trials, tol)));
      },
      py::arg("phi"), py::arg("trials") = 64, py::arg("tol") = kDefaultTol);
  m.def(
      "extract_conjugation_isometry",
      [](const OperatorMap& phi, double tol) {
        const auto rec = opalgebra::extract_conjugation_isometry(phi, tol);
        return py::make_tuple(std::string(opalgebra::to_string(rec.kind)),
                              rec.isometry, rec.residual);
      },
      py::arg("phi"), py::arg("tol") = kDefaultTol);
  m.def("conjugation_map", &opalgebra::conjugation_map, py::arg("w"));
  m.def("transpose_conjugation_map", &opalgebra::transpose_conjugation_map,
        py::arg("w"));

  m.def("synthesize", &wigner::synthesize, py::arg("u"), py::arg("phase_seed"),
        py::arg("phase_factor") = Complex(1.0, 0.0));
  m.def("check_preservation", &wigner::check_preservation, py::arg("t"),
        py::arg("samples"), py::arg("tol") = kDefaultTol);
  m.def(
      "decompose",
      [](const SymmetryOracle& t, double tol, int phase_probes,
         std::uint64_t seed) {
        DecomposeOptions options;
        options.tol = tol;
        options.phase_probes = phase_probes;
        options.seed = seed;
        return wigner::decompose(t, options);
      },
      py::arg("t"), py::arg("tol") = kDefaultTol, py::arg("phase_probes") = 100,
      py::arg("seed") = 2026);
  m.def("build_projection_measure", &wigner::build_projection_measure,
        py::arg("t"), py::arg("basis"), py::arg("tol") = kDefaultTol);
  m.def("measure_well_defined", &wigner::measure_well_defined, py::arg("t"),
        py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
  m.def("extend_to_linear", &wigner::extend_to_linear, py::arg("t"),
        py::arg("tol") = kDefaultTol);
  m.def("induced_module_operator", &wigner::induced_module_operator,
        py::arg("w"), py::arg("d"));
  m.def("phase_aligned_frobenius_distance",
        &wigner::phase_aligned_frobenius_distance, py::arg("a"), py::arg("b"));

  m.def(
      "selftest",
      [](Index d, Index n, int trials, std::uint64_t seed, double tol) {
        selftest::Config config{d, n, trials, seed, tol};
        const auto report = selftest::run(config);
        py::list groups;
        for (const auto& g : report.groups) {
          py::dict item;
          item["name"] = g.name;
          item["cases"] = g.cases;
          item["failures"] = g.failures;
          item["skipped"] = g.skipped;
          item["worst"] = g.worst;
          groups.append(item);
        }
        return py::make_tuple(report.all_pass(), groups);
      },
      py::arg("d") = 2, py::arg("n") = 3, py::arg("trials") = 50,
      py::arg("seed") = 7, py::arg("tol") = kDefaultTol);
}
