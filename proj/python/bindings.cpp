#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chbound/delta.hpp"
#include "chbound/efficiency.hpp"
#include "chbound/eigen.hpp"
#include "chbound/inequality.hpp"
#include "chbound/state.hpp"

namespace py = pybind11;
using namespace chbound;

PYBIND11_MODULE(chbound, m) {
    m.doc() = "Detector-efficiency analysis of n-site Clauser-Horne inequalities";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::enum_<Setting>(m, "Setting").value("A", Setting::A).value("B", Setting::B);
    py::enum_<Requirement>(m, "Requirement")
        .value("One", Requirement::One)
        .value("Any", Requirement::Any);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int, std::vector<Complex>>(), py::arg("n_sites"), py::arg("amplitudes"))
        .def_property_readonly("n_sites", &StateVector::n_sites)
        .def_property_readonly("dimension", &StateVector::dimension)
        .def_property_readonly("amplitudes", &StateVector::amplitudes)
        .def("__repr__", [](const StateVector& s) {
            return "StateVector(n_sites=" + std::to_string(s.n_sites()) + ")";
        });

    py::class_<MeasurementContext>(m, "MeasurementContext")
        .def(py::init<std::vector<Setting>, double>(), py::arg("settings"), py::arg("theta"))
        .def_readonly("settings", &MeasurementContext::settings)
        .def_readonly("theta", &MeasurementContext::theta)
        .def("with_theta", &MeasurementContext::with_theta);

    py::class_<OutcomePattern>(m, "OutcomePattern")
        .def(py::init<std::vector<Requirement>>(), py::arg("requirements"))
        .def_readonly("requirements", &OutcomePattern::requirements)
        .def_property_readonly("detection_count", &OutcomePattern::detection_count);

    py::class_<HermitianOperator>(m, "HermitianOperator")
        .def(py::init<std::size_t, std::vector<Complex>>(), py::arg("dimension"),
             py::arg("entries"))
        .def_property_readonly("dimension", &HermitianOperator::dimension)
        .def_property_readonly("entries", &HermitianOperator::entries)
        .def("entry", &HermitianOperator::entry);

    m.def("make_state", &make_state, py::arg("n_sites"), py::arg("raw_amplitudes"));
    m.def("outcome_one_vector", &outcome_one_vector, py::arg("phi"));
    m.def("joint_probability", &joint_probability, py::arg("state"), py::arg("context"),
          py::arg("pattern"));
    m.def("apply_operator_expectation", &apply_operator_expectation, py::arg("op"),
          py::arg("state"));

    py::class_<DeltaParams>(m, "DeltaParams")
        .def(py::init<int, double>(), py::arg("n_sites"), py::arg("epsilon"))
        .def_readonly("n_sites", &DeltaParams::n_sites)
        .def_readonly("epsilon", &DeltaParams::epsilon);

    m.def("theta_from_epsilon", &theta_from_epsilon, py::arg("epsilon"));
    m.def("build_delta", &build_delta, py::arg("params"));
    m.def("k_value", &k_value, py::arg("params"));

    py::class_<InequalityTerm>(m, "InequalityTerm")
        .def_readonly("coefficient", &InequalityTerm::coefficient)
        .def_readonly("context", &InequalityTerm::context)
        .def_readonly("pattern", &InequalityTerm::pattern)
        .def_property_readonly("detection_count", &InequalityTerm::detection_count);

    py::class_<CHInequality>(m, "CHInequality")
        .def_readonly("n_sites", &CHInequality::n_sites)
        .def_readonly("lhs_terms", &CHInequality::lhs_terms)
        .def_readonly("rhs_terms", &CHInequality::rhs_terms);

    py::class_<DeterministicStrategy>(m, "DeterministicStrategy")
        .def(py::init<int, std::uint64_t>(), py::arg("n_sites"), py::arg("code"))
        .def_static("from_outcomes", &DeterministicStrategy::from_outcomes,
                    py::arg("ab_pairs"))
        .def_property_readonly("n_sites", &DeterministicStrategy::n_sites)
        .def_property_readonly("code", &DeterministicStrategy::code)
        .def("outcome", &DeterministicStrategy::outcome, py::arg("site"), py::arg("setting"));

    py::class_<LhvReport>(m, "LhvReport")
        .def_readonly("max_residual", &LhvReport::max_residual)
        .def_readonly("argmax_strategy", &LhvReport::argmax_strategy)
        .def_readonly("argmax_eta", &LhvReport::argmax_eta)
        .def_readonly("certified", &LhvReport::certified);

    m.def("build_two_site_ch", &build_two_site_ch);
    m.def("build_nsite_ch", &build_nsite_ch, py::arg("n_sites"));
    m.def("evaluate_quantum", &evaluate_quantum, py::arg("inequality"), py::arg("state"),
          py::arg("theta"), py::arg("eta"));
    m.def("evaluate_strategy", &evaluate_strategy, py::arg("inequality"), py::arg("strategy"),
          py::arg("eta"));
    m.def("lhv_certify", &lhv_certify, py::arg("inequality"), py::arg("eta_list"));

    py::class_<EfficiencyModel>(m, "EfficiencyModel")
        .def(py::init<double>(), py::arg("eta"))
        .def_readonly("eta", &EfficiencyModel::eta)
        .def("coincidence_scale", &EfficiencyModel::coincidence_scale, py::arg("detections"));

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n_sites", &BoundReport::n_sites)
        .def_readonly("epsilon", &BoundReport::epsilon)
        .def_readonly("critical_eta", &BoundReport::critical_eta)
        .def_readonly("numerator", &BoundReport::numerator)
        .def_readonly("denominator", &BoundReport::denominator);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def(py::init([](int points) { return GridSpec{points}; }), py::arg("points"))
        .def_readwrite("points", &GridSpec::points);

    py::class_<ViolationReport>(m, "ViolationReport")
        .def_readonly("exists", &ViolationReport::exists)
        .def_readonly("best_theta", &ViolationReport::best_theta)
        .def_readonly("best_eigenvalue", &ViolationReport::best_eigenvalue);

    m.def("critical_eta",
          py::overload_cast<const StateVector&, double, int>(&critical_eta), py::arg("state"),
          py::arg("theta"), py::arg("n_sites"));
    m.def("critical_eta", py::overload_cast<const DeltaParams&>(&critical_eta),
          py::arg("params"));
    m.def("critical_eta_limit", &critical_eta_limit, py::arg("n_sites"));
    m.def("build_b_operator", &build_b_operator, py::arg("n_sites"), py::arg("theta"),
          py::arg("eta"));
    m.def("max_eigenvalue", &max_eigenvalue, py::arg("op"));
    m.def("max_eigenpair", &max_eigenpair, py::arg("op"));
    m.def("violation_exists", &violation_exists, py::arg("n_sites"), py::arg("eta"),
          py::arg("grid") = GridSpec{}, py::arg("tol") = 1e-9);
    m.def("minimal_n", &minimal_n, py::arg("eta"));
    m.def("delta_vs_eigen_ratio", &delta_vs_eigen_ratio, py::arg("n_sites"), py::arg("eta"),
          py::arg("grid") = GridSpec{});

    m.attr("__version__") = "0.1.0";
}
