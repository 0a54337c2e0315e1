#include "crjc/fidelity.hpp"
#include "crjc/observables.hpp"
#include "crjc/oracle.hpp"
#include "crjc/phase_space.hpp"
#include "crjc/propagator.hpp"
#include "crjc/runner.hpp"
#include "crjc/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace crjc;

namespace {

std::vector<cplx> to_list(const FockVector& v)
{
    std::vector<cplx> out(v.dim());
    for (std::size_t n = 0; n < v.dim(); ++n)
        out[n] = v[n];
    return out;
}

FockVector from_list(const std::vector<cplx>& amps)
{
    if (amps.size() < 2)
        throw std::invalid_argument("need at least two amplitudes");
    FockVector v(static_cast<int>(amps.size()) - 1);
    for (std::size_t n = 0; n < amps.size(); ++n)
        v[n] = amps[n];
    return v;
}

Scenario make_scenario(const ModelParams& p, const std::string& initial, int cutoff, double tail_tolerance)
{
    p.validate();
    return Scenario{p, parse_initial_spec(initial, cutoff, p.k, tail_tolerance).condition};
}

template <typename F>
py::array_t<double> over_times(const std::vector<double>& times, F&& f)
{
    py::array_t<double> out(static_cast<py::ssize_t>(times.size()));
    auto r = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < times.size(); ++i)
        r(static_cast<py::ssize_t>(i)) = f(times[i]);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Counter-rotating Jaynes-Cummings model with Kerr medium";
    m.attr("__version__") = CRJC_VERSION;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double delta, double g, double chi, int k) {
                 ModelParams p;
                 p.delta = delta;
                 p.g = g;
                 p.chi = chi;
                 p.k = k;
                 p.validate();
                 return p;
             }),
             py::arg("delta") = 0.0, py::arg("g") = 0.1, py::arg("chi") = 0.0, py::arg("k") = 1)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("g", &ModelParams::g)
        .def_readwrite("chi", &ModelParams::chi)
        .def_readwrite("k", &ModelParams::k)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(delta=" + format_short(p.delta) + ", g=" + format_short(p.g) +
                   ", chi=" + format_short(p.chi) + ", k=" + std::to_string(p.k) + ")";
        });

    py::class_<QubitFieldState>(m, "State")
        .def(py::init([](const std::vector<cplx>& e, const std::vector<cplx>& g) {
                 return QubitFieldState(from_list(e), from_list(g));
             }),
             py::arg("e"), py::arg("g"))
        .def_property_readonly("e", [](const QubitFieldState& s) { return to_list(s.e); })
        .def_property_readonly("g", [](const QubitFieldState& s) { return to_list(s.g); })
        .def_property_readonly("cutoff", &QubitFieldState::cutoff)
        .def("norm2", &QubitFieldState::norm2);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init(&make_scenario), py::arg("params"), py::arg("initial"), py::arg("cutoff"),
             py::arg("tail_tolerance") = 1e-12)
        .def_property_readonly("params", [](const Scenario& s) { return s.params; })
        .def_property_readonly("cutoff", &Scenario::cutoff)
        .def("initial_state", [](const Scenario& s) { return s.initial.state(); });

    m.def("build_H", &build_H, py::arg("params"), py::arg("cutoff"),
          "Counter-rotating Hamiltonian on the joint space, e-branch first.");
    m.def("build_H0", &build_H0, py::arg("params"), py::arg("cutoff"));
    m.def("intertwining_residual", &intertwining_residual, py::arg("params"), py::arg("cutoff"),
          py::arg("guard"));
    m.def("mu", &mu, py::arg("alpha"), py::arg("n"), py::arg("s"));
    m.def("assoc_laguerre", &assoc_laguerre, py::arg("s"), py::arg("a"), py::arg("x"));

    m.def("propagate_counter", [](const QubitFieldState& s, double t, const ModelParams& p) {
        return propagate_counter(s, t, p).value;
    }, py::arg("state"), py::arg("t"), py::arg("params"));
    m.def("propagate_rotating", [](const QubitFieldState& s, double t, const ModelParams& p) {
        return propagate_rotating(s, t, p).value;
    }, py::arg("state"), py::arg("t"), py::arg("params"));
    m.def("evolve_oracle", [](const QubitFieldState& s, double t, const ModelParams& p) {
        return evolve_oracle(build_H(p, s.cutoff()), s, t);
    }, py::arg("state"), py::arg("t"), py::arg("params"));
    m.def("phase_aligned_error", [](const QubitFieldState& a, const QubitFieldState& b) {
        return phase_align(a, b).second;
    });

    m.def("atomic_inversion", [](const Scenario& sc, const std::vector<double>& t) {
        return over_times(t, [&](double x) { return atomic_inversion(sc, x); });
    }, py::arg("scenario"), py::arg("times"));
    m.def("mean_photon_number", [](const Scenario& sc, const std::vector<double>& t) {
        return over_times(t, [&](double x) { return expect_n_power(sc, x, 1); });
    }, py::arg("scenario"), py::arg("times"));
    m.def("mandel_q", [](const Scenario& sc, const std::vector<double>& t) {
        return over_times(t, [&](double x) { return mandel_q(sc, x).value_or(std::nan("")); });
    }, py::arg("scenario"), py::arg("times"));
    m.def("fidelity", [](const Scenario& sc, const std::vector<double>& t) {
        return over_times(t, [&](double x) { return fidelity_closed(sc, x); });
    }, py::arg("scenario"), py::arg("times"));

    m.def("wigner", [](const Scenario& sc, double t, double extent, int points) {
        const auto w = wigner_closed(sc, t, GridSpec{-extent, extent, -extent, extent, points, points});
        return w.values;
    }, py::arg("scenario"), py::arg("t"), py::arg("extent") = 6.0, py::arg("points") = 121,
       "W on a square grid; rows are Im(alpha), columns Re(alpha).");
    m.def("count_lobes", [](const Eigen::MatrixXd& values, double extent, double radius, double threshold) {
        const auto n = static_cast<int>(values.cols());
        return count_lobes(WignerGrid{GridSpec{-extent, extent, -extent, extent, n, static_cast<int>(values.rows())}, values},
                           radius, threshold);
    }, py::arg("values"), py::arg("extent"), py::arg("radius"), py::arg("threshold") = 0.5);

    m.def("verify", [](bool full) { return run_verify({full ? VerifyLevel::full : VerifyLevel::fast}).to_json(); },
          py::arg("full") = false, "Self-check report as a JSON string.");
    m.def("simulate", [](const std::filesystem::path& scenario, const std::filesystem::path& out) {
        return run_scenario(load_scenario(scenario), out).files;
    }, py::arg("scenario"), py::arg("out_dir"));
}
