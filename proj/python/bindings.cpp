// pybind11 surface over the core operations.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kppcut/asym_large.hpp"
#include "kppcut/asym_small.hpp"
#include "kppcut/erf.hpp"
#include "kppcut/harness.hpp"
#include "kppcut/ptw.hpp"
#include "kppcut/qivp.hpp"
#include "kppcut/reaction.hpp"

namespace py = pybind11;
using namespace kppcut;

PYBIND11_MODULE(_kppcut, m) {
    m.doc() = "cut-off KPP front laboratory";

    m.def("erf", &kppcut::erf, py::arg("x"));
    m.def("erfc", &kppcut::erfc, py::arg("x"));
    m.def("erfcx", &kppcut::erfcx, py::arg("x"));
    m.def("erf_inv", &kppcut::erf_inv, py::arg("p"));

    py::class_<ReactionSpec>(m, "ReactionSpec")
        .def_readonly("u_c", &ReactionSpec::u_c)
        .def_readonly("f_prime_at_1", &ReactionSpec::f_prime_at_1)
        .def_readonly("f_c_plus", &ReactionSpec::f_c_plus)
        .def_readonly("name", &ReactionSpec::name)
        .def("f", [](const ReactionSpec& r, double u) { return r.f(u); })
        .def("cutoff", [](const ReactionSpec& r, double u) { return cutoff_apply(r, u); });
    m.def("make_fisher", &make_fisher, py::arg("u_c"));
    m.def("make_piecewise_linear", &make_piecewise_linear, py::arg("lam"), py::arg("u_c"));

    py::class_<WaveSolution>(m, "WaveSolution")
        .def_readonly("v_star", &WaveSolution::v_star)
        .def_readonly("u_c", &WaveSolution::u_c)
        .def_readonly("M", &WaveSolution::M)
        .def_readonly("lambda_plus", &WaveSolution::lambda_plus)
        .def_readonly("A_minus_inf", &WaveSolution::A_minus_inf)
        .def_readonly("y", &WaveSolution::y)
        .def_readonly("u", &WaveSolution::u)
        .def("value", &WaveSolution::value, py::arg("y"));
    m.def("shoot_speed", &shoot_speed, py::arg("spec"), py::arg("tol") = 1e-10);
    m.def("lambda_plus", &lambda_plus, py::arg("v"), py::arg("f_prime_at_1"));
    m.def("pwl_speed", &pwl_speed, py::arg("lam"), py::arg("u_c"));
    m.def("wave_closed_form_pwl", &wave_closed_form_pwl, py::arg("lam"),
          py::arg("u_c"), py::arg("y"));

    py::class_<FrontSample>(m, "FrontSample")
        .def_readonly("t", &FrontSample::t)
        .def_readonly("s", &FrontSample::s)
        .def_readonly("sdot", &FrontSample::sdot);
    py::class_<FrontHistory>(m, "FrontHistory")
        .def_readonly("samples", &FrontHistory::samples)
        .def_readonly("v_inf_estimate", &FrontHistory::v_inf_estimate);
    py::class_<Profile>(m, "Profile")
        .def_readonly("t", &Profile::t)
        .def_readonly("y", &Profile::y)
        .def_readonly("u", &Profile::u);
    py::class_<QivpResult>(m, "QivpResult")
        .def_readonly("profiles", &QivpResult::profiles)
        .def_readonly("front", &QivpResult::front);

    m.def(
        "simulate",
        [](const ReactionSpec& spec, double T, double dy, double M_left,
           double M_right, std::vector<double> snaps) {
            QivpParams p;
            p.reaction = spec;
            p.dy = dy;
            if (M_left <= 0.0 || M_right <= 0.0) {
                WaveSolution ws = shoot_speed(spec);
                suggest_extents(ws.v_star, ws.lambda_plus, dy, p.M_left, p.M_right);
            } else {
                p.M_left = M_left;
                p.M_right = M_right;
            }
            p.T = T;
            p.sample_times = std::move(snaps);
            return qivp_run(p);
        },
        py::arg("spec"), py::arg("T"), py::arg("dy") = 0.02, py::arg("M_left") = 0.0,
        py::arg("M_right") = 0.0, py::arg("snap_times") = std::vector<double>{},
        py::call_guard<py::gil_scoped_release>());

    py::class_<SmallTimeCoefficients>(m, "SmallTimeCoefficients")
        .def_readonly("u_c", &SmallTimeCoefficients::u_c)
        .def_readonly("s0", &SmallTimeCoefficients::s0)
        .def_readonly("s1", &SmallTimeCoefficients::s1)
        .def_readonly("d_hat1", &SmallTimeCoefficients::d_hat1)
        .def_readonly("d1", &SmallTimeCoefficients::d1)
        .def_readonly("d2", &SmallTimeCoefficients::d2);
    m.def("compute_s0", &compute_s0, py::arg("u_c"));
    m.def("small_time_coefficients", &small_time_coefficients, py::arg("spec"));
    m.def("inner_leading", &inner_leading, py::arg("u_c"), py::arg("eta"));
    m.def("outer_profile", &outer_profile, py::arg("u_c"), py::arg("y"), py::arg("t"));

    py::enum_<CaseTag>(m, "CaseTag").value("I", CaseTag::I).value("II", CaseTag::II);
    py::class_<LargeTimeClassification>(m, "LargeTimeClassification")
        .def_readonly("v_star", &LargeTimeClassification::v_star)
        .def_readonly("phi_plus_0", &LargeTimeClassification::phi_plus_0)
        .def_readonly("dphi_plus_0", &LargeTimeClassification::dphi_plus_0)
        .def_readonly("E4_over_AL", &LargeTimeClassification::E4_over_AL)
        .def_readonly("c3_over_AL", &LargeTimeClassification::c3_over_AL)
        .def_readonly("case_tag", &LargeTimeClassification::case_tag)
        .def_readonly("gamma", &LargeTimeClassification::gamma);
    m.def(
        "solve_basis",
        [](const ReactionSpec& spec, const WaveSolution& ws, double tol) {
            return solve_basis(spec, ws, tol);
        },
        py::arg("spec"), py::arg("ws"), py::arg("tol") = 1e-13);
    m.def("speed_correction", &speed_correction, py::arg("cls"), py::arg("A_L"),
          py::arg("t"));

    py::class_<LargeTimeExponents>(m, "LargeTimeExponents")
        .def_readonly("v_star", &LargeTimeExponents::v_star)
        .def_readonly("kink_left", &LargeTimeExponents::kink_left)
        .def_readonly("kink_inner", &LargeTimeExponents::kink_inner);
    m.def("make_exponents", &make_exponents, py::arg("v_star"),
          py::arg("f_prime_at_1"), py::arg("A_minus_inf"));
    m.def("g0_left", &g0_left, py::arg("exps"), py::arg("w"));
    m.def("g0_right", &g0_right, py::arg("exps"), py::arg("w"));
    m.def("h_exponent", &h_exponent, py::arg("exps"), py::arg("w"));
    m.def("transition_left", &transition_left, py::arg("A_minus_inf"), py::arg("zeta"));
    m.def("transition_right", &transition_right, py::arg("u_c"), py::arg("zeta"));
}
