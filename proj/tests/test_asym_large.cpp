#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <functional>

#include "fd_util.hpp"
#include "kppcut/asym_large.hpp"
#include "kppcut/erf.hpp"

using namespace kppcut;

namespace {
LargeTimeExponents fisher_exps(double v) { return make_exponents(v, -1.0, 0.66); }

// One-sided derivative jumps at a kink. The Richardson-extrapolated slope is
// exact for the quadratic/linear branches, so a C^1 joint shows a first
// derivative gap at roundoff level while the second derivative gap survives.
void kink_derivatives(const std::function<double(double)>& g, double w0,
                      double& d1jump, double& d2jump) {
    const double h = 1e-4;
    auto one_sided = [&](double sgn) {
        const double d1 = sgn * (g(w0 + sgn * h) - g(w0)) / h;
        const double d2 = sgn * (g(w0 + sgn * h / 2) - g(w0)) / (h / 2);
        return 2.0 * d2 - d1;
    };
    d1jump = std::abs(one_sided(+1.0) - one_sided(-1.0));
    const double sm = (g(w0 - h) - 2 * g(w0 - 2 * h) + g(w0 - 3 * h)) / (h * h);
    const double sp = (g(w0 + 3 * h) - 2 * g(w0 + 2 * h) + g(w0 + h)) / (h * h);
    d2jump = std::abs(sp - sm);
}
}  // namespace

TEST_CASE("left envelope-linear exponent") {
    auto e = fisher_exps(0.558);
    CHECK(e.kink_left == doctest::Approx(-std::sqrt(0.558 * 0.558 + 4.0)).epsilon(1e-15));
    CHECK(e.kink_left == doctest::Approx(-2.0764).epsilon(1e-4));
    // continuity at the kink
    const double gl = g0_left(e, e.kink_left - 1e-12);
    const double gr = g0_left(e, e.kink_left + 1e-12);
    CHECK(gl == doctest::Approx(gr).epsilon(1e-9));
    CHECK(g0_left(e, -1e-12) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(g0_left(e, 0.5), std::domain_error);

    double d1, d2;
    kink_derivatives([&](double w) { return g0_left(e, w); }, e.kink_left, d1, d2);
    CHECK(d1 < 1e-8);   // C^1 at the kink
    CHECK(d2 > 0.1);    // second derivative jumps (1/2 against 0)
}

TEST_CASE("right envelope-linear exponent") {
    auto e = fisher_exps(0.558);
    const double v = e.v_star;
    CHECK(g0_right(e, v - 1e-12) == doctest::Approx(v * v).epsilon(1e-9));
    CHECK(g0_right(e, v + 1e-12) == doctest::Approx(v * v).epsilon(1e-9));
    CHECK(g0_right(e, 2.0 * v) == doctest::Approx(2.25 * v * v).epsilon(1e-12));
    CHECK(g0_right(e, 1e-14) < 1e-10);
    CHECK_THROWS_AS(g0_right(e, -0.5), std::domain_error);

    double d1, d2;
    kink_derivatives([&](double w) { return g0_right(e, w); }, v, d1, d2);
    CHECK(d1 < 1e-8);
    CHECK(d2 > 0.1);
}

TEST_CASE("second-tier left exponent H") {
    auto e = fisher_exps(0.558);
    const double v = e.v_star;
    CHECK(h_exponent(e, -1e-12) == doctest::Approx(0.25 * v * v).epsilon(1e-9));
    // continuity at the inner kink
    CHECK(h_exponent(e, e.kink_inner - 1e-12) ==
          doctest::Approx(h_exponent(e, e.kink_inner + 1e-12)).epsilon(1e-9));
    // linear-branch instance: H(-1) = v^2/4 + (v/2 - 1)(-1)
    CHECK(h_exponent(e, -1.0) ==
          doctest::Approx(0.25 * v * v + (0.5 * v - 1.0) * (-1.0)).epsilon(1e-13));
    CHECK(h_exponent(e, -1.0) == doctest::Approx(0.79884).epsilon(1e-4));
    CHECK_THROWS_AS(h_exponent(e, 0.1), std::domain_error);
    CHECK_THROWS_AS(h_exponent(e, e.kink_left - 0.1), std::domain_error);

    double d1, d2;
    kink_derivatives([&](double w) { return h_exponent(e, w); }, e.kink_inner, d1, d2);
    CHECK(d1 < 1e-8);
    CHECK(d2 > 0.1);

    // strict strip bounds on the open interval
    const double lam = 0.5 * (v - std::sqrt(v * v - 4.0 * e.f_prime_at_1));
    for (int k = 1; k < 100; ++k) {
        const double w = e.kink_left + (0.0 - e.kink_left) * k / 100.0;
        const double gap = h_exponent(e, w) - lam * w;
        CHECK(gap > 0.0);
        CHECK(gap < 0.25 * v * v);
    }
}

TEST_CASE("kink ordering holds for all admissible speeds") {
    for (double v : {0.05, 0.3, 0.8, 1.5, 1.99}) {
        auto e = make_exponents(v, -1.0, 1.0);
        CHECK(e.kink_left < e.kink_inner);
        CHECK(e.kink_inner < 0.0);
        CHECK(e.v_star > 0.0);
    }
    auto e2 = make_exponents(0.5, -2.5, 1.0);
    CHECK(e2.kink_left < e2.kink_inner);
}

TEST_CASE("transition layers") {
    CHECK(transition_right(0.5, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(transition_right(0.5, -60.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(transition_right(0.5, 60.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(transition_right(0.3, 2.0) ==
          doctest::Approx(0.5 * 0.3 * kppcut::erfc(1.0)).epsilon(1e-13));

    CHECK(transition_left(0.66, 0.0) == doctest::Approx(0.33).epsilon(1e-14));
    CHECK(transition_left(0.66, 60.0) == doctest::Approx(0.66).epsilon(1e-13));
    CHECK(transition_left(0.66, -2.0) ==
          doctest::Approx(0.5 * 0.66 * (1.0 - kppcut::erf(1.0))).epsilon(1e-13));

    // both satisfy F'' + (zeta/2) F' = 0
    for (double z = -3.0; z <= 3.0; z += 0.5) {
        auto resid = [&](auto F) {
            return std::abs(fd_second(F, z) + 0.5 * z * fd_first(F, z));
        };
        CHECK(resid([](double x) { return transition_right(0.5, x); }) < 1e-9);
        CHECK(resid([](double x) { return transition_left(0.7, x); }) < 1e-9);
    }
}

TEST_CASE("far-field exponents") {
    // right side with s = 0: y^2/4t + ln y + ln(pi)/2
    CHECK(farfield_exponent(0.5, -1.0, 0.0, 10.0, 1.0, FrontSide::right) ==
          doctest::Approx(25.0 + std::log(10.0) + 0.5 * std::log(M_PI)).epsilon(1e-13));
    // sides differ by -f'(1) t (and the |y| symmetry of the log)
    const double fp1 = -1.7;
    const double l = farfield_exponent(0.4, fp1, 0.3, -7.0, 2.0, FrontSide::left);
    const double r = farfield_exponent(0.4, fp1, 0.3, 7.0, 2.0, FrontSide::right);
    const double ydiff = (-7.0) * 0.3 / (2.0 * 2.0) - 7.0 * 0.3 / (2.0 * 2.0);
    CHECK(l - r == doctest::Approx(-fp1 * 2.0 + ydiff).epsilon(1e-12));
    CHECK_THROWS_AS(farfield_exponent(0.5, -1.0, 0.0, -1.0, 1.0, FrontSide::right),
                    std::domain_error);
    CHECK_THROWS_AS(farfield_exponent(0.5, -1.0, 0.0, 1.0, 1.0, FrontSide::left),
                    std::domain_error);
}

TEST_CASE("far-field exponent matches the small-time outer exponent") {
    // with s = s0 sqrt(t), the right exponent reduces to the early outer form
    const double uc = 0.35;
    const double s0 = 2.0 * kppcut::erf_inv(1.0 - 2.0 * uc);
    for (double t : {0.01, 0.04}) {
        for (double y : {1.0, 2.5}) {
            const double ff =
                farfield_exponent(uc, -1.0, s0 * std::sqrt(t), y, t, FrontSide::right);
            const double outer = y * y / (4.0 * t) + y * s0 / (2.0 * std::sqrt(t)) -
                                 0.5 * std::log(t) + std::log(y) +
                                 0.5 * std::log(M_PI) + 0.25 * s0 * s0;
            CHECK(ff == doctest::Approx(outer).epsilon(1e-12));
        }
    }
}

TEST_CASE("basis solve reproduces the piecewise-linear closed form" *
          doctest::timeout(300)) {
    auto spec = make_piecewise_linear(1.0, 0.75);
    WaveSolution ws = shoot_speed(spec, 1e-10);
    std::vector<std::pair<double, double>> psi;
    LargeTimeClassification cls = solve_basis(spec, ws, 1e-13, &psi);

    const double v = ws.v_star;
    CHECK(std::abs(cls.phi_plus_0 - 1.0) < 1e-8);
    CHECK(std::abs(cls.dphi_plus_0 - (1.0 - 0.5 * v)) < 1e-8);
    CHECK(cls.case_tag == CaseTag::I);
    CHECK(cls.gamma == -1.5);
    // E4/A_L = sqrt(lambda)(1 - 1/sqrt(u_c)); nonzero settles the case
    CHECK(cls.E4_over_AL ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(0.75)).epsilon(1e-7));
    CHECK(cls.c3_over_AL == doctest::Approx(-v / 3.0).epsilon(1e-7));

    double sup = 0.0;
    for (const auto& [y, p] : psi)
        if (y >= -ws.M) sup = std::max(sup, std::abs(p - std::exp(y)));
    CHECK(sup < 1e-8);
}

TEST_CASE("fisher classification across the cut-off range" * doctest::timeout(600)) {
    for (double uc : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto spec = make_fisher(uc);
        WaveSolution ws = shoot_speed(spec, 1e-10);
        LargeTimeClassification cls = solve_basis(spec, ws);
        CHECK(cls.case_tag == CaseTag::I);
        CHECK(cls.gamma == -1.5);
        CHECK(std::abs(cls.phi_plus_0) > 1e-8);
        CHECK(std::abs(cls.E4_over_AL) > 1e-8);
        CHECK(!cls.ambiguous_warning);
        if (uc == 0.5) {
            // frozen from an independent integration of the same system
            CHECK(cls.phi_plus_0 == doctest::Approx(0.54533161).epsilon(5e-4));
            CHECK(cls.dphi_plus_0 == doctest::Approx(0.15183681).epsilon(5e-3));
            CHECK(cls.E4_over_AL == doctest::Approx(-0.18235793).epsilon(5e-3));
            CHECK(cls.c3_over_AL == doctest::Approx(-0.15269658).epsilon(5e-3));
        }
    }
}

TEST_CASE("classification is stable under tolerance tightening" *
          doctest::timeout(300)) {
    auto spec = make_fisher(0.4);
    WaveSolution ws = shoot_speed(spec, 1e-10);
    auto a = solve_basis(spec, ws, 1e-12);
    auto b = solve_basis(spec, ws, 1e-13);
    CHECK(a.case_tag == b.case_tag);
    CHECK(a.gamma == b.gamma);
    CHECK(a.phi_plus_0 == doctest::Approx(b.phi_plus_0).epsilon(1e-9));
}

TEST_CASE("speed correction law") {
    LargeTimeClassification cls;
    cls.v_star = 0.558;
    cls.gamma = -1.5;
    cls.c3_over_AL = -0.15269658;
    // vanishes at large times
    CHECK(speed_correction(cls, 1.0, 1e6) == doctest::Approx(0.558).epsilon(1e-12));
    // decay ratio between t = 10 and t = 20
    const double r = (speed_correction(cls, 1.0, 20.0) - cls.v_star) /
                     (speed_correction(cls, 1.0, 10.0) - cls.v_star);
    CHECK(r == doctest::Approx(std::pow(2.0, -1.5) *
                               std::exp(-0.25 * 0.558 * 0.558 * 10.0)).epsilon(1e-12));
    CHECK(r == doctest::Approx(0.1623).epsilon(1e-3));

    LargeTimeClassification case2 = cls;
    case2.c3_over_AL = 0.0;  // case (II)
    CHECK(speed_correction(case2, 5.0, 3.0) == case2.v_star);
}
