#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kppcut/ptw.hpp"

using namespace kppcut;

TEST_CASE("lambda_plus formula") {
    CHECK(lambda_plus(2.0, -1.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(lambda_plus(0.0, -1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambda_plus(0.1, -1.0) ==
          doctest::Approx(0.5 * (-0.1 + std::sqrt(4.01))).epsilon(1e-14));
}

TEST_CASE("analytic right branch") {
    CHECK(wave_right(0.558, 0.5, 0.0) == 0.5);
    CHECK(wave_right(0.558, 0.5, 1.0) ==
          doctest::Approx(0.5 * std::exp(-0.558)).epsilon(1e-14));
    CHECK(wave_right(0.558, 0.5, 200.0) < 1e-40);
}

TEST_CASE("piecewise-linear closed form") {
    CHECK(wave_closed_form_pwl(1.0, 0.75, 0.0) == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(wave_closed_form_pwl(1.0, 0.75, -60.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wave_closed_form_pwl(1.0, 0.75, 1.0) ==
          doctest::Approx(0.75 * std::exp(-0.28867513459481287)).epsilon(1e-12));
    CHECK_THROWS_AS(wave_closed_form_pwl(1.0, 0.5, 0.0), std::domain_error);
}

TEST_CASE("shooting matches the piecewise-linear closed form" * doctest::timeout(300)) {
    for (double uc : {0.75, 0.8, 0.9}) {
        auto spec = make_piecewise_linear(1.0, uc);
        WaveSolution ws = shoot_speed(spec, 1e-10);
        const double vex = pwl_speed(1.0, uc);
        CHECK(std::abs(ws.v_star - vex) < 1e-6);
        // profile against the closed form on [-10, 0]
        double sup = 0.0;
        for (double y = -10.0; y <= 0.0; y += 0.01)
            sup = std::max(sup, std::abs(ws.value(y) - wave_closed_form_pwl(1.0, uc, y)));
        CHECK(sup < 1e-6);
        CHECK(ws.A_minus_inf == doctest::Approx(1.0 - uc).epsilon(1e-4));
    }
}

TEST_CASE("fisher speeds near the reference values" * doctest::timeout(300)) {
    auto w5 = shoot_speed(make_fisher(0.5));
    CHECK(std::abs(w5.v_star - 0.558) < 0.01);
    CHECK(std::abs(w5.v_star - 0.56001368) < 1e-4);  // independent shooting oracle
    auto w1 = shoot_speed(make_fisher(0.1));
    CHECK(std::abs(w1.v_star - 1.248) < 0.01);
    CHECK(std::abs(w1.v_star - 1.25194117) < 1e-4);
    CHECK(w5.v_star > 0.0);
    CHECK(w5.v_star < 2.0);
}

TEST_CASE("wave solution invariants for fisher u_c = 0.5" * doctest::timeout(300)) {
    auto spec = make_fisher(0.5);
    WaveSolution ws = shoot_speed(spec, 1e-10);

    CHECK(ws.u.back() == doctest::Approx(0.5).epsilon(1e-10));      // U_T(0) = u_c
    CHECK(std::abs(ws.du.back() + ws.v_star * 0.5) < 10.0 * 1e-9);  // slope continuity
    CHECK(1.0 - ws.u.front() < 1e-6);                               // depth
    CHECK(ws.lambda_plus > 0.0);
    CHECK(ws.A_minus_inf > 0.0);
    CHECK(ws.A_minus_inf == doctest::Approx(0.664244).epsilon(2e-3));

    // strict monotonicity and range on [-M, 0]
    for (size_t i = 1; i < ws.u.size(); ++i) {
        CHECK(ws.u[i] < ws.u[i - 1]);
        CHECK(ws.u[i] > 0.5 - 1e-12);
        CHECK(ws.u[i] < 1.0);
    }

    // the tabulated profile satisfies the wave equation
    double res = 0.0;
    for (size_t i = 1; i + 1 < ws.u.size(); i += 7) {
        const double upp = (ws.du[i + 1] - ws.du[i - 1]) / (2.0 * ws.dy);
        res = std::max(res, std::abs(upp + ws.v_star * ws.du[i] + spec.f(ws.u[i])));
    }
    CHECK(res < 1e-6);  // second difference of du limits the accuracy here
    // exact residual through the ODE right side
    double res2 = 0.0;
    for (size_t i = 0; i < ws.u.size(); i += 7) {
        const double upp = -ws.v_star * ws.du[i] - spec.f(ws.u[i]);
        const double upp_fd =
            i > 0 && i + 1 < ws.u.size()
                ? (ws.u[i + 1] - 2.0 * ws.u[i] + ws.u[i - 1]) / (ws.dy * ws.dy)
                : upp;
        res2 = std::max(res2, std::abs(upp - upp_fd));
    }
    CHECK(res2 < 1e-4);
}

TEST_CASE("speed law is strictly decreasing in the cut-off" * doctest::timeout(600)) {
    double prev = 2.0;
    for (int k = 1; k <= 9; ++k) {
        const double uc = k / 10.0;
        const double v = shoot_speed(make_fisher(uc), 1e-9).v_star;
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
}

TEST_CASE("tail extraction rejects shallow profiles") {
    WaveSolution ws;
    ws.v_star = 0.5;
    ws.lambda_plus = 0.75;
    ws.M = 3.0;
    ws.dy = 1.0;
    ws.y = {-3.0, -2.0, -1.0, 0.0};
    ws.u = {0.99, 0.9, 0.7, 0.5};  // nowhere near 1 - 1e-6
    ws.du = {0, 0, 0, 0};
    CHECK_THROWS_AS(extract_A_minus_inf(ws), TailError);
}
