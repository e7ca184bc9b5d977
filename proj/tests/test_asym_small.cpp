#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fd_util.hpp"
#include "kppcut/asym_small.hpp"
#include "kppcut/erf.hpp"

using namespace kppcut;

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("s0 values and symmetry") {
    CHECK(compute_s0(0.5) == 0.0);
    CHECK(compute_s0(0.1) == doctest::Approx(1.8123876).epsilon(1e-6));
    CHECK(compute_s0(0.9) == doctest::Approx(-1.8123876).epsilon(1e-6));
    for (double uc : {0.05, 0.2, 0.35, 0.45})
        CHECK(std::abs(compute_s0(1.0 - uc) + compute_s0(uc)) < 1e-12);
    CHECK_THROWS_AS(compute_s0(0.0), std::domain_error);
}

TEST_CASE("s0 is strictly decreasing on a 99-point grid") {
    double prev = 1e300;
    for (int k = 1; k <= 99; ++k) {
        const double s0 = compute_s0(k / 100.0);
        CHECK(s0 < prev);
        prev = s0;
    }
}

TEST_CASE("leading inner profile") {
    CHECK(inner_leading(0.31, 0.0) == doctest::Approx(0.31).epsilon(1e-13));
    CHECK(inner_leading(0.5, -50.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(inner_leading(0.5, 2.0) ==
          doctest::Approx(0.5 * (1.0 - kppcut::erf(1.0))).epsilon(1e-14));
}

TEST_CASE("leading inner profile satisfies its boundary-layer equation") {
    const double uc = 0.35;
    const double s0 = compute_s0(uc);
    double res = 0.0;
    auto u0 = [uc](double e) { return inner_leading(uc, e); };
    for (double eta = -4.0; eta <= 4.0; eta += 0.25)
        res = std::max(res, std::abs(fd_second(u0, eta) +
                                     0.5 * (eta + s0) * fd_first(u0, eta)));
    CHECK(res < 1e-8);
}

TEST_CASE("quadrature constant dhat1 for the fisher reaction") {
    // frozen from an independent scipy quadrature of the same integral
    CHECK(compute_d_hat1(make_fisher(0.5)) ==
          doctest::Approx(0.318309886184).epsilon(1e-8));
    CHECK(compute_d_hat1(make_fisher(0.3)) ==
          doctest::Approx(0.810393181230).epsilon(1e-8));
    CHECK(compute_d_hat1(make_fisher(0.7)) ==
          doctest::Approx(0.102277753757).epsilon(1e-8));
}

TEST_CASE("dhat1 vanishes for a reaction-free problem") {
    ReactionSpec zero;
    zero.f = [](double) { return 0.0; };
    zero.f_prime = [](double) { return 0.0; };
    zero.u_c = 0.4;
    CHECK(compute_d_hat1(zero) == 0.0);
}

TEST_CASE("s1 values") {
    CHECK(compute_s1(0.5, 0.0) == 0.0);
    // s0 = 0 collapses the bracket to 2 sqrt(pi)
    const double dh = 0.318309886184;
    CHECK(compute_s1(0.5, dh) == doctest::Approx(0.25 * 2.0 * kSqrtPi * dh).epsilon(1e-13));
    CHECK(compute_s1(0.5, dh) == doctest::Approx(0.282094791774).epsilon(1e-9));
    // independent scipy values at off-centre cut-offs
    CHECK(compute_s1(0.3, 0.810393181230) ==
          doctest::Approx(0.329899177137).epsilon(1e-8));
    CHECK(compute_s1(0.7, 0.102277753757) ==
          doctest::Approx(0.223567881970).epsilon(1e-8));
}

TEST_CASE("correction constants satisfy both linear relations") {
    for (double uc : {0.3, 0.5, 0.65}) {
        auto spec = make_fisher(uc);
        SmallTimeCoefficients c = small_time_coefficients(spec);
        const double E = std::exp(-0.25 * c.s0 * c.s0);
        // value relation at the front
        const double rhs = (c.s1 / kSqrtPi - 2.0 * c.d1 * c.s0) * E / (c.s0 * c.s0 + 2.0) -
                           c.d1 * kSqrtPi * kppcut::erf(0.5 * c.s0);
        CHECK(std::abs(c.d2 - rhs) < 1e-10);
        // decay relation at -infinity
        CHECK(std::abs(c.d2 - (kSqrtPi * c.d1 + 0.5 * c.d_hat1)) < 1e-12);
        // right-branch decay relation, with dbar = d
        CHECK(std::abs(c.d2 - (-kSqrtPi * c.d1)) < 1e-12);
    }
}

TEST_CASE("first correction profile: coupling at the front") {
    auto spec = make_fisher(0.5);
    SmallTimeCoefficients c = small_time_coefficients(spec);
    CHECK(std::abs(inner_correction(spec, c, 0.0)) < 1e-10);   // u_L1(0) = 0
    CHECK(std::abs(inner_correction(spec, c, 1e-14)) < 1e-10); // u_R1(0) = 0
    const double h = 1e-5;
    const double dl = (inner_correction(spec, c, 0.0) - inner_correction(spec, c, -h)) / h;
    const double dr = (inner_correction(spec, c, h) - inner_correction(spec, c, 0.0)) / h;
    CHECK(std::abs(dl - dr) < 1e-4);  // one-sided differences agree to O(h)
}

TEST_CASE("first correction profile decays on both sides") {
    auto spec = make_fisher(0.5);
    SmallTimeCoefficients c = small_time_coefficients(spec);
    CHECK(std::abs(inner_correction(spec, c, -10.0)) < 1e-6);
    CHECK(std::abs(inner_correction(spec, c, 10.0)) < 1e-6);
    auto spec3 = make_fisher(0.3);
    SmallTimeCoefficients c3 = small_time_coefficients(spec3);
    CHECK(std::abs(inner_correction(spec3, c3, -10.0)) < 1e-6);
}

TEST_CASE("outer expansion") {
    CHECK_THROWS_AS(outer_profile(0.5, 0.0, 0.1), std::domain_error);
    CHECK(outer_profile(0.5, -1.0, 1e-4) == doctest::Approx(1.0).epsilon(1e-12));
    // direct exponent evaluation at u_c = 1/2 (s0 = 0)
    const double expected =
        std::exp(-25.0 + 0.5 * std::log(0.01) - std::log(1.0) - 0.5 * std::log(M_PI));
    CHECK(outer_profile(0.5, 1.0, 0.01) == doctest::Approx(expected).epsilon(1e-12));
    // mirror symmetry at the central cut-off
    for (double y : {0.5, 1.0, 2.0})
        CHECK(outer_profile(0.5, -y, 0.02) ==
              doctest::Approx(1.0 - outer_profile(0.5, y, 0.02)).epsilon(1e-12));
}

TEST_CASE("two-term front speed law") {
    auto spec = make_fisher(0.5);
    SmallTimeCoefficients c = small_time_coefficients(spec);
    CHECK(c.s1 > 0.0);
    CHECK(sdot_small(c, 1e-8) > 0.0);  // tends to 0+ at the central cut-off
    CHECK(sdot_small(c, 1e-8) < 1e-3);

    SmallTimeCoefficients lo = small_time_coefficients(make_fisher(0.3));
    CHECK(sdot_small(lo, 1e-10) > 1e3);
    SmallTimeCoefficients hi = small_time_coefficients(make_fisher(0.7));
    CHECK(sdot_small(hi, 1e-10) < -1e3);
}

TEST_CASE("location of the early speed minimum") {
    auto c45 = small_time_coefficients(make_fisher(0.45));
    auto m45 = sdot_minimum_estimate(c45);
    REQUIRE(m45.has_value());
    CHECK(!m45->flagged_unreliable);
    CHECK(m45->t_m == doctest::Approx(c45.s0 / (3.0 * c45.s1)).epsilon(1e-14));
    CHECK(m45->t_m > 0.05);
    CHECK(m45->t_m < 1.0);

    auto c20 = small_time_coefficients(make_fisher(0.2));
    auto m20 = sdot_minimum_estimate(c20);
    REQUIRE(m20.has_value());
    CHECK(m20->flagged_unreliable);  // t_m is no longer small there

    CHECK(!sdot_minimum_estimate(small_time_coefficients(make_fisher(0.6))).has_value());

    // the minimum collapses into t = 0 as the cut-off approaches 1/2
    auto c49 = small_time_coefficients(make_fisher(0.499));
    auto m49 = sdot_minimum_estimate(c49);
    REQUIRE(m49.has_value());
    CHECK(m49->t_m < 0.01);
}
