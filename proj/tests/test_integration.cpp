#include <doctest.h>

#include <cmath>

#include "kppcut/asym_small.hpp"
#include "kppcut/harness.hpp"
#include "kppcut/qivp.hpp"

using namespace kppcut;

// The solver's front position carries a constant O(dy) offset from the
// discrete start-up (equal to the first-step jump), plus an O(dy) error in
// the sqrt(t) coefficient. The two-term law comparison therefore removes the
// fitted constant and runs at a resolution where the solver error sits below
// the expansion remainder.
TEST_CASE("two-term front law tracks the solver at early times" *
          doctest::timeout(600)) {
    for (double uc : {0.3, 0.5, 0.7}) {
        auto spec = make_fisher(uc);
        SmallTimeCoefficients c = small_time_coefficients(spec);

        QivpParams p;
        p.reaction = spec;
        p.dy = 5e-4;
        p.M_left = p.M_right = 3.0;
        p.T = 0.05;
        p.front_stride = std::max<long>(1, std::lround(2e-4 / p.dt_eff()));
        QivpResult res = qivp_run(p);
        FrontFit fit = fit_front_law(res.front, 0.01, 0.05);

        double worst = 0.0;
        for (const auto& smp : res.front.samples) {
            if (smp.t < 0.01 || smp.t > 0.05) continue;
            const double model = c.s0 * std::sqrt(smp.t) + c.s1 * std::pow(smp.t, 1.5);
            worst = std::max(worst,
                             std::abs(smp.s - fit.c - model) / std::pow(smp.t, 1.5));
        }
        INFO("u_c = ", uc, ", worst scaled residual = ", worst);
        CHECK(worst < 0.1);
    }
}

// Refining the grid must not move the late-time speed by more than half a
// percent, and the estimate must sit within 0.01 of the shooting speed.
TEST_CASE("speed table pipeline on one cut-off" * doctest::timeout(600)) {
    ExperimentConfig cfg;
    cfg.uc_list = {0.5};
    cfg.dy = 0.02;
    cfg.T = 30.0;
    ComparisonReport rep = run_speed_table(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(!rep.rows[0].failed);
    CHECK(rep.rows[0].diff <= 0.01);
    CHECK(rep.rows[0].pass);
}
