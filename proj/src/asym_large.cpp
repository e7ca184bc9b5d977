#include "kppcut/asym_large.hpp"

#include <cmath>
#include <stdexcept>

#include "kppcut/erf.hpp"
#include "kppcut/ode.hpp"

namespace kppcut {

namespace {
constexpr double kTolZero = 1e-8;      // "equal to zero" threshold
constexpr double kAmbiguous = 1e-7;    // upper edge of the warning band
constexpr double kEpsSaddle = 1e-10;   // saddle offset of the joint start
}  // namespace

LargeTimeExponents make_exponents(double v_star, double f_prime_at_1,
                                  double A_minus_inf) {
    if (!(f_prime_at_1 < 0.0))
        throw std::domain_error("make_exponents: f'(1) must be negative");
    LargeTimeExponents e;
    e.v_star = v_star;
    e.f_prime_at_1 = f_prime_at_1;
    e.kink_left = -std::sqrt(v_star * v_star - 4.0 * f_prime_at_1);
    e.kink_inner = -2.0 * std::sqrt(-f_prime_at_1);
    e.A_minus_inf = A_minus_inf;
    return e;
}

double g0_left(const LargeTimeExponents& e, double w) {
    if (!(w < 0.0)) throw std::domain_error("g0_left: requires w < 0");
    if (w < e.kink_left) {
        const double q = 0.5 * (w + e.v_star);
        return q * q - e.f_prime_at_1;
    }
    return 0.5 * (e.v_star + e.kink_left) * w;  // slope (v* - sqrt(...))/2
}

double g0_right(const LargeTimeExponents& e, double w) {
    if (!(w > 0.0)) throw std::domain_error("g0_right: requires w > 0");
    if (w > e.v_star) {
        const double q = 0.5 * (w + e.v_star);
        return q * q;
    }
    return e.v_star * w;
}

double h_exponent(const LargeTimeExponents& e, double w) {
    if (!(w > e.kink_left && w < 0.0))
        throw std::domain_error("h_exponent: w must lie in (kink_left, 0)");
    if (w < e.kink_inner) {
        const double q = 0.5 * (w + e.v_star);
        return q * q - e.f_prime_at_1;
    }
    const double kappa = std::sqrt(-e.f_prime_at_1);
    return 0.25 * e.v_star * e.v_star + (0.5 * e.v_star - kappa) * w;
}

double transition_right(double u_c, double zeta) {
    return 0.5 * u_c * erfc(0.5 * zeta);
}

double transition_left(double A_minus_inf, double zeta) {
    return 0.5 * A_minus_inf * (1.0 + erf(0.5 * zeta));
}

double farfield_exponent(double u_c, double f_prime_at_1, double s, double y,
                         double t, FrontSide side) {
    (void)u_c;
    if (!(t > 0.0)) throw std::domain_error("farfield_exponent: t must be positive");
    if (side == FrontSide::left && !(y < 0.0))
        throw std::domain_error("farfield_exponent: left side requires y < 0");
    if (side == FrontSide::right && !(y > 0.0))
        throw std::domain_error("farfield_exponent: right side requires y > 0");
    double ex = y * y / (4.0 * t) + y * s / (2.0 * t) + s * s / (4.0 * t) -
                0.5 * std::log(t) + 0.5 * std::log(M_PI) + std::log(std::abs(y));
    if (side == FrontSide::left) ex -= f_prime_at_1 * t;
    return ex;
}

LargeTimeClassification solve_basis(
    const ReactionSpec& spec, const WaveSolution& ws, double tol,
    std::vector<std::pair<double, double>>* psi_profile) {
    const double v = ws.v_star;
    const double kappa = std::sqrt(-spec.f_prime_at_1);
    const double lp = ws.lambda_plus;

    // Joint system for (U, U', psi, psi'). psi is started with unit
    // amplitude; being linear it is rescaled once the front is located so
    // that psi ~ e^{kappa y} holds in the frame with U(0) = u_c.
    OdeRhs rhs = [&spec, v](double, const State& s, State& d) {
        d[0] = s[1];
        d[1] = -v * s[1] - spec.f(s[0]);
        d[2] = s[3];
        d[3] = -spec.f_prime(s[0]) * s[2];
    };
    std::vector<OdeEvent> events(1);
    events[0].fn = [&spec](double, const State& s) { return s[0] - spec.u_c; };
    events[0].direction = -1;
    events[0].tag = "front";

    OdeOptions opts;
    opts.tol = tol;
    opts.event_tol = 1e-12;
    opts.record = psi_profile != nullptr;
    const State start{1.0 - kEpsSaddle, -lp * kEpsSaddle, 1.0, kappa};
    OdeSolution sol = ode_integrate(rhs, start, 0.0, 400.0, opts, events);
    if (!sol.terminal_event)
        throw ShootingError("basis solve: trajectory never reached u_c");
    const double L = sol.event_time;
    const double scale = std::exp(-kappa * L);
    const double psi0 = sol.states.back()[2] * scale;
    const double dpsi0 = sol.states.back()[3] * scale;
    if (psi_profile) {
        psi_profile->clear();
        for (size_t k = 0; k < sol.abscissae.size(); ++k)
            psi_profile->push_back({sol.abscissae[k] - L, sol.states[k][2] * scale});
    }

    LargeTimeClassification cls;
    cls.v_star = v;
    cls.phi_plus_0 = psi0;
    cls.dphi_plus_0 = dpsi0 - 0.5 * v * psi0;
    cls.E4_over_AL = cls.dphi_plus_0 +
                     cls.phi_plus_0 * (0.5 * v - spec.f_c_plus / (v * spec.u_c));
    cls.c3_over_AL = -v * cls.phi_plus_0 / (4.0 * spec.u_c);
    const double p = std::abs(cls.phi_plus_0);
    cls.ambiguous_warning = (p >= kTolZero && p < kAmbiguous);
    if (p < kTolZero) {
        cls.case_tag = CaseTag::II;
        cls.c3_over_AL = 0.0;
        cls.gamma = -1.5;
    } else {
        cls.case_tag = CaseTag::I;
        cls.gamma = std::abs(cls.E4_over_AL) < kTolZero ? -0.5 : -1.5;
    }
    return cls;
}

double speed_correction(const LargeTimeClassification& cls, double A_L, double t) {
    if (!(t > 0.0)) throw std::domain_error("speed_correction: t must be positive");
    const double v = cls.v_star;
    return v + A_L * cls.c3_over_AL * std::pow(t, cls.gamma) *
                   std::exp(-0.25 * v * v * t);
}

}  // namespace kppcut
