#include "kppcut/ptw.hpp"

#include <algorithm>
#include <cmath>

#include "kppcut/ode.hpp"

namespace kppcut {

namespace {

constexpr double kEpsV = 1e-4;    // lower edge of the speed bracket
constexpr double kEpsOver = 1e-9; // overshoot/turn guard band around U = 1
constexpr double kYMax = 200.0;   // backward integration horizon
constexpr double kEpsTail = 1e-10;// saddle offset for the profile integration

// Backward shooting outcome for a trial speed.
enum class Shot { too_small, too_large };

Shot classify(const ReactionSpec& spec, double v) {
    const double uc = spec.u_c;
    OdeRhs rhs = [&spec, v](double, const State& s, State& d) {
        d[0] = s[1];
        d[1] = -v * s[1] - spec.f(s[0]);
    };
    std::vector<OdeEvent> events(2);
    events[0].fn = [](double, const State& s) { return s[0] - (1.0 + kEpsOver); };
    events[0].direction = +1;
    events[0].tag = "overshoot";
    // U' crossing zero counts only while U is clear of the saddle value 1
    events[1].fn = [](double, const State& s) {
        return s[0] < 1.0 - kEpsOver ? s[1] : -1.0;
    };
    events[1].direction = +1;
    events[1].tag = "turn";

    OdeOptions opts;
    opts.tol = 1e-12;
    opts.event_tol = 1e-9;  // classification only needs which event fired
    opts.record = false;
    OdeSolution sol =
        ode_integrate(rhs, {uc, -v * uc}, 0.0, -kYMax, opts, events);
    if (!sol.terminal_event)
        throw ShootingError("shooting classifier inconclusive: no event before y = -Y_max");
    return *sol.terminal_event == "overshoot" ? Shot::too_large : Shot::too_small;
}

}  // namespace

double WaveSolution::value(double yy) const {
    if (yy >= 0.0) return u_c * std::exp(-v_star * yy);
    if (yy <= -M) return 1.0 - A_minus_inf * std::exp(lambda_plus * yy);
    const double s = (yy + M) / dy;
    const size_t i = std::min(static_cast<size_t>(s), y.size() - 2);
    const double w = s - static_cast<double>(i);
    return u[i] * (1.0 - w) + u[i + 1] * w;
}

double wave_right(double v_star, double u_c, double y) {
    return u_c * std::exp(-v_star * y);
}

double lambda_plus(double v, double f_prime_at_1) {
    return 0.5 * (-v + std::sqrt(v * v - 4.0 * f_prime_at_1));
}

double pwl_speed(double lambda, double u_c) {
    if (!(lambda > 0.0) || !(u_c >= pwl_min_uc(lambda) && u_c < 1.0))
        throw std::domain_error("pwl_speed: inadmissible (lambda, u_c)");
    return std::sqrt(lambda) * (1.0 - u_c) / std::sqrt(u_c);
}

double wave_closed_form_pwl(double lambda, double u_c, double y) {
    const double v = pwl_speed(lambda, u_c);
    if (y > 0.0) return u_c * std::exp(-v * y);
    const double mu = 0.5 * (std::sqrt(v * v + 4.0 * lambda) - v);
    return 1.0 - (1.0 - u_c) * std::exp(mu * y);
}

WaveSolution shoot_speed(const ReactionSpec& spec, double tol) {
    if (!(tol >= 1e-12)) throw std::domain_error("shoot_speed: tol must be >= 1e-12");

    double lo = kEpsV, hi = 2.0;
    if (classify(spec, lo) != Shot::too_small || classify(spec, hi) != Shot::too_large)
        throw ShootingError("shooting bracket (eps_v, 2) has no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (classify(spec, mid) == Shot::too_large) hi = mid; else lo = mid;
    }
    const double v = 0.5 * (lo + hi);

    WaveSolution ws;
    ws.v_star = v;
    ws.u_c = spec.u_c;
    ws.lambda_plus = lambda_plus(v, spec.f_prime_at_1);

    // Left profile: leave the saddle (1, 0) along its unstable direction and
    // ride the connection down to U = u_c. This direction is numerically
    // stable, unlike continuing the backward shot into the saddle.
    OdeRhs rhs = [&spec, v](double, const State& s, State& d) {
        d[0] = s[1];
        d[1] = -v * s[1] - spec.f(s[0]);
    };
    std::vector<OdeEvent> events(1);
    events[0].fn = [&spec](double, const State& s) { return s[0] - spec.u_c; };
    events[0].direction = -1;
    events[0].tag = "front";

    OdeOptions opts;
    opts.tol = std::min(1e-12, tol);
    opts.event_tol = 1e-12;
    opts.max_step = 0.05;
    const State start{1.0 - kEpsTail, -ws.lambda_plus * kEpsTail};
    OdeSolution sol = ode_integrate(rhs, start, 0.0, kYMax, opts, events);
    if (!sol.terminal_event)
        throw ShootingError("left profile never reached u_c; reaction may not be KPP");
    const double L = sol.event_time;
    ws.M = L;

    // Even resample via cubic Hermite within accepted steps; spacing snapped
    // to divide [-M, 0] exactly.
    const size_t npts = static_cast<size_t>(std::ceil(L / 1e-3));
    ws.dy = L / static_cast<double>(npts);
    ws.y.resize(npts + 1);
    ws.u.resize(npts + 1);
    ws.du.resize(npts + 1);
    size_t seg = 0;
    for (size_t k = 0; k <= npts; ++k) {
        const double yy = std::min(L, static_cast<double>(k) * ws.dy);  // frame of sol
        while (seg + 2 < sol.abscissae.size() && sol.abscissae[seg + 1] < yy) ++seg;
        const double t0 = sol.abscissae[seg], t1 = sol.abscissae[seg + 1];
        const State& s0 = sol.states[seg];
        const State& s1 = sol.states[seg + 1];
        const double h = t1 - t0;
        double uu, dd;
        if (h <= 0) {
            uu = s1[0];
            dd = s1[1];
        } else {
            const double w = (yy - t0) / h;
            const double h00 = (1 + 2 * w) * (1 - w) * (1 - w);
            const double h10 = w * (1 - w) * (1 - w);
            const double h01 = w * w * (3 - 2 * w);
            const double h11 = w * w * (w - 1);
            // U from (U, U'); U' from (U', U'') with U'' supplied by the ODE,
            // keeping both tabulated columns at interpolation order four
            uu = h00 * s0[0] + h10 * h * s0[1] + h01 * s1[0] + h11 * h * s1[1];
            const double upp0 = -v * s0[1] - spec.f(s0[0]);
            const double upp1 = -v * s1[1] - spec.f(s1[0]);
            dd = h00 * s0[1] + h10 * h * upp0 + h01 * s1[1] + h11 * h * upp1;
        }
        ws.y[k] = yy - L;  // shift so the front sits at y = 0
        ws.u[k] = uu;
        ws.du[k] = dd;
    }
    ws.y.back() = 0.0;
    ws.u.back() = sol.states.back()[0];
    ws.du.back() = sol.states.back()[1];
    ws.A_minus_inf = extract_A_minus_inf(ws);
    return ws;
}

double extract_A_minus_inf(const WaveSolution& ws) {
    if (ws.u.empty() || 1.0 - ws.u.front() >= 1e-6)
        throw TailError("profile does not reach 1 - U < 1e-6; increase depth");
    const double width = std::min(3.0, 0.25 * ws.M);
    const size_t count = std::max<size_t>(8, static_cast<size_t>(width / ws.dy));
    double mean = 0.0, mn = 1e300, mx = -1e300;
    for (size_t k = 0; k < count && k < ws.u.size(); ++k) {
        const double a = (1.0 - ws.u[k]) * std::exp(-ws.lambda_plus * ws.y[k]);
        mean += a;
        mn = std::min(mn, a);
        mx = std::max(mx, a);
    }
    mean /= static_cast<double>(count);
    if ((mx - mn) >= 0.01 * mean)
        throw TailError("tail window not asymptotic (spread >= 1%); increase depth");
    return mean;
}

}  // namespace kppcut
