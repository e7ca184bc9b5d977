#include "kppcut/ode.hpp"

#include <algorithm>
#include <cmath>

namespace kppcut {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const OdeRhs& rhs;
    int n;
    State k1, k2, k3, k4, k5, k6, k7, tmp, ynew;

    explicit Stepper(const OdeRhs& r, int dim)
        : rhs(r), n(dim), k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
          k7(dim), tmp(dim), ynew(dim) {}

    // One trial step from (t, y) with k1 already holding rhs(t, y).
    // Returns the scaled error norm; ynew/k7 hold the 5th-order result and
    // its derivative (FSAL).
    double attempt(double t, const State& y, double h, double rtol, double atol) {
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (int i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (int i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                 a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (int i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                  e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = std::max(
                atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i])), 1e-300);
            err = std::max(err, std::abs(e) / sc);
        }
        return err;
    }
};

// Integrate from (t0, y0) to exactly t1 without event handling, reusing a
// stepper; used to bisect event locations.
State integrate_plain(Stepper& st, double t0, const State& y0, double t1,
                      double rtol, double atol, double max_step) {
    State y = y0;
    double t = t0;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    if (t0 == t1) return y;
    double h = dir * std::min(std::abs(t1 - t0),
                              max_step > 0 ? max_step : std::abs(t1 - t0));
    st.rhs(t, y, st.k1);
    while (dir * (t1 - t) > 0) {
        if (dir * (t + h - t1) > 0) h = t1 - t;
        const double err = st.attempt(t, y, h, rtol, atol);
        if (err <= 1.0) {
            t += h;
            y = st.ynew;
            st.k1 = st.k7;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-12), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (max_step > 0) h = dir * std::min(std::abs(h), max_step);
        if (std::abs(h) < 1e-15 * (1.0 + std::abs(t)))
            throw StiffnessError("ode step size underflow");
    }
    return y;
}

}  // namespace

OdeSolution ode_integrate(const OdeRhs& rhs, const State& y0, double span_begin,
                          double span_end, const OdeOptions& opts,
                          const std::vector<OdeEvent>& events) {
    const int n = static_cast<int>(y0.size());
    Stepper st(rhs, n);
    OdeSolution sol;

    double t = span_begin;
    State y = y0;
    const double dir = span_end > span_begin ? 1.0 : -1.0;
    if (opts.record) {
        sol.abscissae.push_back(t);
        sol.states.push_back(y);
    }
    std::vector<double> ev_prev(events.size());
    for (size_t k = 0; k < events.size(); ++k) ev_prev[k] = events[k].fn(t, y);

    double span = std::abs(span_end - span_begin);
    double h = dir * std::min(span / 100.0, opts.max_step > 0 ? opts.max_step : span / 100.0);
    if (h == 0.0) h = dir * 1e-6;
    st.rhs(t, y, st.k1);

    while (dir * (span_end - t) > 0) {
        if (dir * (t + h - span_end) > 0) h = span_end - t;
        const double err = st.attempt(t, y, h, opts.tol, opts.atol_eff());
        if (err <= 1.0) {
            const double t_new = t + h;
            const State& y_new = st.ynew;

            for (size_t k = 0; k < events.size(); ++k) {
                const double g0 = ev_prev[k];
                const double g1 = events[k].fn(t_new, y_new);
                const bool crossed =
                    (g0 < 0 && g1 >= 0 && events[k].direction >= 0) ||
                    (g0 > 0 && g1 <= 0 && events[k].direction <= 0);
                if (crossed && events[k].terminal) {
                    // locate by bisection, re-integrating from the step start
                    double lo = t, hi = t_new;
                    State y_lo = y;
                    Stepper st2(rhs, n);
                    while (std::abs(hi - lo) > opts.event_tol) {
                        const double mid = 0.5 * (lo + hi);
                        State y_mid = integrate_plain(st2, lo, y_lo, mid, opts.tol,
                                                      opts.atol_eff(), opts.max_step);
                        const double gm = events[k].fn(mid, y_mid);
                        const bool same_side = (g0 < 0) ? (gm < 0) : (gm > 0);
                        if (same_side) {
                            lo = mid;
                            y_lo = y_mid;
                        } else {
                            hi = mid;
                        }
                    }
                    const double t_ev = 0.5 * (lo + hi);
                    State y_ev = integrate_plain(st2, lo, y_lo, t_ev, opts.tol,
                                                 opts.atol_eff(), opts.max_step);
                    sol.abscissae.push_back(t_ev);
                    sol.states.push_back(y_ev);
                    sol.terminal_event = events[k].tag;
                    sol.event_time = t_ev;
                    return sol;
                }
                ev_prev[k] = g1;
            }

            t = t_new;
            y = y_new;
            st.k1 = st.k7;
            if (opts.record) {
                sol.abscissae.push_back(t);
                sol.states.push_back(y);
            }
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-12), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (opts.max_step > 0) h = dir * std::min(std::abs(h), opts.max_step);
        if (std::abs(h) < 1e-15 * (1.0 + std::abs(t)))
            throw StiffnessError("ode step size underflow");
    }

    if (!opts.record) {
        sol.abscissae.push_back(t);
        sol.states.push_back(y);
    }
    return sol;
}

double bisect(const std::function<double(double)>& fun, double lo, double hi,
              double tol) {
    double flo = fun(lo);
    double fhi = fun(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0))
        throw BracketError("bisect: no sign change over [lo, hi]");
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = fun(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace kppcut
