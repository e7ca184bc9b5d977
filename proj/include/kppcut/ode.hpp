#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kppcut {

using State = std::vector<double>;
using OdeRhs = std::function<void(double, const State&, State&)>;

/// Event fires when fn crosses zero in the requested direction at an
/// accepted step; terminal events stop the integration at the located root.
struct OdeEvent {
    std::function<double(double, const State&)> fn;
    int direction = 0;  // +1 rising, -1 falling, 0 any
    bool terminal = true;
    std::string tag;
};

struct OdeSolution {
    std::vector<double> abscissae;   // strictly monotone (direction of travel)
    std::vector<State> states;
    std::optional<std::string> terminal_event;
    double event_time = 0.0;         // valid when terminal_event is set
};

class StiffnessError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class NoEventError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OdeOptions {
    double tol = 1e-10;          // relative per-step tolerance
    double atol = -1.0;          // absolute tolerance; < 0 means equal to tol.
                                 // Use 0 for solutions that grow out of a
                                 // tiny tail value (pure relative control).
    double max_step = 0.0;       // 0 = unrestricted
    double event_tol = 1e-12;    // root location accuracy in the abscissa
    bool record = true;          // keep the accepted trajectory

    double atol_eff() const { return atol < 0.0 ? tol : atol; }
};

/// Adaptive Dormand-Prince RK5(4) integration of y' = rhs(t, y) over
/// [span_begin, span_end] (either direction). Events are bracketed at
/// accepted steps and located by bisection to event_tol.
OdeSolution ode_integrate(const OdeRhs& rhs, const State& y0,
                          double span_begin, double span_end,
                          const OdeOptions& opts = {},
                          const std::vector<OdeEvent>& events = {});

class BracketError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar bisection; requires a sign change between lo and hi. Returns the
/// midpoint of the final bracket of width <= tol.
double bisect(const std::function<double(double)>& fun, double lo, double hi,
              double tol);

}  // namespace kppcut
