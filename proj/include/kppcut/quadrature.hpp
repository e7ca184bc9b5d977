#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace kppcut {

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
    long evaluations = 0;
};

/// Thrown when the adaptive scheme exhausts its evaluation budget; carries
/// the partial value accumulated so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval to absolute
/// tolerance abs_tol.
QuadratureResult quad_adaptive(const Integrand& f, double a, double b,
                               double abs_tol = 1e-10, long max_evals = 1000000);

/// Integral of f over (-inf, upper]. The domain is truncated at a point L
/// where |f| < 1e-16 over a run of samples (searched leftwards in steps
/// scaled by decay_hint), then refined adaptively to 1e-10 absolute.
QuadratureResult quad_semi_infinite(const Integrand& f, double upper,
                                    double decay_hint = 1.0,
                                    double abs_tol = 1e-10,
                                    long max_evals = 1000000);

}  // namespace kppcut
