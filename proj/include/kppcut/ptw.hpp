#pragma once

#include <stdexcept>
#include <vector>

#include "kppcut/reaction.hpp"

namespace kppcut {

/// Permanent-form travelling wave at a given cut-off: speed, left profile
/// tabulated on an even grid, and tail constants.
struct WaveSolution {
    double v_star = 0.0;
    double u_c = 0.0;
    double M = 0.0;           // left truncation depth, profile covers [-M, 0]
    double dy = 1e-3;         // tabulation spacing
    std::vector<double> y;    // -M .. 0
    std::vector<double> u;    // U_T(y)
    std::vector<double> du;   // U_T'(y)
    double lambda_plus = 0.0; // decay exponent of 1 - U_T at -inf
    double A_minus_inf = 0.0; // tail amplitude

    /// Linear interpolation of U_T on [-M, 0]; extends by the tail form
    /// 1 - A e^{lambda_+ y} left of -M and by u_c e^{-v* y} right of 0.
    double value(double yy) const;
};

class ShootingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class TailError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Analytic right branch U_T(y) = u_c exp(-v* y), y >= 0.
double wave_right(double v_star, double u_c, double y);

/// lambda_+(v) = (-v + sqrt(v^2 - 4 f'(1))) / 2, positive for f'(1) < 0.
double lambda_plus(double v, double f_prime_at_1);

/// Computes v*(u_c) by bisection on a backward shooting classifier, then
/// tabulates the left profile by integrating out of the saddle (1,0) down
/// to U = u_c. The classifier orientation (overshoot of 1 <=> speed too
/// large) is validated against the piecewise-linear closed form in tests.
WaveSolution shoot_speed(const ReactionSpec& spec, double tol = 1e-10);

/// Tail amplitude A_{-inf}: mean of (1 - U_T(y)) e^{-lambda_+ y} over the
/// deepest window of the profile. Throws TailError if the window spread
/// exceeds 1% of the mean.
double extract_A_minus_inf(const WaveSolution& ws);

/// Closed-form PTW for the piecewise-linear reaction.
double wave_closed_form_pwl(double lambda, double u_c, double y);

/// Closed-form speed sqrt(lambda) (1-u_c)/sqrt(u_c) of the same.
double pwl_speed(double lambda, double u_c);

}  // namespace kppcut
