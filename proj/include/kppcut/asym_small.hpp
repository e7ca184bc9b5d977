#pragma once

#include <optional>

#include "kppcut/reaction.hpp"

namespace kppcut {

/// Constants of the two-term small-time front law s = s0 sqrt(t) + s1 t^{3/2}
/// and of the first correction profiles. The left and right correction
/// constants coincide (d1 = dbar1, d2 = dbar2) once the front coupling is
/// imposed.
struct SmallTimeCoefficients {
    double u_c = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    double d_hat1 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// s0 = 2 erf^{-1}(1 - 2 u_c); monotone decreasing, odd about u_c = 1/2.
double compute_s0(double u_c);

/// Leading-order inner profile (1 - erf(eta/2 + erf^{-1}(1-2u_c))) / 2,
/// valid on both sides of the front.
double inner_leading(double u_c, double eta);

/// The quadrature constant dhat1 = int_{-inf}^0 (sqrt(pi) I1 + I2) dlambda.
/// Uses the smooth f (not f_c): the region left of the front has u > u_c.
double compute_d_hat1(const ReactionSpec& spec);

/// s1 = (sqrt(pi)(s0^2+2)(1 - erf(s0/2)) e^{s0^2/4} - 2 s0) dhat1 / 4.
double compute_s1(double u_c, double d_hat1);

/// All constants at once; d1 = -dhat1/(4 sqrt(pi)), d2 = dhat1/4.
SmallTimeCoefficients small_time_coefficients(const ReactionSpec& spec);

/// First correction profile u_{L1} (eta <= 0, includes the double-quadrature
/// particular term) or u_{R1} (eta >= 0).
double inner_correction(const ReactionSpec& spec, double eta);
double inner_correction(const ReactionSpec& spec,
                        const SmallTimeCoefficients& c, double eta);

/// Outer expansion value in the exponential regions away from the front;
/// throws std::domain_error at y = 0.
double outer_profile(double u_c, double y, double t);

/// Two-term front speed law s0 t^{-1/2} / 2 + 3 s1 t^{1/2} / 2.
double sdot_small(const SmallTimeCoefficients& c, double t);

/// Location t_m = s0 / (3 s1) of the early local minimum of the front speed
/// (only for u_c < 1/2). flagged_unreliable is set when t_m >= 1, outside
/// the expansion's validity.
struct SdotMinimum {
    double t_m = 0.0;
    bool flagged_unreliable = false;
};
std::optional<SdotMinimum> sdot_minimum_estimate(const SmallTimeCoefficients& c);

}  // namespace kppcut
