#pragma once

#include <utility>
#include <vector>

#include "kppcut/ptw.hpp"
#include "kppcut/reaction.hpp"

namespace kppcut {

/// Exponent data of the large-time outer structure. Both kinks are strictly
/// negative (kink_left < kink_inner < 0 < v_star for 0 < v* < 2, f'(1) < 0).
struct LargeTimeExponents {
    double v_star = 0.0;
    double f_prime_at_1 = -1.0;
    double kink_left = 0.0;   // -sqrt(v*^2 - 4 f'(1)), parabola/linear joint
    double kink_inner = 0.0;  // -2 sqrt(-f'(1)), joint of the H branches
    double A_minus_inf = 0.0;
};

LargeTimeExponents make_exponents(double v_star, double f_prime_at_1,
                                  double A_minus_inf);

/// Envelope-linear exponent left of the front (w < 0).
double g0_left(const LargeTimeExponents& e, double w);

/// Envelope-linear exponent right of the front (w > 0).
double g0_right(const LargeTimeExponents& e, double w);

/// Second-tier left exponent H(w) on (kink_left, 0).
double h_exponent(const LargeTimeExponents& e, double w);

/// Transition-layer profile right of the front: u_c erfc(zeta/2) / 2.
double transition_right(double u_c, double zeta);

/// Transition-layer profile left of the front: A (1 + erf(zeta/2)) / 2.
double transition_left(double A_minus_inf, double zeta);

enum class FrontSide { left, right };

/// Far-field exponent of the solution at |y| >> sqrt(t); s is the front
/// location s(t). Exponents differ across sides by the -f'(1) t term only.
double farfield_exponent(double u_c, double f_prime_at_1, double s, double y,
                         double t, FrontSide side);

enum class CaseTag { I, II };

/// Outcome of the basis-function problem: boundary data of the decaying
/// solution of the linearisation about the wave, and the resulting
/// correction exponent gamma in (speed - v*) ~ c3 t^gamma exp(-v*^2 t / 4).
struct LargeTimeClassification {
    double v_star = 0.0;
    double phi_plus_0 = 0.0;   // phi_+(0)
    double dphi_plus_0 = 0.0;  // phi_+'(0)
    double E4_over_AL = 0.0;
    double c3_over_AL = 0.0;
    CaseTag case_tag = CaseTag::I;
    double gamma = -1.5;       // -1/2 or -3/2
    bool ambiguous_warning = false;  // |phi_+(0)| inside the band [1e-8, 1e-7]
};

/// Integrates (U_T, psi_+) jointly out of the saddle with the normal-form
/// equation psi'' + f'(U_T) psi = 0, psi ~ e^{kappa y}, kappa = sqrt(-f'(1)),
/// then classifies case (I)/(II) and gamma. When psi_profile is given it
/// receives (y, psi) samples in the frame with the front at y = 0.
LargeTimeClassification solve_basis(
    const ReactionSpec& spec, const WaveSolution& ws, double tol = 1e-13,
    std::vector<std::pair<double, double>>* psi_profile = nullptr);

/// speed(t) = v* + A_L c3_over_AL t^gamma exp(-v*^2 t / 4). A_L is a global
/// amplitude that local data cannot fix; it is always supplied (default 1).
double speed_correction(const LargeTimeClassification& cls, double A_L, double t);

}  // namespace kppcut
