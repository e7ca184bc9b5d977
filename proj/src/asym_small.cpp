#include "kppcut/asym_small.hpp"

#include <cmath>
#include <stdexcept>

#include "kppcut/erf.hpp"
#include "kppcut/quadrature.hpp"

namespace kppcut {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Basis and forcing functions of the first-correction problem, all in the
// shifted variable z = (eta + s0) / 2.
double ubar(double eta, double s0) {
    const double r = eta + s0;
    return 1.0 + 0.5 * r * r;
}

double uhat(double eta, double s0) {
    const double r = eta + s0;
    const double z = 0.5 * r;
    return kSqrtPi * ubar(eta, s0) * erf(z) + r * std::exp(-z * z);
}

// f evaluated on the leading inner profile. Left of the front the profile
// sits within ~1e-11 of 1, so the distance 1 - u_L0 = erfc(-z)/2 must reach
// f without being rounded through u itself.
double f_on_leading(const ReactionSpec& spec, double eta, double s0) {
    const double z = 0.5 * (eta + s0);
    const double w = 0.5 * erfc(-z);  // 1 - u_L0
    if (spec.f_near_one && w < 0.5) return spec.f_near_one(w);
    return spec.f(inner_leading(spec.u_c, eta));
}

double I1(const ReactionSpec& spec, double eta, double s0) {
    const double z = 0.5 * (eta + s0);
    return std::exp(z * z) * ubar(eta, s0) * f_on_leading(spec, eta, s0);
}

double I2(const ReactionSpec& spec, double eta, double s0) {
    const double z = 0.5 * (eta + s0);
    return std::exp(z * z) * uhat(eta, s0) * f_on_leading(spec, eta, s0);
}

}  // namespace

double compute_s0(double u_c) {
    if (!(u_c > 0.0 && u_c < 1.0))
        throw std::domain_error("compute_s0: u_c must lie in (0,1)");
    return 2.0 * erf_inv(1.0 - 2.0 * u_c);
}

double inner_leading(double u_c, double eta) {
    return 0.5 * (1.0 - erf(0.5 * eta + erf_inv(1.0 - 2.0 * u_c)));
}

double compute_d_hat1(const ReactionSpec& spec) {
    const double s0 = compute_s0(spec.u_c);
    // sqrt(pi) I1 + I2 rewritten through erfcx to avoid the cancellation of
    // two linearly growing pieces:
    //   f(u_L0) (sqrt(pi) ubar erfcx(-z) + (eta + s0)),  z = (eta+s0)/2 <= 0
    Integrand g = [&spec, s0](double eta) {
        const double z = 0.5 * (eta + s0);
        return f_on_leading(spec, eta, s0) *
               (kSqrtPi * ubar(eta, s0) * erfcx(-z) + (eta + s0));
    };
    return quad_semi_infinite(g, 0.0, 1.0).value;
}

double compute_s1(double u_c, double d_hat1) {
    const double s0 = compute_s0(u_c);
    double bracket;
    if (s0 > 0.0) {
        // (1 - erf) e^{s0^2/4} = erfcx(s0/2), stable for small u_c
        bracket = kSqrtPi * (s0 * s0 + 2.0) * erfcx(0.5 * s0) - 2.0 * s0;
    } else {
        bracket = kSqrtPi * (s0 * s0 + 2.0) * (1.0 - erf(0.5 * s0)) *
                      std::exp(0.25 * s0 * s0) -
                  2.0 * s0;
    }
    return 0.25 * bracket * d_hat1;
}

SmallTimeCoefficients small_time_coefficients(const ReactionSpec& spec) {
    SmallTimeCoefficients c;
    c.u_c = spec.u_c;
    c.s0 = compute_s0(spec.u_c);
    c.d_hat1 = compute_d_hat1(spec);
    c.s1 = compute_s1(spec.u_c, c.d_hat1);
    c.d1 = -c.d_hat1 / (4.0 * kSqrtPi);
    c.d2 = 0.25 * c.d_hat1;
    return c;
}

double inner_correction(const ReactionSpec& spec, double eta) {
    return inner_correction(spec, small_time_coefficients(spec), eta);
}

double inner_correction(const ReactionSpec& spec,
                        const SmallTimeCoefficients& c, double eta) {
    const double s0 = c.s0;
    const double z = 0.5 * (eta + s0);
    double value = c.d1 * uhat(eta, s0) + c.d2 * ubar(eta, s0) -
                   c.s1 / (2.0 * kSqrtPi) * std::exp(-z * z);
    if (eta < 0.0) {
        // particular term u_p2 from variation of parameters
        const double A =
            quad_adaptive([&](double l) { return I1(spec, l, s0); }, eta, 0.0).value;
        const double B =
            quad_adaptive([&](double l) { return I2(spec, l, s0); }, eta, 0.0).value;
        value += 0.5 * (uhat(eta, s0) * A - ubar(eta, s0) * B);
    }
    return value;
}

double outer_profile(double u_c, double y, double t) {
    if (y == 0.0)
        throw std::domain_error("outer_profile: the outer regions exclude y = 0");
    if (!(t > 0.0)) throw std::domain_error("outer_profile: t must be positive");
    const double s0 = compute_s0(u_c);
    const double common = -y * y / (4.0 * t) - y * s0 / (2.0 * std::sqrt(t)) +
                          0.5 * std::log(t) - 0.5 * std::log(M_PI) -
                          0.25 * s0 * s0;
    if (y < 0.0) return 1.0 - std::exp(common - std::log(-y));
    return std::exp(common - std::log(y));
}

double sdot_small(const SmallTimeCoefficients& c, double t) {
    if (!(t > 0.0)) throw std::domain_error("sdot_small: t must be positive");
    return 0.5 * c.s0 / std::sqrt(t) + 1.5 * c.s1 * std::sqrt(t);
}

std::optional<SdotMinimum> sdot_minimum_estimate(const SmallTimeCoefficients& c) {
    if (!(c.u_c < 0.5)) return std::nullopt;  // speed is monotone there
    if (!(c.s1 > 0.0)) return std::nullopt;
    SdotMinimum m;
    m.t_m = c.s0 / (3.0 * c.s1);
    m.flagged_unreliable = !(m.t_m < 1.0);
    return m;
}

}  // namespace kppcut
