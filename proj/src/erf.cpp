#include "kppcut/erf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kppcut {

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125739;  // 2/sqrt(pi)
constexpr double kOneOverSqrtPi = 0.5641895835477562869;  // 1/sqrt(pi)

// Non-alternating confluent series, accurate for |x| <= 4:
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1))
// All terms positive, so no cancellation.
double erf_series(double x) {
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return kTwoOverSqrtPi * x * std::exp(-x2) * sum;
}

// Continued fraction for erfcx(x) = e^{x^2} erfc(x), x >= 1 (A&S 7.1.14):
//   sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// Evaluated with the modified Lentz algorithm.
double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double f = x;
    double c = f;
    double d = 0.0;
    for (int k = 1; k < 300; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return kOneOverSqrtPi / f;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    if (ax <= 4.0) return erf_series(x);
    const double tail = 1.0 - erfc(ax);
    return x > 0 ? tail : -tail;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < 1.0) return 1.0 - erf_series(x);
    if (x > 27.0) return 0.0;  // below double underflow
    return erfcx_cf(x) * std::exp(-x * x);
}

double erfcx(double x) {
    if (std::isnan(x)) return x;
    if (x >= 1.0) return erfcx_cf(x);
    if (x >= -26.0) {
        // exp(x^2) stays representable down to x = -26
        return std::exp(x * x) * erfc(x);
    }
    throw std::domain_error("erfcx: overflow for x < -26");
}

double erf_inv(double p) {
    if (!(std::abs(p) < 1.0)) throw std::domain_error("erf_inv: |p| must be < 1");
    if (p == 0.0) return 0.0;
    const double q = std::abs(p);

    double lo = 0.0, hi = 6.5;
    while (erf(hi) < q) hi += 1.0;  // q can be 1 - O(1e-17); erf(6.5) covers it

    // Newton on erf with the bracket as a safeguard.
    double x = 0.8862269254527580137 * q;  // sqrt(pi)/2 * q, exact slope at 0
    if (x <= lo || x >= hi) x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double r = erf(x) - q;
        if (r > 0) hi = x; else lo = x;
        const double step = -r * 0.8862269254527580137 * std::exp(x * x);
        double xn = x + step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) < 1e-16 * (1.0 + std::abs(x))) {
            x = xn;
            break;
        }
        x = xn;
    }
    return p > 0 ? x : -x;
}

}  // namespace kppcut
