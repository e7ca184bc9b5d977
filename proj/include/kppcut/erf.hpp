#pragma once

namespace kppcut {

/// Error function, built in-repo so results are bit-stable across platforms.
/// Absolute accuracy better than 1e-15 over the real line.
double erf(double x);

/// Complementary error function, 1 - erf(x), with good relative accuracy
/// for x >= 1 (continued fraction).
double erfc(double x);

/// Scaled complement exp(x^2) * erfc(x). Safe against overflow for large
/// positive x; for x <= -26 the result overflows (throws std::domain_error).
double erfcx(double x);

/// Inverse of erf on (-1, 1). Safeguarded Newton with bisection fallback;
/// round-trip |erf(erf_inv(p)) - p| < 1e-13. Throws std::domain_error for
/// |p| >= 1.
double erf_inv(double p);

}  // namespace kppcut
