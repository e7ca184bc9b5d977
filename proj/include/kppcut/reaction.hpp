#pragma once

#include <functional>
#include <string>

namespace kppcut {

/// Tag used by performance-critical loops to inline the known reactions
/// instead of going through std::function.
enum class ReactionKind { fisher, piecewise_linear, custom };

/// A normalised KPP reaction f together with its cut-off value u_c.
/// f and f_prime are analytic callables (no numerical differentiation);
/// immutable after construction and safe to share across threads.
struct ReactionSpec {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    // f(1 - w) for small w >= 0, written so the distance to the rest state
    // is not recomputed as 1 - u (which loses all relative precision once
    // w ~ 1e-11). Optional; evaluators fall back to f when absent.
    std::function<double(double)> f_near_one;
    double u_c = 0.5;
    double f_prime_at_1 = -1.0;  // f'(1) < 0
    double f_c_plus = 0.0;       // f(u_c), the jump of the cut-off reaction
    std::string name;
    ReactionKind kind = ReactionKind::custom;
    double pwl_lambda = 0.0;     // slope parameter of the piecewise-linear case
    bool normalized_kpp = true;  // f'(0) = 1; the piecewise-linear example is exempt
};

/// The cut-off reaction f_c: zero at and below u_c, f above it.
double cutoff_apply(const ReactionSpec& spec, double u);

/// Fisher reaction f(u) = u(1-u) with cut-off u_c in (0,1).
ReactionSpec make_fisher(double u_c);

/// Piecewise-linear example f(u) = lambda (1-u) above the cut-off.
/// Requires lambda > 0 and u_c >= (1 + lambda/(1+lambda))/2.
ReactionSpec make_piecewise_linear(double lambda, double u_c);

/// Admissibility bound on u_c for the piecewise-linear reaction.
double pwl_min_uc(double lambda);

}  // namespace kppcut
