#include "kppcut/reaction.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kppcut {

double cutoff_apply(const ReactionSpec& spec, double u) {
    return u <= spec.u_c ? 0.0 : spec.f(u);
}

ReactionSpec make_fisher(double u_c) {
    if (!(u_c > 0.0 && u_c < 1.0))
        throw std::domain_error("make_fisher: u_c must lie in (0,1)");
    ReactionSpec s;
    s.f = [](double u) { return u * (1.0 - u); };
    s.f_prime = [](double u) { return 1.0 - 2.0 * u; };
    s.f_near_one = [](double w) { return (1.0 - w) * w; };
    s.u_c = u_c;
    s.f_prime_at_1 = -1.0;
    s.f_c_plus = u_c * (1.0 - u_c);
    s.name = "fisher";
    s.kind = ReactionKind::fisher;
    s.normalized_kpp = true;
    return s;
}

double pwl_min_uc(double lambda) {
    return 0.5 * (1.0 + lambda / (1.0 + lambda));
}

ReactionSpec make_piecewise_linear(double lambda, double u_c) {
    if (!(lambda > 0.0))
        throw std::domain_error("make_piecewise_linear: lambda must be > 0");
    const double uc_min = pwl_min_uc(lambda);
    if (!(u_c >= uc_min && u_c < 1.0))
        throw std::domain_error(
            "make_piecewise_linear: u_c must lie in [(1 + lambda/(1+lambda))/2, 1) = [" +
            std::to_string(uc_min) + ", 1)");
    ReactionSpec s;
    s.f = [lambda](double u) { return lambda * (1.0 - u); };
    s.f_prime = [lambda](double) { return -lambda; };
    s.f_near_one = [lambda](double w) { return lambda * w; };
    s.u_c = u_c;
    s.f_prime_at_1 = -lambda;
    s.f_c_plus = lambda * (1.0 - u_c);
    s.name = "pwl";
    s.kind = ReactionKind::piecewise_linear;
    s.pwl_lambda = lambda;
    s.normalized_kpp = false;  // f'(0) is not 1 for this example
    return s;
}

}  // namespace kppcut
