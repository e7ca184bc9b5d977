#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kppcut/reaction.hpp"

namespace kppcut {

/// Grid and run parameters for the front-attached explicit scheme.
/// The grid is y_i = -M_left + i*dy, i = 0..I+Iright, with y_I = 0 exactly;
/// extents must satisfy the tail-truncation rule when v* is known.
struct QivpParams {
    double dy = 5e-3;
    double dt = 0.0;          // 0 = 0.4 dy^2
    double M_left = 10.0;
    double M_right = 10.0;
    double T = 1.0;
    ReactionSpec reaction;    // carries u_c
    std::vector<double> sample_times;  // profile snapshot times
    long front_stride = 0;    // steps between front-history samples; 0 = auto

    double dt_eff() const { return dt > 0.0 ? dt : 0.4 * dy * dy; }
};

struct QivpState {
    std::vector<double> U;    // nodes 0 .. I+Iright
    double S = 0.0;           // front position
    long j = 0;               // step index
    long I = 0;               // index of y = 0
    double dy = 0.0, dt = 0.0, mu = 0.0, nu = 0.0;
    double u_c = 0.0;
    const ReactionSpec* reaction = nullptr;
};

struct FrontSample {
    double t, s, sdot;
};

struct FrontHistory {
    std::vector<FrontSample> samples;  // sdot by centered differences
    double v_inf_estimate = 0.0;       // mean sdot over the final 10%
};

struct Profile {
    double t = 0.0;
    std::vector<double> y;
    std::vector<double> u;
};

struct QivpResult {
    std::vector<Profile> profiles;
    FrontHistory front;
};

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class FrontDegeneracyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class StabilityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Discrete Heaviside initial data: U = 1 left of the front node, 0 from it
/// rightwards; S = 0. The front node takes the value u_c from step 1 on.
QivpState qivp_init(const QivpParams& params);

/// One explicit step. The coupling constraint at the front reduces to a
/// scalar solve for dS; see the scheme notes in qivp.cpp.
void qivp_step(QivpState& state);

/// Advance to T, recording profile snapshots and the front history.
QivpResult qivp_run(const QivpParams& params);

/// Sign of the centered-difference front speed at t_small (>= 50 dt).
int sdot_sign_probe(const QivpParams& params, double t_small);

/// Extents satisfying exp(lambda_+ y_0), exp(-v* y_end) <= 5e-5, snapped to
/// whole cells, with a small safety pad.
void suggest_extents(double v_star, double lambda_plus, double dy,
                     double& M_left, double& M_right);

}  // namespace kppcut
