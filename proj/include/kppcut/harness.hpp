#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kppcut/asym_large.hpp"
#include "kppcut/asym_small.hpp"
#include "kppcut/ptw.hpp"
#include "kppcut/qivp.hpp"
#include "kppcut/reaction.hpp"

namespace kppcut {

enum class ExperimentKind {
    speed_table,
    sdot_signs,
    smalltime_fit,
    ptw_convergence,
    classification_sweep,
};

/// Pass/fail thresholds, kept in one declarative table.
struct Thresholds {
    double speed_vs_ptw = 0.01;       // |v_inf - v*|
    double speed_vs_paper_coarse = 0.02;
    double speed_vs_paper_fine = 0.005;
    double s0_fit_abs = 0.02;         // |a - s0| tolerance floor
    double s0_fit_rel = 0.02;
    double s1_fit_center = 0.28;      // anchor for the fitted s1 at u_c = 1/2
    double s1_fit_abs = 0.05;
    double s1_rel = 0.15;             // computed vs fitted s1
    double conv_ratio = 0.5;          // e(20)/e(10)
    double tmin_factor = 3.0;         // observed vs predicted speed minimum
};

struct ExperimentConfig {
    ReactionKind reaction = ReactionKind::fisher;
    double pwl_lambda = 1.0;
    std::vector<double> uc_list;
    double dy = 0.02;          // coarse default; 5e-3 reproduces the reference setup
    double T = 30.0;
    double long_T = 400.0;     // for slow fronts (u_c >= long_T_from)
    double long_T_from = 0.85;
    std::vector<double> snap_times;
    std::string out_dir;
    Thresholds thresholds;
    int workers = 2;

    ReactionSpec make_reaction(double u_c) const;
    double run_T(double u_c) const {
        return u_c >= long_T_from ? std::max(T, long_T) : T;
    }
};

/// key=value configuration file; unknown keys are an error.
ExperimentConfig load_config(const std::string& path);

struct SpeedRow {
    double u_c = 0.0;
    double v_inf = 0.0;
    double v_star = 0.0;
    double diff = 0.0;
    bool pass = false;
    bool failed = false;     // sub-run raised; row kept, run continues
    std::string note;
};

struct ComparisonReport {
    std::vector<SpeedRow> rows;
    std::string provenance;
    bool all_pass = false;
};

struct SmalltimeFitRow {
    double u_c = 0.0;
    double c_fit = 0.0;   // constant absorbing the O(dy) start-up offset
    double a_fit = 0.0;
    double b_fit = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    bool pass = false;
};

struct SmalltimeFitReport {
    std::vector<SmalltimeFitRow> rows;
    std::string provenance;
    bool all_pass = false;
};

struct ConvergenceRow {
    double t = 0.0;
    double err = 0.0;     // sup_y |u(y,t) - U_T(y)| in the front frame
    double ratio = 0.0;   // err / previous err (0 for the first row)
    bool pre_asymptotic = false;  // t < 1, excluded from pass/fail
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double v_star = 0.0;
    std::string provenance;
    bool decreasing_after_5 = false;
    double ratio_20_over_10 = 0.0;
};

struct SdotShapeRow {
    double u_c = 0.0;
    int probe_sign = 0;
    std::string observed;
    std::string expected;
    double min_time = 0.0;       // argmin of the trace (dip cases)
    double zero_cross = -1.0;    // first sign change, -1 if none
    double v_inf = 0.0;
    bool pass = false;
};

struct SdotShapeReport {
    std::vector<SdotShapeRow> rows;
    std::string provenance;
    bool all_pass = false;
};

struct ClassificationRow {
    double u_c = 0.0;
    LargeTimeClassification cls;
};

ComparisonReport run_speed_table(const ExperimentConfig& cfg);
SmalltimeFitReport run_smalltime_fit(const ExperimentConfig& cfg);
ConvergenceReport run_ptw_convergence(const ExperimentConfig& cfg);
SdotShapeReport run_sdot_signs(const ExperimentConfig& cfg);
std::vector<ClassificationRow> run_classification_sweep(const ExperimentConfig& cfg);

/// Shape classifier for a front-speed trace; returns one of monotone-down,
/// dip-then-up, flat-start-up, initially-negative, monotone-up.
std::string classify_sdot_shape(const FrontHistory& fh, double T,
                                double probe_time);

/// Regime expected for a given cut-off.
std::string expected_sdot_shape(double u_c);

/// Least-squares fit of S(t) ~ c + a sqrt(t) + b t^{3/2} over [t_lo, t_hi].
/// The constant c absorbs the O(dy) offset left by the discrete start-up.
struct FrontFit {
    double c = 0.0, a = 0.0, b = 0.0;
    int samples = 0;
};
FrontFit fit_front_law(const FrontHistory& fh, double t_lo, double t_hi);

// CSV output (schema versioned, floats at 17 significant digits).
void write_speed_table_csv(const std::string& path, const ComparisonReport& r);
void write_smalltime_fit_csv(const std::string& path, const SmalltimeFitReport& r);
void write_convergence_csv(const std::string& path, const ConvergenceReport& r);
void write_sdot_signs_csv(const std::string& path, const SdotShapeReport& r);
void write_classification_csv(const std::string& path,
                              const std::vector<ClassificationRow>& rows,
                              const std::string& provenance);

std::string format_g17(double x);

}  // namespace kppcut
