// Command-line front end: simulate | ptw | smalltime | largetime | verify.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "kppcut/asym_large.hpp"
#include "kppcut/asym_small.hpp"
#include "kppcut/harness.hpp"
#include "kppcut/ptw.hpp"
#include "kppcut/qivp.hpp"
#include "kppcut/reaction.hpp"

namespace fs = std::filesystem;
using namespace kppcut;

namespace {

struct ReactionArgs {
    std::string name = "fisher";
    double lambda = 1.0;
    double uc = 0.5;

    ReactionSpec make() const {
        if (name == "fisher") return make_fisher(uc);
        if (name == "pwl") return make_piecewise_linear(lambda, uc);
        throw CLI::ValidationError("--reaction must be fisher or pwl");
    }
    ReactionKind kind() const {
        return name == "pwl" ? ReactionKind::piecewise_linear : ReactionKind::fisher;
    }
};

void add_reaction_flags(CLI::App* cmd, ReactionArgs& r) {
    cmd->add_option("--reaction", r.name, "fisher or pwl")->default_val("fisher");
    cmd->add_option("--lambda", r.lambda, "slope of the pwl reaction");
    cmd->add_option("--uc", r.uc, "cut-off concentration in (0,1)")->required();
}

std::vector<double> parse_sweep(const std::string& s) {
    // a:b:n inclusive sweep
    std::vector<double> out;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--sweep expects a:b:n");
    const double a = std::stod(s.substr(0, c1));
    const double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(s.substr(c2 + 1));
    for (int k = 0; k < n; ++k)
        out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    return out;
}

std::ofstream open_file(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

int cmd_ptw(const ReactionArgs& r, const std::string& sweep, const std::string& out_dir) {
    std::vector<double> ucs = sweep.empty() ? std::vector<double>{r.uc} : parse_sweep(sweep);
    std::ostringstream csv;
    csv << "# schema=1\n# command=ptw\n";
    csv << "u_c,v_star,lambda_plus,A_minus_inf,M\n";
    for (double uc : ucs) {
        ReactionArgs ra = r;
        ra.uc = uc;
        WaveSolution ws = shoot_speed(ra.make());
        csv << format_g17(uc) << ',' << format_g17(ws.v_star) << ','
            << format_g17(ws.lambda_plus) << ',' << format_g17(ws.A_minus_inf) << ','
            << format_g17(ws.M) << '\n';
    }
    if (out_dir.empty()) {
        std::cout << csv.str();
    } else {
        fs::create_directories(out_dir);
        open_file(fs::path(out_dir) / "ptw.csv") << csv.str();
    }
    return 0;
}

int cmd_simulate(const ReactionArgs& r, double T, bool fine,
                 const std::vector<double>& snaps, const std::string& out_dir) {
    ReactionSpec spec = r.make();
    WaveSolution ws = shoot_speed(spec);

    QivpParams p;
    p.reaction = spec;
    p.dy = fine ? 5e-3 : 0.02;
    suggest_extents(ws.v_star, ws.lambda_plus, p.dy, p.M_left, p.M_right);
    p.T = T;
    p.sample_times = snaps;
    QivpResult res = qivp_run(p);

    fs::create_directories(out_dir);
    auto prof = open_file(fs::path(out_dir) / "profiles.csv");
    prof << "# schema=1\nt,y,u\n";
    for (const auto& pr : res.profiles)
        for (size_t i = 0; i < pr.y.size(); ++i)
            prof << format_g17(pr.t) << ',' << format_g17(pr.y[i]) << ','
                 << format_g17(pr.u[i]) << '\n';

    auto front = open_file(fs::path(out_dir) / "front.csv");
    front << "# schema=1\nt,s,sdot\n";
    for (const auto& s : res.front.samples)
        front << format_g17(s.t) << ',' << format_g17(s.s) << ','
              << format_g17(s.sdot) << '\n';

    auto meta = open_file(fs::path(out_dir) / "meta.txt");
    meta << "reaction=" << r.name << "\n";
    if (r.kind() == ReactionKind::piecewise_linear)
        meta << "lambda=" << format_g17(r.lambda) << "\n";
    meta << "uc=" << format_g17(r.uc) << "\n"
         << "dy=" << format_g17(p.dy) << "\n"
         << "dt=" << format_g17(p.dt_eff()) << "\n"
         << "M_left=" << format_g17(p.M_left) << "\n"
         << "M_right=" << format_g17(p.M_right) << "\n"
         << "T=" << format_g17(p.T) << "\n"
         << "v_star=" << format_g17(ws.v_star) << "\n"
         << "v_inf_estimate=" << format_g17(res.front.v_inf_estimate) << "\n";
    std::cout << "v_inf_estimate=" << format_g17(res.front.v_inf_estimate) << "\n";
    return 0;
}

int cmd_smalltime(const ReactionArgs& r, const std::string& eta_grid,
                  const std::string& out_dir) {
    ReactionSpec spec = r.make();
    SmallTimeCoefficients c = small_time_coefficients(spec);

    fs::create_directories(out_dir);
    auto coef = open_file(fs::path(out_dir) / "smalltime.csv");
    coef << "# schema=1\nu_c,s0,s1,d_hat1,d1,d2\n";
    coef << format_g17(c.u_c) << ',' << format_g17(c.s0) << ',' << format_g17(c.s1)
         << ',' << format_g17(c.d_hat1) << ',' << format_g17(c.d1) << ','
         << format_g17(c.d2) << '\n';

    std::vector<double> etas = eta_grid.empty() ? parse_sweep("-8:4:121")
                                                : parse_sweep(eta_grid);
    auto prof = open_file(fs::path(out_dir) / "inner_profiles.csv");
    prof << "# schema=1\neta,u0,u1\n";
    for (double eta : etas)
        prof << format_g17(eta) << ',' << format_g17(inner_leading(r.uc, eta)) << ','
             << format_g17(inner_correction(spec, c, eta)) << '\n';
    return 0;
}

int cmd_largetime(const ReactionArgs& r, const std::string& out_dir) {
    ReactionSpec spec = r.make();
    WaveSolution ws = shoot_speed(spec);
    LargeTimeClassification cls = solve_basis(spec, ws);

    fs::create_directories(out_dir);
    std::vector<ClassificationRow> rows{{r.uc, cls}};
    write_classification_csv((fs::path(out_dir) / "classification.csv").string(), rows,
                             "# schema=1\n# command=largetime\n");

    auto e = make_exponents(ws.v_star, spec.f_prime_at_1, ws.A_minus_inf);
    auto exps = open_file(fs::path(out_dir) / "exponents.csv");
    exps << "# schema=1\nw,G0_left,G0_right,H\n";
    const double wmin = e.kink_left - 2.0, wmax = ws.v_star + 2.0;
    for (int k = 0; k <= 400; ++k) {
        const double w = wmin + (wmax - wmin) * k / 400.0;
        const double gl = w < 0.0 ? g0_left(e, w) : NAN;
        const double gr = w > 0.0 ? g0_right(e, w) : NAN;
        const double hh = (w > e.kink_left && w < 0.0) ? h_exponent(e, w) : NAN;
        exps << format_g17(w) << ',' << format_g17(gl) << ',' << format_g17(gr) << ','
             << format_g17(hh) << '\n';
    }
    std::cout << "case=" << (cls.case_tag == CaseTag::I ? "I" : "II")
              << " gamma=" << cls.gamma << " phi0=" << format_g17(cls.phi_plus_0)
              << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_dir,
               const std::string& config_path) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = ".";
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    bool all_ok = true;
    const bool all = suite == "all";
    if (all || suite == "speeds") {
        ExperimentConfig c = cfg;
        if (c.uc_list.empty()) c.uc_list = {0.1, 0.3, 0.5, 0.7, 0.9};
        ComparisonReport rep = run_speed_table(c);
        write_speed_table_csv((dir / "speed_table.csv").string(), rep);
        all_ok = all_ok && rep.all_pass;
        std::cout << "speeds: " << (rep.all_pass ? "pass" : "FAIL") << "\n";
    }
    if (all || suite == "smalltime") {
        ExperimentConfig c = cfg;
        if (c.uc_list.empty()) c.uc_list = {0.3, 0.5, 0.7};
        SmalltimeFitReport rep = run_smalltime_fit(c);
        write_smalltime_fit_csv((dir / "smalltime_fit.csv").string(), rep);
        all_ok = all_ok && rep.all_pass;
        std::cout << "smalltime: " << (rep.all_pass ? "pass" : "FAIL") << "\n";
    }
    if (all || suite == "largetime") {
        ExperimentConfig c = cfg;
        if (c.uc_list.empty()) c.uc_list = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        auto rows = run_classification_sweep(c);
        write_classification_csv((dir / "classification.csv").string(), rows,
                                 "# schema=1\n# command=verify\n");
        bool ok = true;
        for (const auto& row : rows)
            ok = ok && row.cls.case_tag == CaseTag::I && row.cls.gamma == -1.5;
        all_ok = all_ok && ok;
        std::cout << "largetime: " << (ok ? "pass" : "FAIL") << "\n";
    }
    if (all || suite == "convergence") {
        ExperimentConfig c = cfg;
        if (c.uc_list.empty()) c.uc_list = {0.5};
        if (c.snap_times.empty()) c.snap_times = {1, 5, 10, 15, 20, 25, 30};
        ConvergenceReport rep = run_ptw_convergence(c);
        write_convergence_csv((dir / "convergence.csv").string(), rep);
        const bool ok = rep.ratio_20_over_10 <= cfg.thresholds.conv_ratio &&
                        rep.decreasing_after_5;
        all_ok = all_ok && ok;
        std::cout << "convergence: " << (ok ? "pass" : "FAIL") << "\n";
    }
    if (all || suite == "sdot") {
        ExperimentConfig c = cfg;
        if (c.uc_list.empty()) c.uc_list = {0.9, 0.45, 0.55, 0.1, 0.5};
        c.long_T_from = 2.0;
        SdotShapeReport rep = run_sdot_signs(c);
        write_sdot_signs_csv((dir / "sdot_signs.csv").string(), rep);
        all_ok = all_ok && rep.all_pass;
        std::cout << "sdot: " << (rep.all_pass ? "pass" : "FAIL") << "\n";
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cut-off KPP front laboratory"};
    app.require_subcommand(1);

    ReactionArgs r_ptw, r_sim, r_small, r_large;
    std::string sweep, out_ptw, out_sim = "out", out_small = "out", out_large = "out";
    double T = 30.0;
    bool fine = false;
    std::vector<double> snaps;
    std::string suite = "all", out_verify, config_path, eta_grid;

    auto* ptw = app.add_subcommand("ptw", "travelling-wave speed and profile");
    add_reaction_flags(ptw, r_ptw);
    ptw->add_option("--sweep", sweep, "cut-off sweep a:b:n");
    ptw->add_option("--out", out_ptw, "output directory (default: stdout)");

    auto* sim = app.add_subcommand("simulate", "moving-boundary evolution");
    add_reaction_flags(sim, r_sim);
    sim->add_option("--T", T, "final time")->required();
    sim->add_flag("--fine", fine, "reference resolution dy=5e-3 (default 0.02)");
    sim->add_option("--snap", snaps, "profile snapshot times")->delimiter(',');
    sim->add_option("--out", out_sim, "output directory")->required();

    auto* small = app.add_subcommand("smalltime", "early-time expansion data");
    add_reaction_flags(small, r_small);
    small->add_option("--eta-grid", eta_grid, "inner profile grid a:b:n");
    small->add_option("--out", out_small, "output directory")->required();

    auto* large = app.add_subcommand("largetime", "late-time classification data");
    add_reaction_flags(large, r_large);
    large->add_option("--out", out_large, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "verification suites");
    verify->add_option("--suite", suite, "all|speeds|smalltime|largetime|convergence|sdot")
        ->default_val("all");
    verify->add_option("--out", out_verify, "output directory")->required();
    verify->add_option("--config", config_path, "key=value configuration file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ptw->parsed()) return cmd_ptw(r_ptw, sweep, out_ptw);
        if (sim->parsed()) return cmd_simulate(r_sim, T, fine, snaps, out_sim);
        if (small->parsed()) return cmd_smalltime(r_small, eta_grid, out_small);
        if (large->parsed()) return cmd_largetime(r_large, out_large);
        if (verify->parsed()) return cmd_verify(suite, out_verify, config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
