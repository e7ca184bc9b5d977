#include "kppcut/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace kppcut {

namespace {

std::string reaction_name(ReactionKind k) {
    switch (k) {
        case ReactionKind::fisher: return "fisher";
        case ReactionKind::piecewise_linear: return "pwl";
        default: return "custom";
    }
}

std::string provenance_block(const ExperimentConfig& cfg, const std::string& kind) {
    std::ostringstream os;
    os << "# schema=1\n";
    os << "# experiment=" << kind << "\n";
    os << "# reaction=" << reaction_name(cfg.reaction) << "\n";
    if (cfg.reaction == ReactionKind::piecewise_linear)
        os << "# lambda=" << format_g17(cfg.pwl_lambda) << "\n";
    os << "# dy=" << format_g17(cfg.dy) << "\n";
    os << "# dt=" << format_g17(0.4 * cfg.dy * cfg.dy) << "\n";
    os << "# T=" << format_g17(cfg.T) << "\n";
    os << "# build=kppcut-0.1.0\n";
    return os.str();
}

// Bounded fan-out over items; results keep input order. Workers pull items
// from a shared counter so one long run does not hold up a whole batch.
template <class Item, class Fn>
auto pooled_map(const std::vector<Item>& items, int workers, Fn&& fn) {
    using R = decltype(fn(items[0]));
    std::vector<R> out(items.size());
    if (items.empty()) return out;
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto work = [&]() {
        while (true) {
            const size_t k = next.fetch_add(1);
            if (k >= items.size()) return;
            try {
                out[k] = fn(items[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    const int n = std::clamp(workers, 1, static_cast<int>(items.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ReactionSpec ExperimentConfig::make_reaction(double u_c) const {
    if (reaction == ReactionKind::piecewise_linear)
        return make_piecewise_linear(pwl_lambda, u_c);
    return make_fisher(u_c);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "reaction") {
            if (val == "fisher") cfg.reaction = ReactionKind::fisher;
            else if (val == "pwl") cfg.reaction = ReactionKind::piecewise_linear;
            else throw std::runtime_error("config: unknown reaction " + val);
        } else if (key == "lambda") {
            cfg.pwl_lambda = std::stod(val);
        } else if (key == "uc_list") {
            cfg.uc_list.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.uc_list.push_back(std::stod(tok));
        } else if (key == "dy") {
            cfg.dy = std::stod(val);
        } else if (key == "T") {
            cfg.T = std::stod(val);
        } else if (key == "long_T") {
            cfg.long_T = std::stod(val);
        } else if (key == "workers") {
            cfg.workers = std::stoi(val);
        } else if (key == "out_dir") {
            cfg.out_dir = val;
        } else if (key == "tol_speed_vs_ptw") {
            cfg.thresholds.speed_vs_ptw = std::stod(val);
        } else if (key == "tol_speed_coarse") {
            cfg.thresholds.speed_vs_paper_coarse = std::stod(val);
        } else if (key == "tol_speed_fine") {
            cfg.thresholds.speed_vs_paper_fine = std::stod(val);
        } else {
            throw std::runtime_error("config: unknown key " + key);
        }
    }
    return cfg;
}

ComparisonReport run_speed_table(const ExperimentConfig& cfg) {
    ComparisonReport rep;
    rep.provenance = provenance_block(cfg, "speed_table");
    rep.rows = pooled_map(cfg.uc_list, cfg.workers, [&cfg](double u_c) {
        SpeedRow row;
        row.u_c = u_c;
        try {
            ReactionSpec spec = cfg.make_reaction(u_c);
            WaveSolution ws = shoot_speed(spec);
            row.v_star = ws.v_star;

            QivpParams p;
            p.reaction = spec;
            p.dy = cfg.dy;
            suggest_extents(ws.v_star, ws.lambda_plus, p.dy, p.M_left, p.M_right);
            p.T = cfg.run_T(u_c);
            QivpResult res = qivp_run(p);
            row.v_inf = res.front.v_inf_estimate;
            row.diff = std::abs(row.v_inf - row.v_star);
            row.pass = row.diff <= cfg.thresholds.speed_vs_ptw;
        } catch (const std::exception& e) {
            row.failed = true;
            row.pass = false;
            row.note = e.what();
        }
        return row;
    });
    rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const SpeedRow& r) { return r.pass; });
    return rep;
}

FrontFit fit_front_law(const FrontHistory& fh, double t_lo, double t_hi) {
    // normal equations for [1, sqrt(t), t^{3/2}]
    double G[3][3] = {{0}}, b[3] = {0};
    int n = 0;
    for (const auto& s : fh.samples) {
        if (s.t < t_lo || s.t > t_hi) continue;
        const double phi[3] = {1.0, std::sqrt(s.t), s.t * std::sqrt(s.t)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) G[i][j] += phi[i] * phi[j];
            b[i] += phi[i] * s.s;
        }
        ++n;
    }
    if (n < 8) throw std::runtime_error("fit_front_law: not enough samples in window");
    // Gaussian elimination, 3x3
    double A[3][4] = {{G[0][0], G[0][1], G[0][2], b[0]},
                      {G[1][0], G[1][1], G[1][2], b[1]},
                      {G[2][0], G[2][1], G[2][2], b[2]}};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const double f = A[r][c] / A[c][c];
            for (int k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
        }
    }
    FrontFit fit;
    fit.c = A[0][3] / A[0][0];
    fit.a = A[1][3] / A[1][1];
    fit.b = A[2][3] / A[2][2];
    fit.samples = n;
    return fit;
}

SmalltimeFitReport run_smalltime_fit(const ExperimentConfig& cfg) {
    SmalltimeFitReport rep;
    ExperimentConfig fine = cfg;
    if (fine.dy > 5e-3) fine.dy = 5e-3;  // the fit needs the reference resolution
    rep.provenance = provenance_block(fine, "smalltime_fit");
    const Thresholds& th = cfg.thresholds;
    rep.rows = pooled_map(cfg.uc_list, cfg.workers, [&fine, &th](double u_c) {
        ReactionSpec spec = fine.make_reaction(u_c);
        SmallTimeCoefficients coef = small_time_coefficients(spec);
        QivpParams p;
        p.reaction = spec;
        p.dy = fine.dy;
        p.M_left = p.M_right = 4.0;  // start-up horizon; fronts stay near 0
        p.T = 0.05;
        p.front_stride = std::max<long>(1, std::lround(1e-4 / p.dt_eff()));
        QivpResult res = qivp_run(p);
        FrontFit fit = fit_front_law(res.front, 0.01, 0.05);

        SmalltimeFitRow row;
        row.u_c = u_c;
        row.c_fit = fit.c;
        row.a_fit = fit.a;
        row.b_fit = fit.b;
        row.s0 = coef.s0;
        row.s1 = coef.s1;
        const bool a_ok = std::abs(fit.a - coef.s0) <=
                          std::max(th.s0_fit_abs, th.s0_fit_rel * std::abs(coef.s0));
        bool b_ok = true;
        if (std::abs(u_c - 0.5) < 1e-12)
            b_ok = std::abs(fit.b - th.s1_fit_center) <= th.s1_fit_abs &&
                   std::abs(coef.s1 - fit.b) <= th.s1_rel * std::abs(fit.b);
        row.pass = a_ok && b_ok;
        return row;
    });
    rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const SmalltimeFitRow& r) { return r.pass; });
    return rep;
}

ConvergenceReport run_ptw_convergence(const ExperimentConfig& cfg) {
    if (cfg.uc_list.empty())
        throw std::runtime_error("run_ptw_convergence: need one u_c");
    const double u_c = cfg.uc_list.front();
    ReactionSpec spec = cfg.make_reaction(u_c);
    WaveSolution ws = shoot_speed(spec);

    QivpParams p;
    p.reaction = spec;
    p.dy = cfg.dy;
    suggest_extents(ws.v_star, ws.lambda_plus, p.dy, p.M_left, p.M_right);
    p.T = cfg.T;
    p.sample_times = cfg.snap_times;
    if (p.sample_times.empty())
        p.sample_times = {1.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    QivpResult res = qivp_run(p);

    ConvergenceReport rep;
    rep.v_star = ws.v_star;
    rep.provenance = provenance_block(cfg, "ptw_convergence");
    double prev = 0.0;
    double e10 = 0.0, e20 = 0.0;
    rep.decreasing_after_5 = true;
    double prev_considered = 0.0;
    for (const Profile& pr : res.profiles) {
        ConvergenceRow row;
        row.t = pr.t;
        double sup = 0.0;
        for (size_t i = 0; i < pr.y.size(); ++i)
            sup = std::max(sup, std::abs(pr.u[i] - ws.value(pr.y[i])));
        row.err = sup;
        row.ratio = prev > 0.0 ? sup / prev : 0.0;
        row.pre_asymptotic = pr.t < 1.0;
        prev = sup;
        if (std::abs(pr.t - 10.0) < 0.5) e10 = sup;
        if (std::abs(pr.t - 20.0) < 0.5) e20 = sup;
        if (!row.pre_asymptotic && pr.t >= 5.0) {
            if (prev_considered > 0.0 && sup > prev_considered)
                rep.decreasing_after_5 = false;
            prev_considered = sup;
        }
        rep.rows.push_back(row);
    }
    rep.ratio_20_over_10 = e10 > 0.0 ? e20 / e10 : 0.0;
    return rep;
}

std::string classify_sdot_shape(const FrontHistory& fh, double T,
                                double probe_time) {
    std::vector<FrontSample> s;
    for (const auto& x : fh.samples)
        if (x.t >= probe_time) s.push_back(x);
    if (s.size() < 8) throw std::runtime_error("classify_sdot_shape: trace too short");

    const double begin = s.front().sdot;
    const double final_v = fh.v_inf_estimate;
    size_t imin = 0;
    double mn = s[0].sdot, mx = s[0].sdot;
    for (size_t k = 1; k < s.size(); ++k) {
        if (s[k].sdot < s[imin].sdot) imin = k;
        mn = std::min(mn, s[k].sdot);
        mx = std::max(mx, s[k].sdot);
    }
    double zero_cross = -1.0;
    for (size_t k = 1; k < s.size(); ++k) {
        if (s[k - 1].sdot < 0.0 && s[k].sdot >= 0.0) {
            zero_cross = s[k].t;
            break;
        }
    }

    const double prom = std::max(5e-3, 0.05 * (mx - mn));
    const double drop = begin - s[imin].sdot;
    const double rise = final_v - s[imin].sdot;
    if (drop > prom && rise > prom) return "dip-then-up";
    if (final_v < begin - prom) return "monotone-down";
    // rising traces
    if (std::abs(begin) <= 0.25 * std::abs(final_v)) return "flat-start-up";
    if (begin < 0.0 && zero_cross >= 0.0 && zero_cross < 0.1 * T)
        return "initially-negative";
    return "monotone-up";
}

std::string expected_sdot_shape(double u_c) {
    if (u_c <= 0.2) return "monotone-down";
    if (u_c < 0.5) return "dip-then-up";
    if (std::abs(u_c - 0.5) < 1e-12) return "flat-start-up";
    if (u_c <= 0.6) return "initially-negative";
    return "monotone-up";
}

SdotShapeReport run_sdot_signs(const ExperimentConfig& cfg) {
    SdotShapeReport rep;
    rep.provenance = provenance_block(cfg, "sdot_signs");
    const Thresholds& th = cfg.thresholds;
    rep.rows = pooled_map(cfg.uc_list, cfg.workers, [&cfg, &th](double u_c) {
        ReactionSpec spec = cfg.make_reaction(u_c);
        WaveSolution ws = shoot_speed(spec);
        QivpParams p;
        p.reaction = spec;
        p.dy = cfg.dy;
        suggest_extents(ws.v_star, ws.lambda_plus, p.dy, p.M_left, p.M_right);
        p.T = cfg.T;
        p.front_stride = std::max<long>(1, std::lround(0.01 / p.dt_eff()));
        QivpResult res = qivp_run(p);

        const double probe = std::max(50.0 * p.dt_eff(), res.front.samples[1].t);
        SdotShapeRow row;
        row.u_c = u_c;
        row.observed = classify_sdot_shape(res.front, p.T, probe);
        row.expected = expected_sdot_shape(u_c);
        row.v_inf = res.front.v_inf_estimate;
        double best = 1e300;
        for (const auto& smp : res.front.samples) {
            if (smp.t < probe) continue;
            if (smp.sdot < best) {
                best = smp.sdot;
                row.min_time = smp.t;
            }
        }
        for (size_t k = 1; k < res.front.samples.size(); ++k) {
            if (res.front.samples[k - 1].sdot < 0.0 &&
                res.front.samples[k].sdot >= 0.0) {
                row.zero_cross = res.front.samples[k].t;
                break;
            }
        }
        int probe_sign = 0;
        for (const auto& smp : res.front.samples)
            if (smp.t >= probe) {
                probe_sign = (smp.sdot > 0) - (smp.sdot < 0);
                break;
            }
        row.probe_sign = probe_sign;
        row.pass = row.observed == row.expected;

        // dip location sanity against the two-term law
        if (row.pass && row.observed == "dip-then-up") {
            SmallTimeCoefficients c = small_time_coefficients(spec);
            if (auto m = sdot_minimum_estimate(c); m && !m->flagged_unreliable) {
                const double f = row.min_time / m->t_m;
                if (f > th.tmin_factor || f < 1.0 / th.tmin_factor) row.pass = false;
            }
        }
        return row;
    });
    rep.all_pass = std::all_of(rep.rows.begin(), rep.rows.end(),
                               [](const SdotShapeRow& r) { return r.pass; });
    return rep;
}

std::vector<ClassificationRow> run_classification_sweep(const ExperimentConfig& cfg) {
    return pooled_map(cfg.uc_list, cfg.workers, [&cfg](double u_c) {
        ReactionSpec spec = cfg.make_reaction(u_c);
        WaveSolution ws = shoot_speed(spec);
        ClassificationRow row;
        row.u_c = u_c;
        row.cls = solve_basis(spec, ws);
        return row;
    });
}

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}
}  // namespace

void write_speed_table_csv(const std::string& path, const ComparisonReport& r) {
    auto out = open_out(path);
    out << r.provenance;
    out << "u_c,v_inf,v_star,diff,pass\n";
    for (const auto& row : r.rows)
        out << format_g17(row.u_c) << ',' << format_g17(row.v_inf) << ','
            << format_g17(row.v_star) << ',' << format_g17(row.diff) << ','
            << (row.pass ? 1 : 0) << '\n';
}

void write_smalltime_fit_csv(const std::string& path, const SmalltimeFitReport& r) {
    auto out = open_out(path);
    out << r.provenance;
    out << "u_c,c_fit,a_fit,b_fit,s0,s1,pass\n";
    for (const auto& row : r.rows)
        out << format_g17(row.u_c) << ',' << format_g17(row.c_fit) << ','
            << format_g17(row.a_fit) << ',' << format_g17(row.b_fit) << ','
            << format_g17(row.s0) << ',' << format_g17(row.s1) << ','
            << (row.pass ? 1 : 0) << '\n';
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& r) {
    auto out = open_out(path);
    out << r.provenance;
    out << "t,err,ratio,pre_asymptotic\n";
    for (const auto& row : r.rows)
        out << format_g17(row.t) << ',' << format_g17(row.err) << ','
            << format_g17(row.ratio) << ',' << (row.pre_asymptotic ? 1 : 0) << '\n';
}

void write_sdot_signs_csv(const std::string& path, const SdotShapeReport& r) {
    auto out = open_out(path);
    out << r.provenance;
    out << "u_c,probe_sign,observed,expected,min_time,zero_cross,v_inf,pass\n";
    for (const auto& row : r.rows)
        out << format_g17(row.u_c) << ',' << row.probe_sign << ',' << row.observed
            << ',' << row.expected << ',' << format_g17(row.min_time) << ','
            << format_g17(row.zero_cross) << ',' << format_g17(row.v_inf) << ','
            << (row.pass ? 1 : 0) << '\n';
}

void write_classification_csv(const std::string& path,
                              const std::vector<ClassificationRow>& rows,
                              const std::string& provenance) {
    auto out = open_out(path);
    out << provenance;
    out << "u_c,v_star,phi0,dphi0,E4_over_AL,c3_over_AL,case,gamma\n";
    for (const auto& row : rows)
        out << format_g17(row.u_c) << ',' << format_g17(row.cls.v_star) << ','
            << format_g17(row.cls.phi_plus_0) << ','
            << format_g17(row.cls.dphi_plus_0) << ','
            << format_g17(row.cls.E4_over_AL) << ','
            << format_g17(row.cls.c3_over_AL) << ','
            << (row.cls.case_tag == CaseTag::I ? "I" : "II") << ','
            << format_g17(row.cls.gamma) << '\n';
}

}  // namespace kppcut
