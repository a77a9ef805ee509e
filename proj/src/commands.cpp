#include "qg/commands.hpp"

#include "qg/checkpoint.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace qg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

struct RunOutput {
    NormSeries series;
    double theta0_norm = 0.0;
    bool aborted = false;
    std::string abort_msg;
};

std::string snapshot_path(const std::string& dir, long step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ckpt_%06ld.qgx", step);
    return dir + "/" + buf;
}

// Runs the configured simulation, writing checkpoints on the snapshot
// cadence. On blow-up the partial series is kept.
RunOutput execute_run(const RunConfig& cfg) {
    const Grid grid = cfg.grid();
    const SpectralField theta0 = make_initial(cfg.init, grid, cfg.params.sigma_low());

    Observer observer;
    if (cfg.snapshot_every > 0) {
        const long every = cfg.snapshot_every;
        const double alpha = cfg.params.alpha;
        const double k = cfg.params.k;
        const std::string dir = cfg.out_dir;
        observer = [every, alpha, k, dir](const SimState& s) {
            if (s.step_count > 0 && s.step_count % every == 0)
                write_checkpoint(s, alpha, k, snapshot_path(dir, s.step_count));
        };
    }

    RunOutput out;
    try {
        out.series = simulate(theta0, cfg.params, observer);
    } catch (const BlowupError& e) {
        out.series = e.partial_series();
        out.aborted = true;
        out.abort_msg = e.what();
    }
    if (!out.series.empty()) out.theta0_norm = out.series.front().chi_low;
    return out;
}

void write_series_csv(const NormSeries& series, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << "t,chi_low,chi_one,l2,int_chi_one\n";
    for (const NormRecord& r : series.records()) {
        f << format_double(r.t) << ',' << format_double(r.chi_low) << ','
          << format_double(r.chi_one) << ',' << format_double(r.l2) << ','
          << format_double(r.int_chi_one) << '\n';
    }
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

void write_plot_script(const std::string& dir) {
    std::ofstream f(dir + "/plot_series.gp", std::ios::binary | std::ios::trunc);
    f << "# gnuplot script for series.csv\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set logscale y\n"
         "set xlabel 't'\n"
         "set ylabel 'norm'\n"
         "plot 'series.csv' using 1:2 with lines, \\\n"
         "     'series.csv' using 1:3 with lines, \\\n"
         "     'series.csv' using 1:4 with lines\n";
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "'");
}

struct SweepCase {
    double alpha;
    double k;
    std::optional<double> target_norm;
    std::string label;
};

std::string case_label(const SweepCase& c) {
    std::ostringstream s;
    s << "alpha" << c.alpha << "_k" << c.k;
    if (c.target_norm) s << "_norm" << *c.target_norm;
    return s.str();
}

} // namespace

void apply_out_dir_override(RunConfig& cfg) {
    if (const char* env = std::getenv("QG_OUT_DIR")) {
        if (*env) cfg.out_dir = env;
    }
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    const RunOutput out = execute_run(cfg);
    write_series_csv(out.series, cfg.out_dir + "/series.csv");
    write_plot_script(cfg.out_dir);
    log << "run: " << out.series.size() << " records -> " << cfg.out_dir << "/series.csv\n";
    if (out.aborted) {
        log << "run aborted: " << out.abort_msg << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

int cmd_verify_thm1(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    const RunOutput out = execute_run(cfg);
    write_series_csv(out.series, cfg.out_dir + "/series.csv");
    if (out.aborted) {
        log << "run aborted: " << out.abort_msg << "\n";
        return exit_numerical;
    }

    const InequalityReport report =
        theorem1_functional(out.series, out.theta0_norm, cfg.tolerance);

    std::ofstream f(cfg.out_dir + "/thm1_report.csv", std::ios::binary | std::ios::trunc);
    f << "t,lhs,rhs,margin\n";
    for (const InequalityRow& r : report.rows) {
        f << format_double(r.t) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
          << ',' << format_double(r.margin) << '\n';
    }
    f.close();

    if (report.satisfied) {
        log << "THM1 OK worst_margin=" << format_double(report.worst_margin)
            << " smallness_ok=" << (report.smallness_ok ? "true" : "false") << "\n";
        return exit_ok;
    }
    log << "THM1 VIOLATION worst_margin=" << format_double(report.worst_margin)
        << " smallness_ok=" << (report.smallness_ok ? "true" : "false") << "\n";
    return report.smallness_ok ? exit_theorem : exit_ok;
}

int cmd_verify_thm2(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.out_dir);
    const double alpha = cfg.params.alpha;
    if (!(alpha > 2.0 / 3.0 && alpha < 1.0))
        log << "warning: alpha = " << alpha
            << " outside (2/3, 1); the decay verdict is not applicable\n";

    const RunOutput out = execute_run(cfg);
    write_series_csv(out.series, cfg.out_dir + "/series.csv");
    if (out.aborted) {
        log << "run aborted: " << out.abort_msg << "\n";
        return exit_numerical;
    }

    const DecayVerdict v = decay_summary(out.series, alpha);

    std::ofstream f(cfg.out_dir + "/thm2_report.csv", std::ios::binary | std::ios::trunc);
    f << "t,chi_low,ratio\n";
    const double chi0 = out.series.front().chi_low;
    for (const NormRecord& r : out.series.records()) {
        f << format_double(r.t) << ',' << format_double(r.chi_low) << ','
          << format_double(chi0 == 0.0 ? 0.0 : r.chi_low / chi0) << '\n';
    }
    f.close();

    log << "THM2 ratio_final=" << format_double(v.ratio_final)
        << " t_half=" << (v.t_half ? format_double(*v.t_half) : std::string("none"))
        << " applicable=" << (v.applicable ? "true" : "false") << "\n";
    if (v.applicable && !(v.ratio_final < cfg.decay_threshold)) return exit_theorem;
    return exit_ok;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    ensure_dir(cfg.out_dir);

    std::vector<double> alphas = cfg.sweep_alpha.empty()
                                     ? std::vector<double>{cfg.params.alpha}
                                     : cfg.sweep_alpha;
    std::vector<double> ks = cfg.sweep_k.empty() ? std::vector<double>{cfg.params.k}
                                                 : cfg.sweep_k;
    std::vector<std::optional<double>> targets;
    if (cfg.sweep_target_norm.empty()) {
        targets.push_back(cfg.init.target_norm);
    } else {
        for (double t : cfg.sweep_target_norm) targets.emplace_back(t);
    }

    std::vector<SweepCase> cases;
    for (double a : alphas)
        for (double kv : ks)
            for (const auto& tn : targets) {
                SweepCase c{a, kv, tn, ""};
                c.label = case_label(c);
                cases.push_back(c);
            }

    struct CaseResult {
        bool aborted = false;
        double theta0_norm = 0.0;
        double worst_margin = 0.0;
        bool satisfied = false;
        bool smallness_ok = false;
        double ratio_final = 0.0;
        std::optional<double> t_half;
        double final_chi_low = 0.0;
        size_t records = 0;
    };
    std::vector<CaseResult> results(cases.size());

    // Member simulations are independent; each owns its state and output
    // subdirectory. The summary is written once by the coordinator.
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const SweepCase& c = cases[i];
            RunConfig sub = cfg;
            sub.params.alpha = c.alpha;
            sub.params.k = c.k;
            sub.init.target_norm = c.target_norm;
            sub.out_dir = cfg.out_dir + "/" + c.label;
            ensure_dir(sub.out_dir);

            CaseResult res;
            const RunOutput out = execute_run(sub);
            write_series_csv(out.series, sub.out_dir + "/series.csv");
            write_plot_script(sub.out_dir);
            res.aborted = out.aborted;
            res.records = out.series.size();
            if (!out.series.empty()) {
                res.theta0_norm = out.theta0_norm;
                res.final_chi_low = out.series.back().chi_low;
                const InequalityReport rep =
                    theorem1_functional(out.series, out.theta0_norm, cfg.tolerance);
                res.worst_margin = rep.worst_margin;
                res.satisfied = rep.satisfied;
                res.smallness_ok = rep.smallness_ok;
                const DecayVerdict v = decay_summary(out.series, c.alpha);
                res.ratio_final = v.ratio_final;
                res.t_half = v.t_half;
            }
            results[i] = res;
        }
    };

    const size_t nthreads =
        std::min(cases.size(), static_cast<size_t>(std::max(1u, std::thread::hardware_concurrency())));
    std::vector<std::thread> pool;
    for (size_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    std::ofstream f(cfg.out_dir + "/sweep_summary.csv", std::ios::binary | std::ios::trunc);
    f << "alpha,k,target_norm,theta0_norm,worst_margin,satisfied,smallness_ok,"
         "ratio_final,t_half,final_chi_low,records,aborted\n";
    bool any_aborted = false;
    for (size_t i = 0; i < cases.size(); ++i) {
        const SweepCase& c = cases[i];
        const CaseResult& r = results[i];
        any_aborted = any_aborted || r.aborted;
        f << format_double(c.alpha) << ',' << format_double(c.k) << ','
          << (c.target_norm ? format_double(*c.target_norm) : std::string("")) << ','
          << format_double(r.theta0_norm) << ',' << format_double(r.worst_margin) << ','
          << (r.satisfied ? "true" : "false") << ',' << (r.smallness_ok ? "true" : "false")
          << ',' << format_double(r.ratio_final) << ','
          << (r.t_half ? format_double(*r.t_half) : std::string("none")) << ','
          << format_double(r.final_chi_low) << ',' << r.records << ','
          << (r.aborted ? "true" : "false") << '\n';
        log << "sweep " << c.label << (r.aborted ? " ABORTED" : "")
            << " worst_margin=" << format_double(r.worst_margin)
            << " ratio_final=" << format_double(r.ratio_final) << "\n";
    }
    f.close();
    log << "sweep: " << cases.size() << " cases -> " << cfg.out_dir << "/sweep_summary.csv\n";
    return any_aborted ? exit_numerical : exit_ok;
}

int cmd_resume(const ResumeOptions& opts, std::ostream& log) {
    Checkpoint ck = read_checkpoint(opts.checkpoint_path);
    ensure_dir(opts.out_dir);

    SimParams params;
    params.alpha = ck.alpha;
    params.k = ck.k;
    params.dt = opts.dt;
    params.t_end = opts.t_end;
    params.record_every = opts.record_every;

    Observer observer;
    if (opts.snapshot_every > 0) {
        const long every = opts.snapshot_every;
        const std::string dir = opts.out_dir;
        const double alpha = ck.alpha, k = ck.k;
        observer = [every, alpha, k, dir](const SimState& s) {
            if (s.step_count > 0 && s.step_count % every == 0)
                write_checkpoint(s, alpha, k, snapshot_path(dir, s.step_count));
        };
    }

    int status = exit_ok;
    NormSeries series;
    try {
        series = simulate_from(std::move(ck.state), params, observer);
    } catch (const BlowupError& e) {
        series = e.partial_series();
        log << "run aborted: " << e.what() << "\n";
        status = exit_numerical;
    }
    write_series_csv(series, opts.out_dir + "/series.csv");
    log << "resume: " << series.size() << " records -> " << opts.out_dir << "/series.csv\n";
    return status;
}

} // namespace qg
