#pragma once

#include "qg/config.hpp"

#include <iosfwd>
#include <string>

namespace qg {

// Exit codes shared by the CLI subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numerical = 2;
inline constexpr int exit_theorem = 3;

// Serializes a double with 17 significant digits (shortest exact form is not
// required; the format is stable across runs).
std::string format_double(double v);

// Runs the simulation described by cfg, writing series.csv (header
// t,chi_low,chi_one,l2,int_chi_one) and checkpoints every snapshot_every
// steps into cfg.out_dir. Returns exit_numerical on blow-up (partial series
// is still written).
int cmd_run(const RunConfig& cfg, std::ostream& log);

// Runs, evaluates the a-priori inequality, writes thm1_report.csv
// (t,lhs,rhs,margin) and prints `THM1 OK worst_margin=<v>` or
// `THM1 VIOLATION worst_margin=<v>`. Nonzero exit only when the inequality
// fails although the smallness condition held.
int cmd_verify_thm1(const RunConfig& cfg, std::ostream& log);

// Runs to t_end, evaluates the decay summary, writes thm2_report.csv
// (t,chi_low,ratio) and prints `THM2 ratio_final=<v> t_half=<v>
// applicable=<flag>`. Exit reflects ratio_final < cfg.decay_threshold when
// applicable.
int cmd_verify_thm2(const RunConfig& cfg, std::ostream& log);

// Cartesian product of sweep.alpha x sweep.k x sweep.target_norm run as
// independent simulations (concurrently, up to the hardware thread count),
// one output subdirectory each, plus sweep_summary.csv written once at the
// end by the coordinator.
int cmd_sweep(const RunConfig& cfg, std::ostream& log);

struct ResumeOptions {
    std::string checkpoint_path;
    double t_end = 0.0;
    double dt = 1e-3;
    long record_every = 1;
    long snapshot_every = 0;
    std::string out_dir = ".";
};

// Continues a checkpointed run to t_end with the given numerical options
// (alpha and k come from the checkpoint). The series written by a resumed
// run accumulates int_chi_one from the resume time.
int cmd_resume(const ResumeOptions& opts, std::ostream& log);

// Applies the QG_OUT_DIR environment override, if set.
void apply_out_dir_override(RunConfig& cfg);

} // namespace qg
