#include "qg/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

qg::RunConfig load(const std::string& path) {
    qg::RunConfig cfg = qg::parse_config_file(path);
    qg::apply_out_dir_override(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral solver and verification harness for the 2D "
                 "dissipative quasi-geostrophic equation"};
    app.require_subcommand(1);

    std::string cfg_path;
    auto* run = app.add_subcommand("run", "Run a simulation and write series.csv");
    run->add_option("config", cfg_path, "run configuration file")->required();

    auto* thm1 = app.add_subcommand(
        "verify-thm1", "Run and check the small-data a-priori inequality");
    thm1->add_option("config", cfg_path, "run configuration file")->required();

    auto* thm2 = app.add_subcommand(
        "verify-thm2", "Run and check long-time decay of the critical norm");
    thm2->add_option("config", cfg_path, "run configuration file")->required();

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep->add_option("config", cfg_path, "run configuration file")->required();

    qg::ResumeOptions ropts;
    auto* resume = app.add_subcommand("resume", "Continue from a checkpoint");
    resume->add_option("checkpoint", ropts.checkpoint_path, "checkpoint file")->required();
    resume->add_option("--t-end", ropts.t_end, "new end time")->required();
    resume->add_option("--dt", ropts.dt, "time step (default 1e-3)");
    resume->add_option("--record-every", ropts.record_every, "steps between records");
    resume->add_option("--snapshot-every", ropts.snapshot_every, "steps between checkpoints");
    resume->add_option("--out", ropts.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? qg::exit_ok : qg::exit_usage;
    }

    try {
        if (*run) return qg::cmd_run(load(cfg_path), std::cout);
        if (*thm1) return qg::cmd_verify_thm1(load(cfg_path), std::cout);
        if (*thm2) return qg::cmd_verify_thm2(load(cfg_path), std::cout);
        if (*sweep) return qg::cmd_sweep(load(cfg_path), std::cout);
        if (*resume) {
            if (const char* env = std::getenv("QG_OUT_DIR")) {
                if (*env) ropts.out_dir = env;
            }
            return qg::cmd_resume(ropts, std::cout);
        }
    } catch (const qg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return qg::exit_usage;
    } catch (const qg::BlowupError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return qg::exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qg::exit_usage;
    }
    return qg::exit_usage;
}
