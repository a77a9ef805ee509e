#pragma once

#include "qg/dynamics.hpp"
#include "qg/initdata.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

// Raised for malformed or out-of-range run configurations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A fully validated run configuration parsed from the flat `key = value`
// format (see parse_config). Sweep lists are empty unless sweep.* keys are
// present.
struct RunConfig {
    int n = 0;
    double l = two_pi;
    SimParams params;
    InitSpec init;
    std::string out_dir = ".";
    long snapshot_every = 0;     // steps between checkpoints; 0 = off
    double tolerance = 1e-6;     // inequality margin tolerance
    double decay_threshold = 0.05;

    std::vector<double> sweep_alpha;
    std::vector<double> sweep_k;
    std::vector<double> sweep_target_norm;

    Grid grid() const { return Grid(n, l); }
};

// Line-oriented `key = value` text; `#` starts a comment, dotted keys nest
// (init.*, sweep.*). Unknown and duplicate keys are errors, as are missing
// required keys (n, alpha, k, dt, t_end, init.kind and the kind's own
// parameters). Values are validated against the module preconditions before
// any computation starts.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace qg
