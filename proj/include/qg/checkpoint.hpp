#pragma once

#include "qg/dynamics.hpp"

#include <string>

namespace qg {

// Simulation state plus the physical parameters needed to resume it.
struct Checkpoint {
    double alpha = 0.75;
    double k = 1.0;
    SimState state;
};

// Binary checkpoint, bit-exact roundtrip. Layout, all little-endian:
//   magic "QGX1", u32 n, f64 l, f64 alpha, f64 k, f64 t, u64 step_count,
//   then n*n coefficient pairs (f64 real, f64 imag) in row-major mode order.
void write_checkpoint(const SimState& state, double alpha, double k,
                      const std::string& path);

// Throws std::runtime_error on bad magic, truncation, or trailing bytes.
Checkpoint read_checkpoint(const std::string& path);

} // namespace qg
