#pragma once

#include "qg/field.hpp"

#include <array>
#include <optional>
#include <string>

namespace qg {

enum class InitKind {
    single_mode,      // a cos(m.x)
    two_mode,         // a (cos(m.x) + cos(m2.x))
    gaussian_spectrum,// |c| ~ exp(-(|kappa|-kappa0)^2 / (2 s^2)), random phases
    random_phase,     // |c| ~ |kappa|^(-p) up to a cutoff, random phases
};

InitKind init_kind_from_string(const std::string& s);
std::string to_string(InitKind kind);

// Recipe for a mean-zero Hermitian initial field. Random phases are drawn
// from std::mt19937_64 seeded with `seed` (one 64-bit draw per canonical
// mode, mapped to [0, 2 pi) via the top 53 bits), so identical specs produce
// bit-identical fields on any conforming platform.
struct InitSpec {
    InitKind kind = InitKind::single_mode;
    double amplitude = 1.0;
    std::array<int, 2> mode = {1, 0};
    std::array<int, 2> mode2 = {0, 2};
    double kappa0 = 4.0;          // gaussian_spectrum: peak wavenumber
    double width = 1.0;           // gaussian_spectrum: shell width
    double slope = 2.0;           // random_phase: spectral slope p
    double cutoff = 0.0;          // random_phase: |kappa| cutoff; 0 = dealias edge
    unsigned long long seed = 1;
    std::optional<double> target_norm;  // rescale to this chi norm when set
    std::optional<double> target_sigma; // weight exponent; default 1 - 2 alpha
};

// Builds the field described by spec on the grid. Always mean-zero and
// Hermitian by construction; target_norm is NOT applied here (see
// make_initial).
SpectralField build_initial(const InitSpec& spec, const Grid& grid);

// (target / chi_norm(field, sigma)) * field. Rescaling to target 0 yields the
// zero field; rescaling a zero field to a nonzero target is an error.
SpectralField rescale_to_norm(const SpectralField& field, double sigma, double target);

// build_initial followed by rescale_to_norm when spec.target_norm is set,
// using spec.target_sigma or default_sigma for the weight exponent.
SpectralField make_initial(const InitSpec& spec, const Grid& grid, double default_sigma);

} // namespace qg
