#include "qg/initdata.hpp"

#include "qg/diagnostics.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qg {

InitKind init_kind_from_string(const std::string& s) {
    if (s == "single_mode") return InitKind::single_mode;
    if (s == "two_mode") return InitKind::two_mode;
    if (s == "gaussian_spectrum") return InitKind::gaussian_spectrum;
    if (s == "random_phase") return InitKind::random_phase;
    throw std::invalid_argument("unknown init kind '" + s +
                                "' (expected single_mode, two_mode, gaussian_spectrum "
                                "or random_phase)");
}

std::string to_string(InitKind kind) {
    switch (kind) {
        case InitKind::single_mode: return "single_mode";
        case InitKind::two_mode: return "two_mode";
        case InitKind::gaussian_spectrum: return "gaussian_spectrum";
        case InitKind::random_phase: return "random_phase";
    }
    return "?";
}

namespace {

// Top 53 bits of an mt19937_64 draw mapped to [0, 1); fully pinned by the
// C++ standard, unlike uniform_real_distribution.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_mode_fits(const Grid& grid, const std::array<int, 2>& m) {
    const int half = grid.n() / 2;
    if (std::abs(m[0]) > half || std::abs(m[1]) > half) {
        std::ostringstream msg;
        msg << "mode (" << m[0] << "," << m[1] << ") does not fit on an n = " << grid.n()
            << " grid";
        throw std::invalid_argument(msg.str());
    }
    if (m[0] == 0 && m[1] == 0)
        throw std::invalid_argument("mode (0,0) is the mean and not admissible");
}

int wrap_index(const Grid& grid, int m) { return m >= 0 ? m : m + grid.n(); }

// Adds a * cos(m . x): half-amplitude coefficients at +-m. The two halves
// land on the same slot for self-conjugate (Nyquist) modes, giving the
// correct single coefficient a.
void add_cosine(SpectralField& f, const Grid& grid, const std::array<int, 2>& m, double a) {
    check_mode_fits(grid, m);
    f.at(wrap_index(grid, m[0]), wrap_index(grid, m[1])) += cplx{0.5 * a, 0.0};
    f.at(wrap_index(grid, -m[0]), wrap_index(grid, -m[1])) += cplx{0.5 * a, 0.0};
}

// Visits the canonical half-lattice (excluding the zero mode and the Nyquist
// row/column) in a fixed order and assigns conjugate coefficient pairs from
// the magnitude returned by `mag`.
template <typename MagFn>
void fill_random_phases(SpectralField& f, const Grid& grid, unsigned long long seed,
                        MagFn&& mag) {
    std::mt19937_64 rng(seed);
    const int n = grid.n();
    const int half = n / 2;
    for (int m1 = -half + 1; m1 < half; ++m1) {
        for (int m2 = -half + 1; m2 < half; ++m2) {
            const bool canonical = m1 > 0 || (m1 == 0 && m2 > 0);
            if (!canonical) continue;
            const double r = mag(grid.kappa_mag(wrap_index(grid, m1), wrap_index(grid, m2)));
            if (r == 0.0) continue;
            const double phase = two_pi * unit_double(rng);
            const cplx c = std::polar(r, phase);
            f.at(wrap_index(grid, m1), wrap_index(grid, m2)) = c;
            f.at(wrap_index(grid, -m1), wrap_index(grid, -m2)) = std::conj(c);
        }
    }
}

} // namespace

SpectralField build_initial(const InitSpec& spec, const Grid& grid) {
    SpectralField f(grid);
    switch (spec.kind) {
        case InitKind::single_mode:
            add_cosine(f, grid, spec.mode, spec.amplitude);
            break;
        case InitKind::two_mode:
            add_cosine(f, grid, spec.mode, spec.amplitude);
            add_cosine(f, grid, spec.mode2, spec.amplitude);
            break;
        case InitKind::gaussian_spectrum: {
            if (!(spec.width > 0.0))
                throw std::invalid_argument("gaussian_spectrum: width must be positive");
            const double k0 = spec.kappa0;
            const double s = spec.width;
            fill_random_phases(f, grid, spec.seed, [&](double km) {
                const double d = (km - k0) / s;
                return spec.amplitude * std::exp(-0.5 * d * d);
            });
            break;
        }
        case InitKind::random_phase: {
            if (!(spec.slope > 0.0))
                throw std::invalid_argument("random_phase: slope must be positive");
            // Default cutoff at the dealias edge, so generated data always
            // survives the 2/3-rule untouched.
            const double cutoff = spec.cutoff > 0.0
                                      ? spec.cutoff
                                      : (two_pi / grid.l()) * (grid.n() / 3);
            fill_random_phases(f, grid, spec.seed, [&](double km) {
                if (km > cutoff) return 0.0;
                return spec.amplitude * std::pow(km, -spec.slope);
            });
            break;
        }
    }
    f.zero_mean();
    return f;
}

SpectralField rescale_to_norm(const SpectralField& field, double sigma, double target) {
    if (target == 0.0) return SpectralField(field.grid());
    const double current = chi_norm(field, sigma);
    if (current == 0.0)
        throw std::invalid_argument("rescale_to_norm: cannot rescale a zero field "
                                    "to a nonzero target norm");
    const double scale = target / current;
    SpectralField out = field;
    for (cplx& c : out.coeffs()) c *= scale;
    const double achieved = chi_norm(out, sigma);
    if (std::abs(achieved - target) > 1e-12 * std::max(1.0, std::abs(target)))
        throw std::runtime_error("rescale_to_norm: post-check failed to hit the target norm");
    return out;
}

SpectralField make_initial(const InitSpec& spec, const Grid& grid, double default_sigma) {
    SpectralField f = build_initial(spec, grid);
    if (spec.target_norm) {
        const double sigma = spec.target_sigma.value_or(default_sigma);
        f = rescale_to_norm(f, sigma, *spec.target_norm);
    }
    return f;
}

} // namespace qg
