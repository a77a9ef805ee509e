#include "qg/initdata.hpp"

#include "qg/diagnostics.hpp"
#include "qg/transform.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace qg;
using qgtest::max_coeff_diff;

namespace {

bool bit_identical(const SpectralField& a, const SpectralField& b) {
    return std::memcmp(a.coeffs().data(), b.coeffs().data(),
                       a.coeffs().size() * sizeof(cplx)) == 0;
}

} // namespace

TEST_CASE("single mode: half-amplitude coefficients at +-m") {
    Grid g(16, two_pi);
    InitSpec spec;
    spec.kind = InitKind::single_mode;
    spec.amplitude = 0.2;
    spec.mode = {1, 0};

    SpectralField f = build_initial(spec, g);
    CHECK(f.at(1, 0) == cplx{0.1, 0.0});
    CHECK(f.at(15, 0) == cplx{0.1, 0.0});
    double rest = 0.0;
    for (int j1 = 0; j1 < 16; ++j1)
        for (int j2 = 0; j2 < 16; ++j2)
            if (!(j2 == 0 && (j1 == 1 || j1 == 15))) rest = std::max(rest, std::abs(f.at(j1, j2)));
    CHECK(rest == 0.0);
}

TEST_CASE("single mode at the Nyquist frequency folds onto one real coefficient") {
    Grid g(16, two_pi);
    InitSpec spec;
    spec.kind = InitKind::single_mode;
    spec.amplitude = 0.4;
    spec.mode = {8, 0};

    SpectralField f = build_initial(spec, g);
    CHECK(f.at(8, 0) == cplx{0.4, 0.0});
    CHECK(f.hermitian_defect() == 0.0);

    auto samples = inverse_transform(f);
    for (int j = 0; j < 16; ++j)
        CHECK(samples[static_cast<size_t>(j) * 16] ==
              doctest::Approx(0.4 * ((j % 2 == 0) ? 1.0 : -1.0)).epsilon(1e-13));
}

TEST_CASE("generators reject out-of-grid or zero modes") {
    Grid g(16, two_pi);
    InitSpec spec;
    spec.kind = InitKind::single_mode;
    spec.mode = {40, 0};
    CHECK_THROWS_AS(build_initial(spec, g), std::invalid_argument);
    spec.mode = {0, 0};
    CHECK_THROWS_AS(build_initial(spec, g), std::invalid_argument);

    InitSpec gauss;
    gauss.kind = InitKind::gaussian_spectrum;
    gauss.width = 0.0;
    CHECK_THROWS_AS(build_initial(gauss, g), std::invalid_argument);

    InitSpec rough;
    rough.kind = InitKind::random_phase;
    rough.slope = -1.0;
    CHECK_THROWS_AS(build_initial(rough, g), std::invalid_argument);
}

TEST_CASE("identical specs produce bit-identical fields") {
    Grid g(64, two_pi);
    for (InitKind kind : {InitKind::gaussian_spectrum, InitKind::random_phase}) {
        InitSpec spec;
        spec.kind = kind;
        spec.seed = 7;
        SpectralField a = build_initial(spec, g);
        SpectralField b = build_initial(spec, g);
        CHECK(bit_identical(a, b));

        spec.seed = 8;
        SpectralField c = build_initial(spec, g);
        CHECK_FALSE(bit_identical(a, c));
    }
}

TEST_CASE("gaussian spectrum: mean-zero, Hermitian, finite norms") {
    Grid g(64, two_pi);
    InitSpec spec;
    spec.kind = InitKind::gaussian_spectrum;
    spec.kappa0 = 4.0;
    spec.width = 1.0;
    spec.seed = 7;

    SpectralField f = build_initial(spec, g);
    CHECK(f.mean_coeff() == cplx{0.0, 0.0});
    CHECK(f.hermitian_defect() == 0.0);
    const double chi = chi_norm(f, -0.5);
    CHECK(std::isfinite(chi));
    CHECK(chi > 0.0);

    // The spectral profile peaks near kappa0.
    double near = std::abs(f.at(4, 0));
    double far = std::abs(f.at(20, 0));
    CHECK(near > far);
}

TEST_CASE("random phase spectrum honors its cutoff") {
    Grid g(32, two_pi);
    InitSpec spec;
    spec.kind = InitKind::random_phase;
    spec.slope = 2.0;
    spec.cutoff = 5.0;
    spec.seed = 3;

    SpectralField f = build_initial(spec, g);
    for (int j1 = 0; j1 < 32; ++j1)
        for (int j2 = 0; j2 < 32; ++j2)
            if (g.kappa_mag(j1, j2) > 5.0) CHECK(f.at(j1, j2) == cplx{0.0, 0.0});
    CHECK(chi_norm(f, 1.0) > 0.0);
}

TEST_CASE("rescale hits the target norm exactly") {
    Grid g(16, two_pi);
    SpectralField base = qgtest::cos_field(g, 1, 0, 1.0);

    SpectralField scaled = rescale_to_norm(base, -0.5, 0.2);
    CHECK(std::abs(scaled.at(1, 0) - cplx{0.1, 0.0}) < 1e-15);

    CHECK(rescale_to_norm(base, 1.0, 0.0).max_abs() == 0.0);

    SpectralField r = qgtest::random_hermitian_field(g, 77);
    SpectralField out = rescale_to_norm(r, -0.5, 0.24);
    CHECK(std::abs(chi_norm(out, -0.5) - 0.24) <= 1e-12 * 0.24);

    SpectralField again = rescale_to_norm(out, -0.5, 0.24);
    CHECK(max_coeff_diff(again, out) <= 1e-14 * out.max_abs());

    CHECK_THROWS_AS(rescale_to_norm(SpectralField(g), -0.5, 0.1), std::invalid_argument);
}

TEST_CASE("make_initial applies the target norm at the default weight") {
    Grid g(32, two_pi);
    InitSpec spec;
    spec.kind = InitKind::gaussian_spectrum;
    spec.seed = 5;
    spec.target_norm = 0.2;

    const double sigma = 1.0 - 2.0 * 0.75;
    SpectralField f = make_initial(spec, g, sigma);
    CHECK(chi_norm(f, sigma) == doctest::Approx(0.2).epsilon(1e-12));

    spec.target_sigma = 1.0;
    SpectralField h = make_initial(spec, g, sigma);
    CHECK(chi_norm(h, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("every generator kind yields admissible dynamics input") {
    Grid g(32, two_pi);
    for (InitKind kind : {InitKind::single_mode, InitKind::two_mode,
                          InitKind::gaussian_spectrum, InitKind::random_phase}) {
        InitSpec spec;
        spec.kind = kind;
        spec.seed = 9;
        SpectralField f = build_initial(spec, g);
        CHECK(f.mean_coeff() == cplx{0.0, 0.0});
        CHECK(f.hermitian_defect() == 0.0);
    }
}

TEST_CASE("init kind names round-trip") {
    for (InitKind kind : {InitKind::single_mode, InitKind::two_mode,
                          InitKind::gaussian_spectrum, InitKind::random_phase})
        CHECK(init_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(init_kind_from_string("fourier_snow"), std::invalid_argument);
}
