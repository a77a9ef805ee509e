#include "qg/dynamics.hpp"

#include "qg/initdata.hpp"
#include "qg/operators.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>

using namespace qg;
using qgtest::cos_field;
using qgtest::energy_balance;
using qgtest::max_coeff_diff;
using qgtest::observed_order;
using qgtest::oracle_nonlinear;
using qgtest::random_hermitian_field;

namespace {

SpectralField two_mode(const Grid& g, double amp) {
    SpectralField f = cos_field(g, 1, 0, amp);
    const SpectralField second = cos_field(g, 0, 2, amp);
    for (size_t i = 0; i < f.coeffs().size(); ++i) f.coeffs()[i] += second.coeffs()[i];
    return f;
}

} // namespace

TEST_CASE("simulation parameters are validated") {
    SimParams p;
    CHECK_NOTHROW(p.validate());
    p.alpha = 1.0;
    CHECK_NOTHROW(p.validate());

    auto reject = [](auto&& tweak) {
        SimParams q;
        tweak(q);
        CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    };
    reject([](SimParams& q) { q.alpha = 0.5; });
    reject([](SimParams& q) { q.alpha = 0.4; });
    reject([](SimParams& q) { q.alpha = 1.1; });
    reject([](SimParams& q) { q.k = 0.0; });
    reject([](SimParams& q) { q.dt = 0.0; });
    reject([](SimParams& q) { q.cfl_coeff = 0.0; });
    reject([](SimParams& q) { q.cfl_coeff = 1.5; });
    reject([](SimParams& q) { q.record_every = 0; });

    SimParams msg;
    msg.alpha = 0.4;
    CHECK_THROWS_WITH_AS(msg.validate(), doctest::Contains("1/2 < alpha <= 1"),
                         std::invalid_argument);
}

TEST_CASE("nonlinear term vanishes on unidirectional and equal-wavenumber data") {
    Grid g(16, two_pi);
    CHECK(nonlinear_term(cos_field(g, 1, 0, 1.0), false).max_abs() < 1e-15);

    // cos(x1) + cos(x2): the two advection contributions cancel pointwise.
    SpectralField f = cos_field(g, 1, 0, 1.0);
    const SpectralField second = cos_field(g, 0, 1, 1.0);
    for (size_t i = 0; i < f.coeffs().size(); ++i) f.coeffs()[i] += second.coeffs()[i];
    CHECK(nonlinear_term(f, false).max_abs() < 1e-14);
}

TEST_CASE("nonlinear term of cos(x1) + cos(2 x2) is sin(x1) sin(2 x2)") {
    Grid g(16, two_pi);
    SpectralField N = nonlinear_term(two_mode(g, 1.0), false);

    SpectralField want(g);
    want.at(1, 2) = cplx{-0.25, 0.0};
    want.at(1, 14) = cplx{0.25, 0.0};
    want.at(15, 2) = cplx{0.25, 0.0};
    want.at(15, 14) = cplx{-0.25, 0.0};
    CHECK(max_coeff_diff(N, want) <= 1e-12);
}

TEST_CASE("pseudospectral product matches the direct convolution sum") {
    for (int n : {8, 12, 16}) {
        Grid g(n, two_pi);
        for (unsigned long long seed : {101ull, 102ull}) {
            SpectralField theta = random_hermitian_field(g, seed, 0.5);
            for (bool dealias_on : {false, true}) {
                SpectralField fast = nonlinear_term(theta, dealias_on);
                SpectralField slow = oracle_nonlinear(theta, dealias_on);
                CHECK(max_coeff_diff(fast, slow) <= 1e-10);
            }
        }
    }
}

TEST_CASE("integrating factor makes unidirectional decay exact") {
    Grid g(32, two_pi);
    SimParams params;
    params.alpha = 0.75;
    params.k = 1.0;
    params.dt = 1e-3;

    SimState state(cos_field(g, 1, 0, 0.2));
    IfRk4Stepper stepper(g, params);
    for (int i = 0; i < 1000; ++i) stepper.step(state, params.dt);

    CHECK(state.t == doctest::Approx(1.0).epsilon(1e-12));
    const double amp = 2.0 * std::abs(state.theta.at(1, 0));
    CHECK(std::abs(amp - exact_decay_reference(0.2, 1, params.alpha, params.k, 1.0)) < 1e-12);
    CHECK(std::abs(amp - 0.0735759) < 1e-7);

    // Unidirectional data stay unidirectional.
    SpectralField rest = state.theta;
    rest.at(1, 0) = rest.at(31, 0) = cplx{0.0, 0.0};
    CHECK(rest.max_abs() < 1e-17);
}

TEST_CASE("halving dt drops the error by about 2^4") {
    const double order = observed_order(16, 0.5, 0.8, 0.1);
    CHECK(order > 3.6);
    CHECK(order < 4.4);
}

TEST_CASE("zero initial data stays zero") {
    Grid g(16, two_pi);
    SimParams params;
    params.dt = 1e-2;
    params.t_end = 0.3;
    NormSeries series = simulate(SpectralField(g), params);
    for (const NormRecord& r : series.records()) {
        CHECK(r.chi_low == 0.0);
        CHECK(r.l2 == 0.0);
    }
}

TEST_CASE("cfl estimate from the advecting velocity") {
    Grid g(64, two_pi);
    // u = (0, sin(x1)) is the velocity induced by theta = cos(x1).
    VelocityField u = velocity_from_theta(cos_field(g, 1, 0, 1.0));
    const double dt = cfl_dt(u, g, 0.5);
    CHECK(dt == doctest::Approx(0.5 * (two_pi / 64.0)).epsilon(1e-12));

    VelocityField zero{SpectralField(g), SpectralField(g)};
    CHECK(std::isinf(cfl_dt(zero, g, 0.5)));

    VelocityField doubled = u;
    for (cplx& c : doubled.u1.coeffs()) c *= 2.0;
    for (cplx& c : doubled.u2.coeffs()) c *= 2.0;
    CHECK(cfl_dt(doubled, g, 0.5) == doctest::Approx(0.5 * dt).epsilon(1e-12));
}

TEST_CASE("simulate reproduces the exact unidirectional trajectory") {
    Grid g(32, two_pi);
    SimParams params;
    params.alpha = 0.75;
    params.k = 1.0;
    params.dt = 1e-3;
    params.t_end = 1.0;
    params.record_every = 100;

    NormSeries series = simulate(cos_field(g, 1, 0, 0.2), params);
    CHECK(series.back().t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(series.back().chi_low - 0.2 * std::exp(-1.0)) < 1e-8);
}

TEST_CASE("simulate with t_end = 0 returns the single initial record") {
    Grid g(16, two_pi);
    SimParams params;
    params.t_end = 0.0;
    NormSeries series = simulate(cos_field(g, 1, 0, 0.2), params);
    CHECK(series.size() == 1);
    CHECK(series.front().t == 0.0);
    CHECK(series.front().chi_low == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("the mean stays exactly zero and symmetry survives a run") {
    Grid g(16, two_pi);
    SimParams params;
    params.dt = 5e-3;
    params.t_end = 0.25;

    SpectralField theta0 = random_hermitian_field(g, 202, 0.3);
    bool mean_ok = true;
    double worst_defect = 0.0;
    NormSeries series = simulate(theta0, params, [&](const SimState& s) {
        mean_ok = mean_ok && s.theta.mean_coeff() == cplx{0.0, 0.0};
        worst_defect = std::max(worst_defect, s.theta.hermitian_defect());
    });
    CHECK(mean_ok);
    CHECK(worst_defect <= 1e-13);
    CHECK(series.size() == 51);
}

TEST_CASE("per-step L2 balance closes to quadrature accuracy") {
    // Two-mode benchmark: d/dt ||theta||^2 + 2k ||Lambda^alpha theta||^2 = 0
    // holds for the dealiased semi-discrete system; the corrected-trapezoid
    // residual per dt = 1e-3 step must stay below 1e-10.
    Grid g(32, two_pi);
    SimParams params;
    params.alpha = 0.75;
    params.k = 1.0;
    params.dt = 1e-3;
    params.t_end = 0.1;

    SpectralField theta0 = rescale_to_norm(two_mode(g, 1.0), params.sigma_low(), 0.2);
    const qgtest::EnergyBalance bal = energy_balance(theta0, params);
    CHECK(bal.max_residual <= 1e-10);
    CHECK(bal.worst_l2_increase <= 1e-12);
}

TEST_CASE("the L2 norm never increases along trajectories") {
    Grid g(16, two_pi);
    SimParams params;
    params.alpha = 0.7;
    params.dt = 2e-3;
    params.t_end = 0.3;
    SpectralField theta0 = random_hermitian_field(g, 301, 0.4);
    NormSeries series = simulate(theta0, params);
    const auto& rec = series.records();
    for (size_t i = 0; i + 1 < rec.size(); ++i) CHECK(rec[i + 1].l2 <= rec[i].l2 + 1e-12);
}

TEST_CASE("exact decay reference values") {
    CHECK(exact_decay_reference(0.2, 1, 0.75, 1.0, 1.0) ==
          doctest::Approx(0.2 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(exact_decay_reference(0.2, 1, 0.9, 1.0, 1.0) ==
          doctest::Approx(0.2 * std::exp(-1.0)).epsilon(1e-15)); // alpha drops out at |m| = 1
    CHECK(exact_decay_reference(0.7, 3, 0.8, 2.0, 0.0) == 0.7);
    CHECK(exact_decay_reference(1.0, 2, 0.75, 1.0, 0.5) ==
          doctest::Approx(std::exp(-std::pow(2.0, 1.5) * 0.5)).epsilon(1e-15));
    CHECK(std::abs(exact_decay_reference(1.0, 2, 0.75, 1.0, 0.5) - 0.243117) < 1e-6);
    CHECK_THROWS_AS(exact_decay_reference(1.0, 0, 0.75, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("blow-up is detected and carries the partial series") {
    Grid g(16, two_pi);
    SimParams params;
    params.dt = 1e-2;
    params.t_end = 1.0;

    // chi threshold: an admissible-looking field far above 1e6 aborts at the
    // first record.
    SpectralField huge = cos_field(g, 1, 0, 1e7);
    try {
        simulate(huge, params);
        FAIL("expected BlowupError");
    } catch (const BlowupError& e) {
        CHECK(e.partial_series().size() == 1);
        CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
    }

    // Non-finite coefficients surface from the stepper with the step index.
    SpectralField overflow = cos_field(g, 1, 0, 1e200);
    SimState state(overflow);
    IfRk4Stepper stepper(g, params);
    CHECK_THROWS_AS(stepper.step(state, 1e-2), BlowupError);
}

TEST_CASE("one-shot step_ifrk4 advances t by dt") {
    Grid g(16, two_pi);
    SimParams params;
    params.dt = 1e-2;
    SimState next = step_ifrk4(SimState(cos_field(g, 1, 0, 0.2)), params);
    CHECK(next.t == 1e-2);
    CHECK(next.step_count == 1);
}
