#include "qg/dynamics.hpp"

#include "qg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qg {

void SimParams::validate() const {
    if (!(alpha > 0.5 && alpha <= 1.0)) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << " out of range; admissible range is 1/2 < alpha <= 1";
        throw std::invalid_argument(msg.str());
    }
    if (!(k > 0.0))
        throw std::invalid_argument("k must be positive (dissipative coefficient)");
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (!(t_end >= 0.0))
        throw std::invalid_argument("t_end must be nonnegative");
    if (!(cfl_coeff > 0.0 && cfl_coeff <= 1.0))
        throw std::invalid_argument("cfl_coeff must lie in (0, 1]");
    if (record_every < 1)
        throw std::invalid_argument("record_every must be >= 1");
}

struct IfRk4Stepper::Impl {
    Grid grid;
    SimParams params;
    SpectralTransform tr;

    std::vector<double> kap1, kap2; // kappa component per flat index
    std::vector<double> kmag;       // |kappa|, sentinel 1 at the zero mode
    std::vector<double> diss;       // k |kappa|^(2 alpha), 0 at the zero mode
    std::vector<char> keep;         // dealias mask (1 = kept)

    double cached_dt = -1.0;
    std::vector<double> ehalf; // exp(-diss dt/2)
    std::vector<double> efull; // exp(-diss dt)

    SpectralField su1, su2, sg1, sg2, sN, sStage, sAcc;
    std::vector<double> p1, p2, p3, p4, prod;

    Impl(const Grid& g, const SimParams& p)
        : grid(g), params(p), tr(g),
          su1(g), su2(g), sg1(g), sg2(g), sN(g), sStage(g), sAcc(g) {
        const int n = g.n();
        const size_t nn = static_cast<size_t>(g.size());
        kap1.resize(nn);
        kap2.resize(nn);
        kmag.resize(nn);
        diss.resize(nn);
        keep.assign(nn, 1);
        for (int j1 = 0; j1 < n; ++j1) {
            for (int j2 = 0; j2 < n; ++j2) {
                const size_t i = static_cast<size_t>(j1) * n + j2;
                kap1[i] = g.kappa(j1);
                kap2[i] = g.kappa(j2);
                const double km = g.kappa_mag(j1, j2);
                kmag[i] = km;
                diss[i] = p.k * std::pow(km, 2.0 * p.alpha);
                keep[i] = 3 * std::max(std::abs(g.mode(j1)), std::abs(g.mode(j2))) <= n;
            }
        }
        kmag[0] = 1.0;
        diss[0] = 0.0;
        ehalf.resize(nn);
        efull.resize(nn);
        p1.resize(nn);
        p2.resize(nn);
        p3.resize(nn);
        p4.resize(nn);
        prod.resize(nn);
    }

    void refresh_factors(double dt) {
        if (dt == cached_dt) return;
        for (size_t i = 0; i < diss.size(); ++i) {
            ehalf[i] = std::exp(-0.5 * dt * diss[i]);
            efull[i] = ehalf[i] * ehalf[i];
        }
        cached_dt = dt;
    }

    void velocity_into(const SpectralField& theta, SpectralField& out1, SpectralField& out2) {
        const cplx* c = theta.coeffs().data();
        cplx* u1 = out1.coeffs().data();
        cplx* u2 = out2.coeffs().data();
        for (size_t i = 0; i < kap1.size(); ++i) {
            const cplx r = c[i] / kmag[i];
            u1[i] = cplx{0.0, 1.0} * (kap2[i] * r);
            u2[i] = cplx{0.0, -1.0} * (kap1[i] * r);
        }
        u1[0] = u2[0] = cplx{0.0, 0.0};
    }

    // out = -u.grad(theta), dealiased per params, exactly mean-zero.
    void nonlinear(const SpectralField& theta, SpectralField& out) {
        velocity_into(theta, su1, su2);
        const cplx* c = theta.coeffs().data();
        cplx* g1 = sg1.coeffs().data();
        cplx* g2 = sg2.coeffs().data();
        for (size_t i = 0; i < kap1.size(); ++i) {
            g1[i] = cplx{0.0, kap1[i]} * c[i];
            g2[i] = cplx{0.0, kap2[i]} * c[i];
        }
        tr.inverse_into_unchecked(su1, p1);
        tr.inverse_into_unchecked(su2, p2);
        tr.inverse_into_unchecked(sg1, p3);
        tr.inverse_into_unchecked(sg2, p4);
        for (size_t i = 0; i < prod.size(); ++i) prod[i] = p1[i] * p3[i] + p2[i] * p4[i];
        tr.forward_into(prod, out);
        cplx* o = out.coeffs().data();
        if (params.dealias_on) {
            for (size_t i = 0; i < prod.size(); ++i) o[i] = keep[i] ? -o[i] : cplx{0.0, 0.0};
        } else {
            for (size_t i = 0; i < prod.size(); ++i) o[i] = -o[i];
        }
        out.zero_mean();
    }

    double current_cfl(const SpectralField& theta) {
        velocity_into(theta, su1, su2);
        tr.inverse_into_unchecked(su1, p1);
        tr.inverse_into_unchecked(su2, p2);
        double speed = 0.0;
        for (size_t i = 0; i < p1.size(); ++i)
            speed = std::max(speed, std::abs(p1[i]) + std::abs(p2[i]));
        if (speed == 0.0) return std::numeric_limits<double>::infinity();
        return params.cfl_coeff * grid.dx() / speed;
    }

    void step(SimState& state, double dt) {
        refresh_factors(dt);
        const size_t nn = kap1.size();
        cplx* th = state.theta.coeffs().data();
        cplx* N = sN.coeffs().data();
        cplx* stage = sStage.coeffs().data();
        cplx* acc = sAcc.coeffs().data();

        // a = N(theta_n)
        nonlinear(state.theta, sN);
        for (size_t i = 0; i < nn; ++i) {
            acc[i] = efull[i] * (th[i] + (dt / 6.0) * N[i]);
            stage[i] = ehalf[i] * (th[i] + 0.5 * dt * N[i]);
        }
        // b = N(E (theta_n + dt/2 a)), evaluated at t + dt/2
        nonlinear(sStage, sN);
        for (size_t i = 0; i < nn; ++i) {
            acc[i] += (dt / 3.0) * ehalf[i] * N[i];
            stage[i] = ehalf[i] * th[i] + 0.5 * dt * N[i];
        }
        // c = N(E theta_n + dt/2 b)
        nonlinear(sStage, sN);
        for (size_t i = 0; i < nn; ++i) {
            acc[i] += (dt / 3.0) * ehalf[i] * N[i];
            stage[i] = efull[i] * th[i] + dt * ehalf[i] * N[i];
        }
        // d = N(E^2 theta_n + dt E c), evaluated at t + dt
        nonlinear(sStage, sN);
        for (size_t i = 0; i < nn; ++i) th[i] = acc[i] + (dt / 6.0) * N[i];

        state.t += dt;
        state.step_count += 1;

        if (!state.theta.all_finite()) {
            std::ostringstream msg;
            msg << "blow-up: non-finite coefficients after step " << state.step_count
                << " at t = " << state.t;
            throw BlowupError(msg.str(), state.t, state.step_count);
        }
    }
};

IfRk4Stepper::IfRk4Stepper(const Grid& grid, const SimParams& params) {
    params.validate();
    impl_ = std::make_unique<Impl>(grid, params);
}

IfRk4Stepper::~IfRk4Stepper() = default;

void IfRk4Stepper::step(SimState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_ifrk4: dt must be positive");
    impl_->step(state, dt);
}

double IfRk4Stepper::current_cfl_dt(const SpectralField& theta) {
    return impl_->current_cfl(theta);
}

SpectralField IfRk4Stepper::nonlinear(const SpectralField& theta) {
    SpectralField out(impl_->grid);
    impl_->nonlinear(theta, out);
    return out;
}

SimState step_ifrk4(const SimState& state, const SimParams& params) {
    IfRk4Stepper stepper(state.theta.grid(), params);
    SimState next = state;
    stepper.step(next, params.dt);
    return next;
}

SpectralField nonlinear_term(const SpectralField& theta, bool dealias_on) {
    require_mean_zero(theta, "nonlinear_term");
    SimParams params;
    params.dealias_on = dealias_on;
    IfRk4Stepper stepper(theta.grid(), params);
    return stepper.nonlinear(theta);
}

double cfl_dt(const VelocityField& u, const Grid& grid, double cfl_coeff) {
    SpectralTransform tr(grid);
    std::vector<double> u1(static_cast<size_t>(grid.size()));
    std::vector<double> u2(u1.size());
    tr.inverse_into(u.u1, u1);
    tr.inverse_into(u.u2, u2);
    double speed = 0.0;
    for (size_t i = 0; i < u1.size(); ++i)
        speed = std::max(speed, std::abs(u1[i]) + std::abs(u2[i]));
    if (speed == 0.0) return std::numeric_limits<double>::infinity();
    return cfl_coeff * grid.dx() / speed;
}

namespace {

NormSeries run_loop(SimState& state, const SimParams& params, const Observer& observer) {
    const Grid& grid = state.theta.grid();
    IfRk4Stepper stepper(grid, params);

    const std::vector<double> w_low = chi_weights(grid, params.sigma_low());
    const std::vector<double> w_one = chi_weights(grid, 1.0);

    NormSeries series;
    auto record = [&](const SimState& s) {
        const double chi_low = chi_weighted_sum(s.theta, w_low);
        const double chi_one = chi_weighted_sum(s.theta, w_one);
        series.append(s.t, chi_low, chi_one, l2_norm(s.theta));
        if (observer) observer(s);
        if (chi_low > blowup_chi_threshold) {
            std::ostringstream msg;
            msg << "blow-up: chi norm " << chi_low << " exceeds " << blowup_chi_threshold
                << " at step " << s.step_count << ", t = " << s.t;
            throw BlowupError(msg.str(), s.t, s.step_count, series);
        }
    };

    record(state);
    long last_recorded = state.step_count;

    const double eps_stop = 1e-9 * params.dt;
    try {
        while (params.t_end - state.t > eps_stop) {
            double dt = std::min(params.dt, stepper.current_cfl_dt(state.theta));
            dt = std::min(dt, params.t_end - state.t);
            stepper.step(state, dt);
            if (state.step_count % params.record_every == 0) {
                record(state);
                last_recorded = state.step_count;
            }
        }
    } catch (BlowupError& e) {
        if (e.partial_series().empty()) e.set_partial(series);
        throw;
    }
    if (last_recorded != state.step_count) record(state);
    return series;
}

} // namespace

NormSeries simulate_from(SimState state, const SimParams& params, const Observer& observer) {
    params.validate();
    require_hermitian(state.theta, "simulate");
    require_mean_zero(state.theta, "simulate");
    return run_loop(state, params, observer);
}

NormSeries simulate(const SpectralField& theta0, const SimParams& params,
                    const Observer& observer) {
    return simulate_from(SimState(theta0), params, observer);
}

double exact_decay_reference(double a, int m, double alpha, double k, double t, double l) {
    if (m == 0) throw std::invalid_argument("exact_decay_reference: mode m must be nonzero");
    const double kmag = std::abs(m) * two_pi / l;
    return a * std::exp(-k * std::pow(kmag, 2.0 * alpha) * t);
}

} // namespace qg
