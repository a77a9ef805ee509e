#pragma once

#include "qg/diagnostics.hpp"
#include "qg/field.hpp"
#include "qg/transform.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace qg {

// Physical and numerical parameters of a run of
//   d theta/dt + u.grad(theta) + k Lambda^(2 alpha) theta = 0.
struct SimParams {
    double alpha = 0.75;    // dissipation exponent, 1/2 < alpha <= 1
    double k = 1.0;         // dissipation coefficient, > 0
    double dt = 1e-3;       // requested step; each step uses min(dt, cfl_dt)
    double t_end = 1.0;
    double cfl_coeff = 0.5; // in (0, 1]
    bool dealias_on = true;
    long record_every = 1;  // steps between diagnostic records

    double sigma_low() const { return 1.0 - 2.0 * alpha; }
    void validate() const;
};

struct SimState {
    double t = 0.0;
    long step_count = 0;
    SpectralField theta;

    explicit SimState(SpectralField theta0) : theta(std::move(theta0)) {}
};

// Thrown when a step produces non-finite coefficients or the chi_(1-2alpha)
// norm exceeds the blow-up threshold. Carries the series accumulated so far.
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& msg, double t, long step, NormSeries partial = {})
        : std::runtime_error(msg), t_(t), step_(step), partial_(std::move(partial)) {}

    double time() const { return t_; }
    long step() const { return step_; }
    const NormSeries& partial_series() const { return partial_; }
    void set_partial(NormSeries s) { partial_ = std::move(s); }

private:
    double t_;
    long step_;
    NormSeries partial_;
};

inline constexpr double blowup_chi_threshold = 1e6;

// N(theta) = -u.grad(theta) formed pseudospectrally: transform the factors to
// physical space, multiply pointwise, transform the product back, then apply
// the 2/3-rule truncation when enabled. Output is mean-zero and Hermitian.
SpectralField nonlinear_term(const SpectralField& theta, bool dealias_on);

// cfl_coeff * (l/n) / max(|u1| + |u2|) over the grid points; +infinity when
// the velocity vanishes identically (caller caps at the requested dt).
double cfl_dt(const VelocityField& u, const Grid& grid, double cfl_coeff);

// Classical RK4 applied to the integrating-factor variable
// w(t) = exp(k |kappa|^(2 alpha) t) theta_hat(t), so the linear dissipation
// is integrated exactly. Owns the transform and multiplier tables for one
// grid; reusable across steps of varying dt.
class IfRk4Stepper {
public:
    IfRk4Stepper(const Grid& grid, const SimParams& params);
    ~IfRk4Stepper();

    // Advances state by one step of size dt. Throws BlowupError on
    // non-finite coefficients, naming the offending step.
    void step(SimState& state, double dt);

    // CFL estimate from the velocity induced by theta; +infinity when it
    // vanishes.
    double current_cfl_dt(const SpectralField& theta);

    // The N(theta) its stages use, evaluated with this stepper's workspace.
    SpectralField nonlinear(const SpectralField& theta);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One step of size params.dt (convenience over IfRk4Stepper).
SimState step_ifrk4(const SimState& state, const SimParams& params);

// Invoked at every diagnostic record with the current state (t, theta and
// step_count), synchronously on the simulation's own execution context.
using Observer = std::function<void(const SimState& state)>;

// Advances theta0 from t = 0 to params.t_end, recording norms (and invoking
// the observer) at step 0, every record_every steps, and at the final step.
// Each step uses min(params.dt, cfl_dt, time remaining). On blow-up the
// partial series is attached to the thrown BlowupError.
NormSeries simulate(const SpectralField& theta0, const SimParams& params,
                    const Observer& observer = {});

// Same, but continuing from an existing state (t and step_count preserved);
// the integral column accumulates from the starting time.
NormSeries simulate_from(SimState state, const SimParams& params,
                         const Observer& observer = {});

// Exact amplitude a * exp(-k |m 2 pi / l|^(2 alpha) t) of unidirectional data
// a cos(m-th mode), for which the nonlinear term vanishes identically.
double exact_decay_reference(double a, int m, double alpha, double k, double t,
                             double l = two_pi);

} // namespace qg
