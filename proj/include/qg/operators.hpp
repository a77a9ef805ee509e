#pragma once

#include "qg/field.hpp"

#include <utility>

namespace qg {

// Fourier multiplier |kappa|^s. The zero mode always maps to zero; for s < 0
// the input must be mean-zero (the symbol is singular there otherwise).
SpectralField apply_fractional_power(const SpectralField& field, double s);

// Velocity induced by theta through the stream function: psi solves
// Lambda psi = -theta and u = (-d2 psi, d1 psi), which on the lattice is
//   u1(kappa) =  i kappa_2 theta(kappa) / |kappa|
//   u2(kappa) = -i kappa_1 theta(kappa) / |kappa|
// with the zero mode set to zero. Input must be mean-zero. The result is
// divergence-free mode by mode.
VelocityField velocity_from_theta(const SpectralField& theta);

// Spectral gradient: component j has coefficients i kappa_j c_kappa.
std::pair<SpectralField, SpectralField> gradient(const SpectralField& field);

// 2/3-rule truncation: zero every coefficient with max(|m1|, |m2|) > n/3.
// Idempotent. For n >= 6 the Nyquist row/column always falls in the zeroed
// region.
SpectralField dealias(const SpectralField& field);
void dealias_in_place(SpectralField& field);

} // namespace qg
