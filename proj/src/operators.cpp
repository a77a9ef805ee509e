#include "qg/operators.hpp"

#include <cmath>
#include <cstdlib>

namespace qg {

SpectralField apply_fractional_power(const SpectralField& field, double s) {
    if (s < 0.0) require_mean_zero(field, "apply_fractional_power");
    const Grid& g = field.grid();
    const int n = g.n();
    SpectralField out(g);
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            if (j1 == 0 && j2 == 0) continue; // zero mode maps to 0 for every s
            out.at(j1, j2) = std::pow(g.kappa_mag(j1, j2), s) * field.at(j1, j2);
        }
    }
    return out;
}

VelocityField velocity_from_theta(const SpectralField& theta) {
    require_mean_zero(theta, "velocity_from_theta");
    const Grid& g = theta.grid();
    const int n = g.n();
    VelocityField u{SpectralField(g), SpectralField(g)};
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.kappa(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            if (j1 == 0 && j2 == 0) continue;
            const double k2 = g.kappa(j2);
            const cplx r = theta.at(j1, j2) / g.kappa_mag(j1, j2);
            u.u1.at(j1, j2) = cplx{0.0, 1.0} * (k2 * r);
            u.u2.at(j1, j2) = cplx{0.0, -1.0} * (k1 * r);
        }
    }
    return u;
}

std::pair<SpectralField, SpectralField> gradient(const SpectralField& field) {
    const Grid& g = field.grid();
    const int n = g.n();
    std::pair<SpectralField, SpectralField> d{SpectralField(g), SpectralField(g)};
    for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = g.kappa(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const double k2 = g.kappa(j2);
            const cplx c = field.at(j1, j2);
            d.first.at(j1, j2) = cplx{0.0, k1} * c;
            d.second.at(j1, j2) = cplx{0.0, k2} * c;
        }
    }
    return d;
}

void dealias_in_place(SpectralField& field) {
    const Grid& g = field.grid();
    const int n = g.n();
    for (int j1 = 0; j1 < n; ++j1) {
        const int m1 = std::abs(g.mode(j1));
        for (int j2 = 0; j2 < n; ++j2) {
            const int m2 = std::abs(g.mode(j2));
            // max(|m1|,|m2|) > n/3, kept exact in integer arithmetic
            if (3 * std::max(m1, m2) > n) field.at(j1, j2) = cplx{0.0, 0.0};
        }
    }
}

SpectralField dealias(const SpectralField& field) {
    SpectralField out = field;
    dealias_in_place(out);
    return out;
}

} // namespace qg
