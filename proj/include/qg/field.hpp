#pragma once

#include "qg/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace qg {

using cplx = std::complex<double>;

// Fourier coefficients of a real scalar field on a Grid, stored row-major
// over (j1, j2) with the convention f(x) = sum_kappa c_kappa exp(i kappa.x).
// A real physical field has c(-kappa) = conj(c(kappa)); fields entering the
// dynamics are additionally mean-zero (c at the zero mode vanishes).
class SpectralField {
public:
    explicit SpectralField(const Grid& grid)
        : grid_(grid), c_(static_cast<size_t>(grid.size()), cplx{0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n(); }

    cplx& at(int j1, int j2) { return c_[static_cast<size_t>(j1) * grid_.n() + j2]; }
    const cplx& at(int j1, int j2) const { return c_[static_cast<size_t>(j1) * grid_.n() + j2]; }

    std::span<cplx> coeffs() { return c_; }
    std::span<const cplx> coeffs() const { return c_; }

    cplx mean_coeff() const { return c_[0]; }
    void zero_mean() { c_[0] = cplx{0.0, 0.0}; }

    double max_abs() const;
    bool all_finite() const;

    // Largest |c(-kappa) - conj(c(kappa))| over the lattice.
    double hermitian_defect() const;

private:
    Grid grid_;
    std::vector<cplx> c_;
};

struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

// Contract checks shared by the operators; `what` names the caller in errors.
void require_mean_zero(const SpectralField& f, const char* what);
void require_hermitian(const SpectralField& f, const char* what, double tol = 1e-8);

} // namespace qg
