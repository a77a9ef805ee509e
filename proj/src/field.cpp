#include "qg/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qg {

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const cplx& c : c_) m = std::max(m, std::abs(c));
    return m;
}

bool SpectralField::all_finite() const {
    for (const cplx& c : c_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n();
    double worst = 0.0;
    for (int j1 = 0; j1 < n; ++j1) {
        const int i1 = grid_.conj_index(j1);
        for (int j2 = 0; j2 < n; ++j2) {
            const int i2 = grid_.conj_index(j2);
            const cplx d = at(i1, i2) - std::conj(at(j1, j2));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

void require_mean_zero(const SpectralField& f, const char* what) {
    const double tol = 1e-12 * std::max(1.0, f.max_abs());
    if (std::abs(f.mean_coeff()) > tol)
        throw std::invalid_argument(std::string(what) + ": field must be mean-zero");
}

void require_hermitian(const SpectralField& f, const char* what, double tol) {
    if (f.hermitian_defect() > tol)
        throw std::runtime_error(std::string(what) +
                                 ": corrupted field (Hermitian symmetry violated)");
}

} // namespace qg
