#pragma once

#include <cmath>
#include <stdexcept>

namespace qg {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Uniform periodic grid on [0, l)^2 with n collocation points per dimension.
// Index j in [0, n) carries the signed integer frequency m(j) in
// {-n/2+1, ..., n/2}; the physical wavenumber is kappa = (2*pi/l) * m.
// The lattice is symmetric under negation except for the Nyquist row/column
// (m = n/2), which is its own negative modulo n.
class Grid {
public:
    Grid(int n, double l) : n_(n), l_(l) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be an even integer >= 4");
        if (!(l > 0.0))
            throw std::invalid_argument("Grid: box length l must be positive");
    }

    int n() const { return n_; }
    double l() const { return l_; }
    int size() const { return n_ * n_; }
    double dx() const { return l_ / n_; }

    // Signed integer frequency of index j, in {-n/2+1, ..., n/2}.
    int mode(int j) const { return j <= n_ / 2 ? j : j - n_; }

    double kappa(int j) const { return two_pi / l_ * mode(j); }

    double kappa_mag(int j1, int j2) const {
        const double k1 = kappa(j1);
        const double k2 = kappa(j2);
        return std::sqrt(k1 * k1 + k2 * k2);
    }

    // Index holding the negated mode; the Nyquist index maps to itself.
    int conj_index(int j) const { return j == 0 ? 0 : n_ - j; }

    bool operator==(const Grid& o) const { return n_ == o.n_ && l_ == o.l_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    int n_;
    double l_;
};

} // namespace qg
