#pragma once

#include "qg/field.hpp"

#include <span>
#include <vector>

namespace qg {

// FFTW-backed transforms between real point samples on the uniform grid
// x_j = (l/n) j and spectral coefficients in the convention
// f(x) = sum_kappa c_kappa exp(i kappa.x), i.e. coefficients are the forward
// DFT of the samples divided by n^2.
//
// One instance owns its plans and scratch buffer, so independent instances
// may run concurrently; plan creation itself is serialized internally
// (the FFTW planner is not thread-safe).
class SpectralTransform {
public:
    explicit SpectralTransform(const Grid& grid);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    const Grid& grid() const { return grid_; }

    SpectralField forward(std::span<const double> samples);
    void forward_into(std::span<const double> samples, SpectralField& out);

    // Requires Hermitian symmetry (defect <= 1e-8, else the field is reported
    // as corrupted); the rounding-level imaginary residue of the back
    // transform is checked against 1e-10 and discarded.
    std::vector<double> inverse(const SpectralField& field);
    void inverse_into(const SpectralField& field, std::span<double> out);

    // Inverse without the symmetry/residue checks, for trusted hot loops
    // operating on fields the caller maintains Hermitian.
    void inverse_into_unchecked(const SpectralField& field, std::span<double> out);

private:
    Grid grid_;
    void* buf_;      // fftw_complex[n*n]
    void* plan_fwd_; // fftw_plan
    void* plan_bwd_; // fftw_plan
};

// One-shot conveniences; they plan on every call, so prefer a
// SpectralTransform instance in loops.
SpectralField forward_transform(std::span<const double> samples, const Grid& grid);
std::vector<double> inverse_transform(const SpectralField& field);

} // namespace qg
