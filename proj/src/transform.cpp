#include "qg/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace qg {

namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

SpectralTransform::SpectralTransform(const Grid& grid) : grid_(grid) {
    const int n = grid_.n();
    buf_ = fftw_alloc_complex(static_cast<size_t>(n) * n);
    if (!buf_) throw std::bad_alloc();
    auto* buf = static_cast<fftw_complex*>(buf_);
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic, which the byte-identical
    // output guarantee relies on.
    plan_fwd_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("SpectralTransform: FFTW planning failed");
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void SpectralTransform::forward_into(std::span<const double> samples, SpectralField& out) {
    const size_t nn = static_cast<size_t>(grid_.size());
    if (samples.size() != nn)
        throw std::invalid_argument("forward_transform: sample array does not match the grid");
    if (out.grid() != grid_)
        throw std::invalid_argument("forward_transform: output grid mismatch");

    auto* buf = static_cast<fftw_complex*>(buf_);
    for (size_t i = 0; i < nn; ++i) {
        buf[i][0] = samples[i];
        buf[i][1] = 0.0;
    }
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));

    const double scale = 1.0 / static_cast<double>(nn);
    cplx* c = out.coeffs().data();
    for (size_t i = 0; i < nn; ++i) c[i] = cplx{buf[i][0] * scale, buf[i][1] * scale};
}

SpectralField SpectralTransform::forward(std::span<const double> samples) {
    SpectralField out(grid_);
    forward_into(samples, out);
    return out;
}

void SpectralTransform::inverse_into_unchecked(const SpectralField& field, std::span<double> out) {
    const size_t nn = static_cast<size_t>(grid_.size());
    if (field.grid() != grid_ || out.size() != nn)
        throw std::invalid_argument("inverse_transform: field does not match the grid");

    auto* buf = static_cast<fftw_complex*>(buf_);
    const cplx* c = field.coeffs().data();
    for (size_t i = 0; i < nn; ++i) {
        buf[i][0] = c[i].real();
        buf[i][1] = c[i].imag();
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    for (size_t i = 0; i < nn; ++i) out[i] = buf[i][0];
}

void SpectralTransform::inverse_into(const SpectralField& field, std::span<double> out) {
    require_hermitian(field, "inverse_transform");
    inverse_into_unchecked(field, out);

    // The back transform of a Hermitian field is real up to rounding; anything
    // larger means the symmetry check tolerance let a bad field through.
    auto* buf = static_cast<fftw_complex*>(buf_);
    const size_t nn = static_cast<size_t>(grid_.size());
    double max_im = 0.0, max_re = 0.0;
    for (size_t i = 0; i < nn; ++i) {
        max_im = std::max(max_im, std::abs(buf[i][1]));
        max_re = std::max(max_re, std::abs(buf[i][0]));
    }
    if (max_im > 1e-10 * std::max(1.0, max_re))
        throw std::runtime_error("inverse_transform: imaginary residue above 1e-10");
}

std::vector<double> SpectralTransform::inverse(const SpectralField& field) {
    std::vector<double> out(static_cast<size_t>(grid_.size()));
    inverse_into(field, out);
    return out;
}

SpectralField forward_transform(std::span<const double> samples, const Grid& grid) {
    SpectralTransform tr(grid);
    return tr.forward(samples);
}

std::vector<double> inverse_transform(const SpectralField& field) {
    SpectralTransform tr(field.grid());
    return tr.inverse(field);
}

} // namespace qg
