#include "qg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qg {

std::vector<double> chi_weights(const Grid& grid, double sigma) {
    const int n = grid.n();
    std::vector<double> w(static_cast<size_t>(grid.size()), 0.0);
    for (int j1 = 0; j1 < n; ++j1) {
        for (int j2 = 0; j2 < n; ++j2) {
            if (j1 == 0 && j2 == 0) continue; // zero mode excluded always
            w[static_cast<size_t>(j1) * n + j2] = std::pow(grid.kappa_mag(j1, j2), sigma);
        }
    }
    return w;
}

double chi_weighted_sum(const SpectralField& field, std::span<const double> weights) {
    if (weights.size() != field.coeffs().size())
        throw std::invalid_argument("chi_weighted_sum: weight table does not match the grid");
    const cplx* c = field.coeffs().data();
    double sum = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) sum += weights[i] * std::abs(c[i]);
    return sum;
}

double chi_norm(const SpectralField& field, double sigma) {
    if (sigma < 0.0) require_mean_zero(field, "chi_norm");
    return chi_weighted_sum(field, chi_weights(field.grid(), sigma));
}

double l2_norm(const SpectralField& field) {
    double sum = 0.0;
    for (const cplx& c : field.coeffs()) sum += std::norm(c);
    return field.grid().l() * std::sqrt(sum);
}

void NormSeries::append(double t, double chi_low, double chi_one, double l2) {
    double integral = 0.0;
    if (!records_.empty()) {
        const NormRecord& prev = records_.back();
        if (!(t > prev.t))
            throw std::invalid_argument("NormSeries: record times must be strictly increasing");
        integral = prev.int_chi_one + 0.5 * (t - prev.t) * (prev.chi_one + chi_one);
    }
    records_.push_back(NormRecord{t, chi_low, chi_one, l2, integral});
}

InequalityReport theorem1_functional(const NormSeries& series, double theta0_norm,
                                     double tolerance) {
    if (series.empty())
        throw std::invalid_argument("theorem1_functional: empty series");

    InequalityReport report;
    report.theta0_norm = theta0_norm;
    report.smallness_ok = theta0_norm < 0.25;
    report.rows.reserve(series.size());

    const double coeff = 0.5 * (1.0 - 4.0 * theta0_norm);
    double worst = std::numeric_limits<double>::infinity();
    for (const NormRecord& r : series.records()) {
        const double lhs = r.chi_low + coeff * r.int_chi_one;
        const double margin = theta0_norm - lhs;
        worst = std::min(worst, margin);
        report.rows.push_back(InequalityRow{r.t, lhs, theta0_norm, margin});
    }
    report.worst_margin = worst;
    report.satisfied = worst >= -tolerance;
    return report;
}

namespace {

// First crossing of chi_low below `level`, interpolated log-linearly between
// the bracketing records (exact for exponential decay); falls back to linear
// interpolation when a bracket value is nonpositive.
std::optional<double> first_crossing(const std::vector<NormRecord>& rec, double level) {
    if (rec.front().chi_low < level) return rec.front().t;
    for (size_t i = 1; i < rec.size(); ++i) {
        const double a = rec[i - 1].chi_low;
        const double b = rec[i].chi_low;
        if (b < level) {
            const double ta = rec[i - 1].t, tb = rec[i].t;
            if (a > 0.0 && b > 0.0 && level > 0.0) {
                const double f = (std::log(a) - std::log(level)) / (std::log(a) - std::log(b));
                return ta + f * (tb - ta);
            }
            const double f = (a - level) / (a - b);
            return ta + f * (tb - ta);
        }
    }
    return std::nullopt;
}

} // namespace

DecayVerdict decay_summary(const NormSeries& series, double alpha) {
    if (series.empty())
        throw std::invalid_argument("decay_summary: empty series");

    const std::vector<NormRecord>& rec = series.records();
    DecayVerdict v;
    v.applicable = alpha > 2.0 / 3.0 && alpha < 1.0;

    const double chi0 = rec.front().chi_low;
    v.ratio_final = chi0 == 0.0 ? 0.0 : rec.back().chi_low / chi0;
    v.t_half = chi0 == 0.0 ? std::nullopt : first_crossing(rec, 0.5 * chi0);

    v.tail_monotone = true;
    for (size_t i = rec.size() / 2; i + 1 < rec.size(); ++i) {
        if (rec[i + 1].chi_low > rec[i].chi_low + 1e-10) {
            v.tail_monotone = false;
            break;
        }
    }
    return v;
}

double scaling_invariance_check(const SpectralField& field, int lambda, double alpha) {
    if (lambda < 1)
        throw std::invalid_argument("scaling_invariance_check: lambda must be a positive integer");
    const double sigma = 1.0 - 2.0 * alpha;
    if (lambda == 1) return 0.0;

    const Grid& g = field.grid();
    const int n = g.n();
    // theta_lambda(x) = lambda^(2 alpha - 1) theta(lambda x): coefficient at
    // mode lambda*m. Enlarging the grid lambda-fold always fits every mode,
    // Nyquist included.
    const Grid big(lambda * n, g.l());
    SpectralField scaled(big);
    const double amp = std::pow(static_cast<double>(lambda), 2.0 * alpha - 1.0);
    for (int j1 = 0; j1 < n; ++j1) {
        const int m1 = lambda * g.mode(j1);
        const int i1 = m1 >= 0 ? m1 : m1 + big.n();
        for (int j2 = 0; j2 < n; ++j2) {
            const int m2 = lambda * g.mode(j2);
            const int i2 = m2 >= 0 ? m2 : m2 + big.n();
            scaled.at(i1, i2) = amp * field.at(j1, j2);
        }
    }
    return std::abs(chi_norm(scaled, sigma) - chi_norm(field, sigma));
}

} // namespace qg
