#pragma once

#include "qg/field.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qg {

// Lattice weights |kappa|^sigma with the zero mode weighted 0.
std::vector<double> chi_weights(const Grid& grid, double sigma);

// sum_j w_j |c_j| over the whole lattice.
double chi_weighted_sum(const SpectralField& field, std::span<const double> weights);

// Fourier-weighted norm sum_{kappa != 0} |kappa|^sigma |c_kappa|.
// For sigma < 0 the field must be mean-zero.
double chi_norm(const SpectralField& field, double sigma);

// l * sqrt(sum |c_kappa|^2), the L2 norm on the box by Parseval.
double l2_norm(const SpectralField& field);

struct NormRecord {
    double t;
    double chi_low;     // ||theta||_{X^(1-2alpha)}
    double chi_one;     // ||theta||_{X^1}
    double l2;          // ||theta||_{L2}
    double int_chi_one; // trapezoid of chi_one over the recorded times
};

// Time-stamped norm records with the running trapezoid integral of chi_one.
// Times must be appended strictly increasing.
class NormSeries {
public:
    void append(double t, double chi_low, double chi_one, double l2);

    const std::vector<NormRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    size_t size() const { return records_.size(); }
    const NormRecord& front() const { return records_.front(); }
    const NormRecord& back() const { return records_.back(); }

private:
    std::vector<NormRecord> records_;
};

struct InequalityRow {
    double t;
    double lhs; // chi_low(t) + (1 - 4 theta0_norm)/2 * int_chi_one(t)
    double rhs; // theta0_norm
    double margin;
};

struct InequalityReport {
    double theta0_norm = 0.0;
    bool smallness_ok = false; // theta0_norm < 1/4
    double worst_margin = 0.0;
    bool satisfied = false;    // worst_margin >= -tolerance
    std::vector<InequalityRow> rows;
};

// Evaluates the a-priori inequality
//   chi_low(t) + (1 - 4 theta0_norm)/2 * int_0^t chi_one  <=  theta0_norm
// at every record. theta0_norm must equal the first chi_low record, so the
// margin at t = 0 is exactly zero.
InequalityReport theorem1_functional(const NormSeries& series, double theta0_norm,
                                     double tolerance);

struct DecayVerdict {
    double ratio_final = 0.0;          // chi_low(end) / chi_low(0), 0/0 -> 0
    std::optional<double> t_half;      // first time chi_low < chi_low(0)/2
    bool tail_monotone = false;        // non-increasing over the last half of records
    bool applicable = false;           // 2/3 < alpha < 1
};

DecayVerdict decay_summary(const NormSeries& series, double alpha);

// Rescaling-invariance probe for the chi_(1-2alpha) norm: builds
// theta_lambda with coefficient lambda^(2alpha-1) c_kappa at mode
// lambda*kappa (on a grid enlarged lambda-fold) and returns the absolute
// difference of the two norms, which vanishes up to rounding.
double scaling_invariance_check(const SpectralField& field, int lambda, double alpha);

} // namespace qg
