#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "thermint/field.hpp"

namespace thermint {

/// Product of the detection amplitudes of subfield m at C (via arm_c) and
/// subfield n at T (via arm_t). Arm indices refer to layout.arms().
/// Throws InvalidPairError if m == n, ConfigError if an arm index is out of
/// range or on the wrong detector.
std::complex<double> two_photon_amplitude(const ThermalRealization& realization,
                                          const FrequencyGrid& grid, const Layout& layout,
                                          std::size_t m, std::size_t n, std::size_t arm_c,
                                          std::size_t arm_t, double t_c, double t_t);

/// How the m != n pair sums are evaluated. Both give bitwise identical
/// results; Direct is the O(N^2) enumeration kept as an oracle.
enum class PairSumMode { Factorized, Direct };

/// Real parts of the four exchange-interference sums of one realization:
///   long_long   sum_{m!=n} [m L->C, n L->T][m L->T, n L->C]*
///   short_short sum_{m!=n} [m S->C, n S->T][m S->T, n S->C]*
///   long_short  sum_{m!=n} [m L->C, n S->T][m L->T, n S->C]*
///   short_long  sum_{m!=n} [m S->C, n L->T][m S->T, n L->C]*
/// Each value is the exactly rounded real part of its sum.
struct GroupSums {
    double long_long = 0.0;
    double short_short = 0.0;
    double long_short = 0.0;
    double short_long = 0.0;

    double hbt() const { return long_long + short_short; }
    double non_hbt() const { return long_short + short_long; }
};

/// Per-mode factors of the pair sums: the pair term is x[m] * y[n] with
/// x = A(m->C) conj(A(m->T)) and y = A(n->T) conj(A(n->C)), one pair of
/// arrays per path type.
struct ModeFactors {
    std::vector<std::complex<double>> x_long, x_short, y_long, y_short;

    void resize(std::size_t n);
};

void compute_mode_factors(std::span<const std::complex<double>> alphas,
                          const Propagators& propagators, ModeFactors& out);

/// Exactly rounded Re sum_{m!=n} x[m] y[n].
double pair_sum_real(std::span<const std::complex<double>> x,
                     std::span<const std::complex<double>> y, PairSumMode mode);

GroupSums group_sums(const ModeFactors& factors, PairSumMode mode);

/// Convenience for a single realization.
GroupSums decompose_realization(const ThermalRealization& realization, const FrequencyGrid& grid,
                                const Layout& layout, double t_c, double t_t, PairSumMode mode);

/// Ensemble split of the fluctuation correlation into the phase-free HBT
/// groups and the phase-sensitive mixed-path groups, plus the ordinary
/// covariance computed from the same realizations.
struct DecompositionEstimate {
    CorrelationEstimate hbt_term;
    CorrelationEstimate non_hbt_term;
    CorrelationEstimate total;  ///< total.mean == hbt_term.mean + non_hbt_term.mean
    CorrelationEstimate reference_covariance;
    IntensityMoments moments;
};

/// DOUBLE_MZ only (UnsupportedLayoutError otherwise).
DecompositionEstimate decompose_correlation(const Layout& layout, const FrequencyGrid& grid,
                                            double t_c, double t_t,
                                            const EnsembleSettings& settings,
                                            PairSumMode mode = PairSumMode::Factorized);

}  // namespace thermint
