#pragma once

#include <complex>

#include "thermint/layout.hpp"
#include "thermint/spectrum.hpp"

namespace thermint {

/// Two-path correlation contribution for arm lengths (l_c, l_t):
///   i a r exp(i w0 (t_c - t_t)) exp(-i w0 (l_c - l_t)/c)
///         exp(-(l_c - l_t)^2 dw^2 / (2c^2)) exp(-(t_c - t_t)^2 dw^2 / 2)
/// with a = 1. The length envelope decays with the same Gaussian law as the
/// time envelope.
std::complex<double> g_two_path(double l_c, double l_t, double t_c, double t_t,
                                const SourceSpectrum& spectrum, double speed_of_light = 1.0);

/// Closed-form prediction for one detection configuration.
///
/// DOUBLE_MZ: fluctuation_correlation = a2 |G(L_C,L_T) + G(S_C,S_T)|^2, where the
/// long-arm contribution also carries exp(-i (x_C - x_T)) from the extra
/// phases. envelope = |G(L)||G(S)| / r^2, so in a perfect regime the
/// correlation reads normalization * 2 envelope (1 + cos(fringe_phase)).
/// background = 4 * normalization, the fringe maximum.
///
/// HBT: fluctuation_correlation = a2 |G(l_C,l_T)|^2, envelope = that / normalization,
/// background = normalization.
///
/// normalization = a2 * r^2 in both cases.
struct AnalyticPrediction {
    double fluctuation_correlation = 0.0;
    double raw_g2 = 0.0;
    double background = 0.0;
    double fringe_phase = 0.0;
    double envelope = 0.0;
    double normalization = 0.0;
};

/// Throws UnsupportedLayoutError for CUSTOM layouts.
AnalyticPrediction predict(const Layout& layout, const SourceSpectrum& spectrum, double t_c,
                           double t_t, double a_squared = 1.0);

enum class VisibilityMode { Fluctuation, Raw };

/// Perfect-regime fringe visibility: 1 for the fluctuation correlation,
/// 1/3 for the raw intensity correlation.
double visibility(VisibilityMode mode);

/// (max - min) / (max + min).
double visibility(double max, double min);

/// Normalized HBT correlation g2(tau) = 1 + exp(-dw^2 tau^2).
double hbt_g2(const SourceSpectrum& spectrum, double tau);

}  // namespace thermint
