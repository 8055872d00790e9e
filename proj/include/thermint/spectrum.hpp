#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "thermint/rng.hpp"

namespace thermint {

/// Gaussian thermal source: center frequency, rms spectral width, mean photon rate.
struct SourceSpectrum {
    double omega0 = 100.0;
    double delta_omega = 1.0;
    double mean_rate = 1.0;

    bool operator==(const SourceSpectrum&) const = default;
};

/// Throws ConfigError unless all fields are positive and omega0/delta_omega >= 10.
void validate(const SourceSpectrum& spectrum);

/// Mean photon number density at angular frequency `omega`:
/// r * exp(-(omega - omega0)^2 / (2 dw^2)) / (sqrt(2 pi) dw).
double mean_occupation(const SourceSpectrum& spectrum, double omega);

/// Same density as a function of the detuning omega - omega0. Preferred
/// internally because the detuning is small and exact where omega0 is huge.
double mean_occupation_at_detuning(const SourceSpectrum& spectrum, double detuning);

/// Uniform discretization of the source spectrum.
///
/// Frequencies are stored both absolutely (`omegas`) and as offsets from the
/// center (`detunings`); the latter are exact multiples of `spacing` and are
/// what the propagation kernels use. `occupations[k]` is the mean photon
/// number of mode k, i.e. the density at omega_k times the spacing.
struct FrequencyGrid {
    double center = 0.0;
    double spacing = 0.0;
    std::vector<double> detunings;
    std::vector<double> omegas;
    std::vector<double> occupations;

    std::size_t size() const { return omegas.size(); }
    double total_occupation() const;
};

inline constexpr std::size_t kDefaultModes = 256;
inline constexpr double kDefaultSpanSigma = 5.0;

/// Grid over [omega0 - span_sigma*dw, omega0 + span_sigma*dw].
///
/// Throws ConfigError if n_modes < 2, span_sigma <= 0, the grid would reach
/// omega <= 0, or the grid is so coarse that the discretized mass exceeds
/// the mean rate by more than 1e-3 (relative).
FrequencyGrid build_grid(const SourceSpectrum& spectrum,
                         std::size_t n_modes = kDefaultModes,
                         double span_sigma = kDefaultSpanSigma);

/// One member of the thermal ensemble: a coherent amplitude per grid mode.
struct ThermalRealization {
    std::vector<std::complex<double>> alphas;
};

/// Draws each alpha_k as a circular complex Gaussian with <|alpha_k|^2> =
/// occupations[k]. Consumes exactly two normal deviates per mode, including
/// empty modes, so stream alignment does not depend on the occupations.
ThermalRealization sample_realization(const FrequencyGrid& grid, RandomStream& rng);

/// In-place variant used by the ensemble kernels. `out.size()` must equal
/// `grid.size()`.
void sample_into(const FrequencyGrid& grid, RandomStream& rng,
                 std::span<std::complex<double>> out);

}  // namespace thermint
