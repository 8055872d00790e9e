#include "thermint/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "thermint/error.hpp"

namespace thermint {

void validate(const SourceSpectrum& s) {
    if (!(s.omega0 > 0.0) || !(s.delta_omega > 0.0) || !(s.mean_rate > 0.0)) {
        throw ConfigError("spectrum: omega0, delta_omega and mean_rate must be positive");
    }
    if (s.omega0 / s.delta_omega < 10.0) {
        std::ostringstream msg;
        msg << "spectrum: omega0/delta_omega = " << s.omega0 / s.delta_omega
            << " is below 10 (source not quasi-monochromatic)";
        throw ConfigError(msg.str());
    }
}

double mean_occupation_at_detuning(const SourceSpectrum& s, double detuning) {
    const double x = detuning / s.delta_omega;
    return s.mean_rate * std::exp(-0.5 * x * x) /
           (std::sqrt(2.0 * std::numbers::pi) * s.delta_omega);
}

double mean_occupation(const SourceSpectrum& s, double omega) {
    return mean_occupation_at_detuning(s, omega - s.omega0);
}

double FrequencyGrid::total_occupation() const {
    double sum = 0.0;
    for (double n : occupations) sum += n;
    return sum;
}

FrequencyGrid build_grid(const SourceSpectrum& spectrum, std::size_t n_modes, double span_sigma) {
    validate(spectrum);
    if (n_modes < 2) throw ConfigError("grid: n_modes must be at least 2");
    if (!(span_sigma > 0.0)) throw ConfigError("grid: span_sigma must be positive");
    const double half_width = span_sigma * spectrum.delta_omega;
    if (spectrum.omega0 - half_width <= 0.0) {
        std::ostringstream msg;
        msg << "grid: lower edge omega0 - span_sigma*delta_omega = "
            << spectrum.omega0 - half_width << " is not a positive frequency";
        throw ConfigError(msg.str());
    }

    FrequencyGrid grid;
    grid.center = spectrum.omega0;
    grid.spacing = 2.0 * half_width / static_cast<double>(n_modes - 1);
    grid.detunings.resize(n_modes);
    grid.omegas.resize(n_modes);
    grid.occupations.resize(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double detuning = -half_width + static_cast<double>(k) * grid.spacing;
        grid.detunings[k] = detuning;
        grid.omegas[k] = spectrum.omega0 + detuning;
        grid.occupations[k] = mean_occupation_at_detuning(spectrum, detuning) * grid.spacing;
    }
    if (grid.total_occupation() > spectrum.mean_rate * (1.0 + 1e-3)) {
        throw ConfigError("grid: spacing too coarse, discretized photon number exceeds mean_rate");
    }
    return grid;
}

void sample_into(const FrequencyGrid& grid, RandomStream& rng,
                 std::span<std::complex<double>> out) {
    boost::random::normal_distribution<double> normal;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double scale = std::sqrt(0.5 * grid.occupations[k]);
        const double re = normal(rng);
        const double im = normal(rng);
        out[k] = {scale * re, scale * im};
    }
}

ThermalRealization sample_realization(const FrequencyGrid& grid, RandomStream& rng) {
    ThermalRealization r;
    r.alphas.resize(grid.size());
    sample_into(grid, rng, r.alphas);
    return r;
}

}  // namespace thermint
