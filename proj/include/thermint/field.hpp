#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "thermint/layout.hpp"
#include "thermint/spectrum.hpp"
#include "thermint/statistics.hpp"

namespace thermint {

/// Field at one detector for one realization, summed directly over modes and arms:
/// sum_k sum_p c_p exp(i x_p) alpha_k exp(-i omega_k (t - l_p/c)).
/// This is the reference evaluation; the ensemble kernels use `Propagators`.
std::complex<double> synthesize_field(const ThermalRealization& realization,
                                      const FrequencyGrid& grid, const Layout& layout,
                                      Detector detector, double t);

/// Per-mode propagation factors of one arm at a fixed detection time:
/// c_p exp(i x_p) exp(-i omega_k (t_d - l_p/c)) for every k.
std::vector<std::complex<double>> arm_propagator(const PathArm& arm, const FrequencyGrid& grid,
                                                 double t, double speed_of_light);

/// Precomputed realization-independent factors for both detectors. The
/// field at detector d is then sum_k alpha_k * total_d[k].
struct Propagators {
    std::vector<std::vector<std::complex<double>>> arms_c;
    std::vector<std::vector<std::complex<double>>> arms_t;
    std::vector<std::complex<double>> total_c;
    std::vector<std::complex<double>> total_t;

    static Propagators build(const Layout& layout, const FrequencyGrid& grid,
                             double t_c, double t_t);
};

inline constexpr std::size_t kDefaultSamples = 100000;

struct EnsembleSettings {
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t seed = 0;
    std::size_t batches = kDefaultBatches;
    /// Threads for the realization loop. Results do not depend on it: each
    /// realization has its own substream and reductions run in index order.
    int workers = 1;
};

/// Per-realization intensities I_C = |E_C|^2 and I_T = |E_T|^2.
struct IntensitySamples {
    std::vector<double> i_c;
    std::vector<double> i_t;
};

/// Realization loop, parallel over `settings.workers` threads.
IntensitySamples ensemble_intensities(const Propagators& propagators, const FrequencyGrid& grid,
                                      const EnsembleSettings& settings);

namespace reference {
/// Serial loop built from sample_realization and synthesize_field. Slow;
/// kept as the check on the parallel kernel.
IntensitySamples ensemble_intensities(const Layout& layout, const FrequencyGrid& grid,
                                      double t_c, double t_t, const EnsembleSettings& settings);
}  // namespace reference

/// Everything estimated from one ensemble of intensities.
struct IntensityMoments {
    CorrelationEstimate mean_c;
    CorrelationEstimate mean_t;
    CorrelationEstimate correlation;  ///< <I_C I_T>
    CorrelationEstimate covariance;   ///< <dI_C dI_T>, batch-means error
    CorrelationEstimate g2;           ///< <I_C I_T> / (<I_C><I_T>), batch-means error

    double background() const { return mean_c.mean * mean_t.mean; }
};

IntensityMoments summarize(const IntensitySamples& samples, std::size_t batches = kDefaultBatches);

IntensityMoments estimate_moments(const Layout& layout, const FrequencyGrid& grid,
                                  double t_c, double t_t, const EnsembleSettings& settings);

std::pair<CorrelationEstimate, CorrelationEstimate>
estimate_means(const Layout& layout, const FrequencyGrid& grid, double t_c, double t_t,
               const EnsembleSettings& settings);

CorrelationEstimate estimate_intensity_correlation(const Layout& layout, const FrequencyGrid& grid,
                                                   double t_c, double t_t,
                                                   const EnsembleSettings& settings);

CorrelationEstimate estimate_fluctuation_correlation(const Layout& layout,
                                                     const FrequencyGrid& grid, double t_c,
                                                     double t_t,
                                                     const EnsembleSettings& settings);

}  // namespace thermint
