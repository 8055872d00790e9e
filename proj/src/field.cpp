#include "thermint/field.hpp"

#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thermint/error.hpp"
#include "thermint/phase.hpp"

namespace thermint {

namespace {

// Phase omega_k * (t - l/c), split as center*delay (reduced in extended
// precision) plus detuning_k*delay (small, double is enough).
struct SplitPhase {
    double base;
    double delay;
};

SplitPhase split_phase(const FrequencyGrid& grid, double t, double length, double c) {
    const long double delay = propagation_delay(t, length, c);
    return {reduced_phase(grid.center, delay), static_cast<double>(delay)};
}

void require_matching(const ThermalRealization& r, const FrequencyGrid& grid) {
    if (r.alphas.size() != grid.size()) {
        throw ConfigError("realization does not match the frequency grid");
    }
}

inline void project_field(std::span<const std::complex<double>> alphas,
                       std::span<const std::complex<double>> weights, double& re, double& im) {
    re = 0.0;
    im = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double ar = alphas[k].real(), ai = alphas[k].imag();
        const double wr = weights[k].real(), wi = weights[k].imag();
        re += ar * wr - ai * wi;
        im += ar * wi + ai * wr;
    }
}

}  // namespace

std::complex<double> synthesize_field(const ThermalRealization& realization,
                                      const FrequencyGrid& grid, const Layout& layout,
                                      Detector detector, double t) {
    require_matching(realization, grid);
    const auto arms = layout.arms_for(detector);
    if (arms.empty()) throw ConfigError("synthesize_field: detector has no arms");
    std::complex<double> field{0.0, 0.0};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (const auto& arm : arms) {
            const SplitPhase p = split_phase(grid, t, arm.length, layout.speed_of_light());
            const double phase = p.base + grid.detunings[k] * p.delay;
            field += arm.coefficient * std::polar(1.0, arm.extra_phase) * realization.alphas[k] *
                     std::polar(1.0, -phase);
        }
    }
    return field;
}

std::vector<std::complex<double>> arm_propagator(const PathArm& arm, const FrequencyGrid& grid,
                                                 double t, double speed_of_light) {
    const SplitPhase p = split_phase(grid, t, arm.length, speed_of_light);
    std::vector<std::complex<double>> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double angle = arm.extra_phase - (p.base + grid.detunings[k] * p.delay);
        out[k] = arm.coefficient * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return out;
}

Propagators Propagators::build(const Layout& layout, const FrequencyGrid& grid, double t_c,
                               double t_t) {
    Propagators props;
    props.total_c.assign(grid.size(), {0.0, 0.0});
    props.total_t.assign(grid.size(), {0.0, 0.0});
    for (const auto& arm : layout.arms()) {
        const bool at_c = arm.detector == Detector::C;
        auto weights = arm_propagator(arm, grid, at_c ? t_c : t_t, layout.speed_of_light());
        auto& total = at_c ? props.total_c : props.total_t;
        for (std::size_t k = 0; k < grid.size(); ++k) total[k] += weights[k];
        (at_c ? props.arms_c : props.arms_t).push_back(std::move(weights));
    }
    return props;
}

IntensitySamples ensemble_intensities(const Propagators& props, const FrequencyGrid& grid,
                                      const EnsembleSettings& settings) {
    const auto n = static_cast<std::int64_t>(settings.n_samples);
    IntensitySamples out;
    out.i_c.resize(settings.n_samples);
    out.i_t.resize(settings.n_samples);

#ifdef _OPENMP
#pragma omp parallel num_threads(settings.workers > 0 ? settings.workers : 1)
#endif
    {
        std::vector<std::complex<double>> alphas(grid.size());
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            RandomStream rng = substream(settings.seed, static_cast<std::uint64_t>(i));
            sample_into(grid, rng, alphas);
            double cr, ci, tr, ti;
            project_field(alphas, props.total_c, cr, ci);
            project_field(alphas, props.total_t, tr, ti);
            out.i_c[i] = cr * cr + ci * ci;
            out.i_t[i] = tr * tr + ti * ti;
        }
    }
    return out;
}

namespace reference {

IntensitySamples ensemble_intensities(const Layout& layout, const FrequencyGrid& grid, double t_c,
                                      double t_t, const EnsembleSettings& settings) {
    IntensitySamples out;
    out.i_c.reserve(settings.n_samples);
    out.i_t.reserve(settings.n_samples);
    for (std::size_t i = 0; i < settings.n_samples; ++i) {
        RandomStream rng = substream(settings.seed, i);
        const ThermalRealization r = sample_realization(grid, rng);
        out.i_c.push_back(std::norm(synthesize_field(r, grid, layout, Detector::C, t_c)));
        out.i_t.push_back(std::norm(synthesize_field(r, grid, layout, Detector::T, t_t)));
    }
    return out;
}

}  // namespace reference

IntensityMoments summarize(const IntensitySamples& s, std::size_t batches) {
    IntensityMoments m;
    m.mean_c = mean_estimate(s.i_c);
    m.mean_t = mean_estimate(s.i_t);
    std::vector<double> products(s.i_c.size());
    for (std::size_t i = 0; i < products.size(); ++i) products[i] = s.i_c[i] * s.i_t[i];
    m.correlation = mean_estimate(products);
    m.covariance = covariance_estimate(s.i_c, s.i_t, batches);
    m.g2 = normalized_correlation_estimate(s.i_c, s.i_t, batches);
    return m;
}

namespace {

void check_settings(const EnsembleSettings& settings) {
    if (settings.n_samples < 2) throw EstimationError("n_samples must be at least 2");
}

}  // namespace

IntensityMoments estimate_moments(const Layout& layout, const FrequencyGrid& grid, double t_c,
                                  double t_t, const EnsembleSettings& settings) {
    check_settings(settings);
    // Validate batching before spending time on the ensemble.
    batch_edges(settings.n_samples, settings.batches);
    const auto props = Propagators::build(layout, grid, t_c, t_t);
    return summarize(ensemble_intensities(props, grid, settings), settings.batches);
}

std::pair<CorrelationEstimate, CorrelationEstimate>
estimate_means(const Layout& layout, const FrequencyGrid& grid, double t_c, double t_t,
               const EnsembleSettings& settings) {
    check_settings(settings);
    const auto props = Propagators::build(layout, grid, t_c, t_t);
    const auto s = ensemble_intensities(props, grid, settings);
    return {mean_estimate(s.i_c), mean_estimate(s.i_t)};
}

CorrelationEstimate estimate_intensity_correlation(const Layout& layout, const FrequencyGrid& grid,
                                                   double t_c, double t_t,
                                                   const EnsembleSettings& settings) {
    check_settings(settings);
    const auto props = Propagators::build(layout, grid, t_c, t_t);
    const auto s = ensemble_intensities(props, grid, settings);
    std::vector<double> products(s.i_c.size());
    for (std::size_t i = 0; i < products.size(); ++i) products[i] = s.i_c[i] * s.i_t[i];
    return mean_estimate(products);
}

CorrelationEstimate estimate_fluctuation_correlation(const Layout& layout,
                                                     const FrequencyGrid& grid, double t_c,
                                                     double t_t,
                                                     const EnsembleSettings& settings) {
    check_settings(settings);
    batch_edges(settings.n_samples, settings.batches);
    const auto props = Propagators::build(layout, grid, t_c, t_t);
    const auto s = ensemble_intensities(props, grid, settings);
    return covariance_estimate(s.i_c, s.i_t, settings.batches);
}

}  // namespace thermint
