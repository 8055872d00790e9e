#include "thermint/decomposition.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thermint/error.hpp"
#include "thermint/phase.hpp"

namespace thermint {

namespace {

inline std::complex<double> times(std::complex<double> a, std::complex<double> b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// a * conj(b)
inline std::complex<double> times_conj(std::complex<double> a, std::complex<double> b) {
    return {a.real() * b.real() + a.imag() * b.imag(), a.imag() * b.real() - a.real() * b.imag()};
}

std::complex<double> single_amplitude(const ThermalRealization& r, const FrequencyGrid& grid,
                                      const PathArm& arm, std::size_t mode, double t, double c) {
    const long double delay = propagation_delay(t, arm.length, c);
    const double phase =
        reduced_phase(grid.center, delay) + grid.detunings[mode] * static_cast<double>(delay);
    return arm.coefficient * std::polar(1.0, arm.extra_phase) * r.alphas[mode] *
           std::polar(1.0, -phase);
}

// Component sums of a complex factor array.
struct ComponentSums {
    ExactSum re;
    ExactSum im;

    void fill(std::span<const std::complex<double>> v) {
        re.clear();
        im.clear();
        for (const auto& z : v) {
            re.add(z.real());
            im.add(z.imag());
        }
    }
};

// Re[(sum x)(sum y) - sum_m x_m y_m], rounded once.
double factorized_real(const ComponentSums& sx, const ComponentSums& sy,
                       std::span<const std::complex<double>> x,
                       std::span<const std::complex<double>> y, ExactSum& acc,
                       ExactSum& neg_im) {
    acc.clear();
    acc.add_product(sx.re, sy.re);
    neg_im.clear();
    neg_im.subtract(sx.im);
    acc.add_product(neg_im, sy.im);
    for (std::size_t m = 0; m < x.size(); ++m) {
        acc.add_product(-x[m].real(), y[m].real());
        acc.add_product(x[m].imag(), y[m].imag());
    }
    return acc.value();
}

double direct_real(std::span<const std::complex<double>> x,
                   std::span<const std::complex<double>> y, ExactSum& acc) {
    acc.clear();
    for (std::size_t m = 0; m < x.size(); ++m) {
        for (std::size_t n = 0; n < y.size(); ++n) {
            if (m == n) continue;
            acc.add_product(x[m].real(), y[n].real());
            acc.add_product(-x[m].imag(), y[n].imag());
        }
    }
    return acc.value();
}

// Scratch space reused across realizations of one worker.
struct PairScratch {
    ComponentSums x_long, x_short, y_long, y_short;
    ExactSum acc, neg_im;
};

GroupSums group_sums(const ModeFactors& f, PairSumMode mode, PairScratch& s) {
    GroupSums g;
    if (mode == PairSumMode::Direct) {
        g.long_long = direct_real(f.x_long, f.y_long, s.acc);
        g.short_short = direct_real(f.x_short, f.y_short, s.acc);
        g.long_short = direct_real(f.x_long, f.y_short, s.acc);
        g.short_long = direct_real(f.x_short, f.y_long, s.acc);
        return g;
    }
    s.x_long.fill(f.x_long);
    s.x_short.fill(f.x_short);
    s.y_long.fill(f.y_long);
    s.y_short.fill(f.y_short);
    g.long_long = factorized_real(s.x_long, s.y_long, f.x_long, f.y_long, s.acc, s.neg_im);
    g.short_short = factorized_real(s.x_short, s.y_short, f.x_short, f.y_short, s.acc, s.neg_im);
    g.long_short = factorized_real(s.x_long, s.y_short, f.x_long, f.y_short, s.acc, s.neg_im);
    g.short_long = factorized_real(s.x_short, s.y_long, f.x_short, f.y_long, s.acc, s.neg_im);
    return g;
}

void require_double_mz(const Layout& layout, const char* what) {
    if (layout.kind() != LayoutKind::DoubleMz) {
        throw UnsupportedLayoutError(std::string(what) + ": layout is not DOUBLE_MZ");
    }
}

}  // namespace

std::complex<double> two_photon_amplitude(const ThermalRealization& realization,
                                          const FrequencyGrid& grid, const Layout& layout,
                                          std::size_t m, std::size_t n, std::size_t arm_c,
                                          std::size_t arm_t, double t_c, double t_t) {
    if (m == n) throw InvalidPairError("two_photon_amplitude: m and n must differ");
    if (realization.alphas.size() != grid.size()) {
        throw ConfigError("realization does not match the frequency grid");
    }
    if (m >= grid.size() || n >= grid.size()) {
        throw ConfigError("two_photon_amplitude: mode index out of range");
    }
    const auto arms = layout.arms();
    if (arm_c >= arms.size() || arms[arm_c].detector != Detector::C) {
        throw ConfigError("two_photon_amplitude: arm_c is not an arm of detector C");
    }
    if (arm_t >= arms.size() || arms[arm_t].detector != Detector::T) {
        throw ConfigError("two_photon_amplitude: arm_t is not an arm of detector T");
    }
    const double c = layout.speed_of_light();
    return single_amplitude(realization, grid, arms[arm_c], m, t_c, c) *
           single_amplitude(realization, grid, arms[arm_t], n, t_t, c);
}

void ModeFactors::resize(std::size_t n) {
    x_long.resize(n);
    x_short.resize(n);
    y_long.resize(n);
    y_short.resize(n);
}

void compute_mode_factors(std::span<const std::complex<double>> alphas,
                          const Propagators& props, ModeFactors& out) {
    if (props.arms_c.size() != 2 || props.arms_t.size() != 2) {
        throw UnsupportedLayoutError("mode factors need long and short arms on both sides");
    }
    out.resize(alphas.size());
    for (std::size_t m = 0; m < alphas.size(); ++m) {
        const auto a = alphas[m];
        const auto c_long = times(a, props.arms_c[0][m]);
        const auto c_short = times(a, props.arms_c[1][m]);
        const auto t_long = times(a, props.arms_t[0][m]);
        const auto t_short = times(a, props.arms_t[1][m]);
        out.x_long[m] = times_conj(c_long, t_long);
        out.y_long[m] = times_conj(t_long, c_long);
        out.x_short[m] = times_conj(c_short, t_short);
        out.y_short[m] = times_conj(t_short, c_short);
    }
}

double pair_sum_real(std::span<const std::complex<double>> x,
                     std::span<const std::complex<double>> y, PairSumMode mode) {
    if (x.size() != y.size()) throw ConfigError("pair_sum_real: factor arrays differ in length");
    ExactSum acc;
    if (mode == PairSumMode::Direct) return direct_real(x, y, acc);
    ComponentSums sx, sy;
    sx.fill(x);
    sy.fill(y);
    ExactSum neg_im;
    return factorized_real(sx, sy, x, y, acc, neg_im);
}

GroupSums group_sums(const ModeFactors& factors, PairSumMode mode) {
    PairScratch scratch;
    return group_sums(factors, mode, scratch);
}

GroupSums decompose_realization(const ThermalRealization& realization, const FrequencyGrid& grid,
                                const Layout& layout, double t_c, double t_t, PairSumMode mode) {
    require_double_mz(layout, "decompose_realization");
    if (realization.alphas.size() != grid.size()) {
        throw ConfigError("realization does not match the frequency grid");
    }
    const auto props = Propagators::build(layout, grid, t_c, t_t);
    ModeFactors factors;
    compute_mode_factors(realization.alphas, props, factors);
    return group_sums(factors, mode);
}

DecompositionEstimate decompose_correlation(const Layout& layout, const FrequencyGrid& grid,
                                            double t_c, double t_t,
                                            const EnsembleSettings& settings, PairSumMode mode) {
    require_double_mz(layout, "decompose_correlation");
    if (settings.n_samples < 2) throw EstimationError("n_samples must be at least 2");
    batch_edges(settings.n_samples, settings.batches);

    const auto props = Propagators::build(layout, grid, t_c, t_t);
    const std::size_t n_modes = grid.size();
    const auto n = static_cast<std::int64_t>(settings.n_samples);
    IntensitySamples intensities;
    intensities.i_c.resize(settings.n_samples);
    intensities.i_t.resize(settings.n_samples);
    std::vector<double> hbt(settings.n_samples), non_hbt(settings.n_samples);

#ifdef _OPENMP
#pragma omp parallel num_threads(settings.workers > 0 ? settings.workers : 1)
#endif
    {
        std::vector<std::complex<double>> alphas(n_modes);
        ModeFactors factors;
        factors.resize(n_modes);
        PairScratch scratch;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            RandomStream rng = substream(settings.seed, static_cast<std::uint64_t>(i));
            sample_into(grid, rng, alphas);
            std::complex<double> e_c{0.0, 0.0}, e_t{0.0, 0.0};
            for (std::size_t k = 0; k < n_modes; ++k) {
                e_c += times(alphas[k], props.total_c[k]);
                e_t += times(alphas[k], props.total_t[k]);
            }
            intensities.i_c[i] = std::norm(e_c);
            intensities.i_t[i] = std::norm(e_t);
            compute_mode_factors(alphas, props, factors);
            const GroupSums g = group_sums(factors, mode, scratch);
            hbt[i] = g.hbt();
            non_hbt[i] = g.non_hbt();
        }
    }

    DecompositionEstimate out;
    out.hbt_term = mean_estimate(hbt);
    out.non_hbt_term = mean_estimate(non_hbt);
    std::vector<double> totals(settings.n_samples);
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i] = hbt[i] + non_hbt[i];
    out.total = mean_estimate(totals);
    out.total.mean = out.hbt_term.mean + out.non_hbt_term.mean;
    out.moments = summarize(intensities, settings.batches);
    out.reference_covariance = out.moments.covariance;
    return out;
}

}  // namespace thermint
