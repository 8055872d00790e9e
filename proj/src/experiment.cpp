#include "thermint/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "thermint/error.hpp"
#include "thermint/phase.hpp"

namespace thermint {

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << kCsvHeader << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& r : rows) {
        out << format_double(r.scan_value) << ',' << format_double(r.mc_mean) << ','
            << format_double(r.mc_stderr) << ',' << format_double(r.oracle_value) << ','
            << format_double(r.raw_g2) << ',' << format_double(r.background) << ','
            << opt(r.hbt_term) << ',' << opt(r.non_hbt_term) << '\n';
    }
}

Layout base_layout(const ExperimentConfig& config) {
    if (config.layout.kind == LayoutKind::Hbt) {
        return hbt_layout(config.layout.length_c, config.layout.length_t, config.speed_of_light);
    }
    return double_mz_layout(config.layout.mz, config.speed_of_light);
}

FrequencyGrid config_grid(const ExperimentConfig& config) {
    return build_grid(config.spectrum, config.n_modes, config.span_sigma);
}

ScanPoint scan_point(const ExperimentConfig& config, double value) {
    const double c = config.speed_of_light;
    // Length change that advances omega0 * L / c by `value` radians.
    const double phase_length = value * c / config.spectrum.omega0;
    const bool ideal = config.scan.sweep_mode == SweepMode::Ideal;
    auto require_mz = [&] {
        if (config.layout.kind != LayoutKind::DoubleMz) {
            throw UnsupportedLayoutError(std::string("scan.variable ") +
                                         to_string(config.scan.variable) +
                                         " needs a double_mz layout");
        }
    };

    DoubleMzGeometry mz = config.layout.mz;
    double t_c = config.run.t_c;
    const double t_t = config.run.t_t;
    switch (config.scan.variable) {
        case ScanVariable::PhaseDiff:
            require_mz();
            if (ideal) mz.extra_phase_c += value;
            else mz.long_c += phase_length;
            break;
        case ScanVariable::CommonPhase:
            require_mz();
            if (ideal) {
                mz.extra_phase_c += value;
                mz.extra_phase_t += value;
            } else {
                mz.long_c += phase_length;
                mz.long_t += phase_length;
            }
            break;
        case ScanVariable::TimeDelay:
            t_c += value;
            break;
        case ScanVariable::Unbalance:
            require_mz();
            mz.long_c = mz.short_c + value;
            mz.long_t = mz.short_t + value;
            break;
    }
    if (config.layout.kind == LayoutKind::Hbt) {
        return {hbt_layout(config.layout.length_c, config.layout.length_t, c), t_c, t_t};
    }
    return {double_mz_layout(mz, c), t_c, t_t};
}

namespace {

EnsembleSettings settings_for(const ExperimentConfig& config, const RunOptions& options) {
    EnsembleSettings s;
    s.n_samples = config.run.n_samples;
    s.seed = config.run.seed;
    s.batches = config.run.batches;
    s.workers = options.workers;
    return s;
}

bool is_phase_scan(const ExperimentConfig& config) {
    return config.layout.kind == LayoutKind::DoubleMz &&
           (config.scan.variable == ScanVariable::PhaseDiff ||
            config.scan.variable == ScanVariable::CommonPhase);
}

std::vector<double> means_of(const std::vector<CorrelationEstimate>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(e.mean);
    return out;
}

// Fills the fit-derived fields of a fringe summary from its point data.
void finish_fringe(FringeSummary& f, bool fit_phases) {
    const auto y = means_of(f.covariance);
    f.a_squared = fit_scale(y, f.oracle_unit);
    f.fluctuation_visibility = scan_visibility(f.covariance);
    f.raw_visibility = scan_visibility(f.correlation);
    if (!fit_phases) return;
    std::vector<double> model(f.fringe_phases.size());
    for (std::size_t i = 0; i < model.size(); ++i) model[i] = 1.0 + std::cos(f.fringe_phases[i]);
    f.fringe_amplitude = fit_scale(y, model);
    std::vector<double> fitted(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) fitted[i] = f.fringe_amplitude * model[i];
    f.fringe_residual = relative_residual(y, fitted);
    if (y.size() >= 3) {
        try {
            f.cosine = fit_cosine(f.fringe_phases, y);
        } catch (const EstimationError&) {
            // all phases equal: no cosine to fit
        }
    }
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

std::string fringe_text(const FringeSummary& f, bool phases) {
    std::ostringstream out;
    out << "fluctuation visibility: " << fmt(f.fluctuation_visibility.value) << " +/- "
        << fmt(f.fluctuation_visibility.std_error, 3) << "\n";
    out << "raw g2 visibility:      " << fmt(f.raw_visibility.value) << " +/- "
        << fmt(f.raw_visibility.std_error, 3) << "\n";
    out << "oracle scale a^2:       " << fmt(f.a_squared) << "\n";
    if (phases) {
        out << "fringe fit A(1+cos):    A = " << fmt(f.fringe_amplitude)
            << ", relative residual = " << fmt(f.fringe_residual, 3) << "\n";
        out << "free cosine fit:        offset = " << fmt(f.cosine.offset)
            << ", amplitude = " << fmt(f.cosine.amplitude) << "\n";
    }
    return out.str();
}

struct FringePoint {
    IntensityMoments moments;
    AnalyticPrediction unit;
};

FringePoint fringe_point(const ExperimentConfig& config, const FrequencyGrid& grid,
                         const EnsembleSettings& settings, double value) {
    const ScanPoint sp = scan_point(config, value);
    return {estimate_moments(sp.layout, grid, sp.t_c, sp.t_t, settings),
            predict(sp.layout, config.spectrum, sp.t_c, sp.t_t)};
}

ScanResult run_unbalance(const ExperimentConfig& config, const RunOptions& options) {
    const auto grid = config_grid(config);
    const auto settings = settings_for(config, options);
    ScanResult result;
    result.regime = validate_regime(base_layout(config), config.spectrum, config.run.t_c,
                                    config.run.t_t, config.run.factor);
    UnbalanceSummary summary;

    ScanConfig phases;
    phases.variable = ScanVariable::PhaseDiff;
    phases.start = 0.0;
    phases.stop = 2.0 * std::numbers::pi;
    phases.steps = config.scan.phase_steps;
    const auto phase_values = scan_values(phases);

    for (double unbalance : scan_values(config.scan)) {
        ExperimentConfig inner = config;
        inner.layout.mz.long_c = inner.layout.mz.short_c + unbalance;
        inner.layout.mz.long_t = inner.layout.mz.short_t + unbalance;
        inner.scan = phases;
        inner.scan.sweep_mode = config.scan.sweep_mode;

        FringeSummary f;
        double background = 0.0;
        for (double v : phase_values) {
            const auto p = fringe_point(inner, grid, settings, v);
            f.covariance.push_back(p.moments.covariance);
            f.correlation.push_back(p.moments.correlation);
            f.oracle_unit.push_back(p.unit.fluctuation_correlation);
            f.fringe_phases.push_back(p.unit.fringe_phase);
            background += p.moments.background();
        }
        finish_fringe(f, true);
        const auto [lo, hi] = std::minmax_element(f.oracle_unit.begin(), f.oracle_unit.end());

        ScanRow row;
        row.scan_value = unbalance;
        row.mc_mean = f.fluctuation_visibility.value;
        row.mc_stderr = f.fluctuation_visibility.std_error;
        row.oracle_value = visibility(*hi, *lo);
        row.raw_g2 = f.raw_visibility.value;
        row.background = background / static_cast<double>(phase_values.size());
        result.rows.push_back(row);
        summary.unbalances.push_back(unbalance);
        summary.fringes.push_back(std::move(f));
    }
    const auto [lo, hi] = std::minmax_element(
        result.rows.begin(), result.rows.end(),
        [](const ScanRow& a, const ScanRow& b) { return a.mc_mean < b.mc_mean; });
    summary.visibility_spread = hi->mc_mean - lo->mc_mean;

    std::ostringstream text;
    text << "unbalance scan: " << result.rows.size() << " values, " << phase_values.size()
         << " phase points each\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        text << "  L-S = " << fmt(summary.unbalances[i]) << ": fluctuation visibility "
             << fmt(result.rows[i].mc_mean) << " +/- " << fmt(result.rows[i].mc_stderr, 3)
             << ", raw " << fmt(result.rows[i].raw_g2) << "\n";
    }
    text << "visibility spread: " << fmt(summary.visibility_spread) << "\n";
    result.summary = text.str();
    result.unbalance = std::move(summary);
    return result;
}

}  // namespace

ScanResult run_scan(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    if (config.scan.variable == ScanVariable::Unbalance) return run_unbalance(config, options);

    const auto grid = config_grid(config);
    const auto settings = settings_for(config, options);
    ScanResult result;
    result.regime = validate_regime(base_layout(config), config.spectrum, config.run.t_c,
                                    config.run.t_t, config.run.factor);

    const auto values = scan_values(config.scan);
    FringeSummary f;
    std::vector<IntensityMoments> moments;
    for (double v : values) {
        const auto p = fringe_point(config, grid, settings, v);
        f.covariance.push_back(p.moments.covariance);
        f.correlation.push_back(p.moments.correlation);
        f.oracle_unit.push_back(p.unit.fluctuation_correlation);
        f.fringe_phases.push_back(p.unit.fringe_phase);
        moments.push_back(p.moments);
    }
    const bool phases = is_phase_scan(config);
    finish_fringe(f, phases);

    for (std::size_t i = 0; i < values.size(); ++i) {
        ScanRow row;
        row.scan_value = values[i];
        row.mc_mean = moments[i].covariance.mean;
        row.mc_stderr = moments[i].covariance.std_error;
        row.oracle_value = f.a_squared * f.oracle_unit[i];
        row.raw_g2 = moments[i].correlation.mean;
        row.background = moments[i].background();
        result.rows.push_back(row);
    }
    result.summary = "scan: " + std::string(to_string(config.scan.variable)) + ", " +
                     std::to_string(values.size()) + " points, regime " +
                     (result.regime.pass ? "PASS" : "FAIL") + "\n" + fringe_text(f, phases);
    result.fringe = std::move(f);
    return result;
}

ScanResult run_decompose(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    if (config.layout.kind != LayoutKind::DoubleMz) {
        throw UnsupportedLayoutError("decompose needs a double_mz layout");
    }
    if (config.scan.variable == ScanVariable::Unbalance) {
        throw ConfigError("scan.variable: decompose does not support unbalance scans");
    }
    const auto grid = config_grid(config);
    const auto settings = settings_for(config, options);
    const PairSumMode mode = options.brute_force ? PairSumMode::Direct : PairSumMode::Factorized;
    ScanResult result;
    result.regime = validate_regime(base_layout(config), config.spectrum, config.run.t_c,
                                    config.run.t_t, config.run.factor);

    const auto values = scan_values(config.scan);
    FringeSummary f;
    DecomposeSummary d;
    std::vector<bool> in_regime;
    for (double v : values) {
        const ScanPoint sp = scan_point(config, v);
        auto est = decompose_correlation(sp.layout, grid, sp.t_c, sp.t_t, settings, mode);
        const auto unit = predict(sp.layout, config.spectrum, sp.t_c, sp.t_t);
        f.covariance.push_back(est.reference_covariance);
        f.correlation.push_back(est.moments.correlation);
        f.oracle_unit.push_back(unit.fluctuation_correlation);
        f.fringe_phases.push_back(unit.fringe_phase);
        in_regime.push_back(
            validate_regime(sp.layout, config.spectrum, sp.t_c, sp.t_t, config.run.factor).pass);
        d.points.push_back(std::move(est));
    }
    const bool phases = is_phase_scan(config);
    finish_fringe(f, phases);

    double hbt_sum = 0.0;
    for (const auto& p : d.points) hbt_sum += p.hbt_term.mean;
    d.hbt_mean = hbt_sum / static_cast<double>(d.points.size());
    std::vector<double> non_hbt;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        const auto& p = d.points[i];
        const double dev = std::abs(p.hbt_term.mean - d.hbt_mean);
        d.hbt_max_deviation = std::max(d.hbt_max_deviation, dev);
        if (p.hbt_term.std_error > 0.0) {
            d.hbt_max_deviation_stderr =
                std::max(d.hbt_max_deviation_stderr, dev / p.hbt_term.std_error);
        }
        if (in_regime[i]) {
            d.max_reconstruction_separation = std::max(
                d.max_reconstruction_separation, separation(p.total, p.reference_covariance));
        }
        non_hbt.push_back(p.non_hbt_term.mean);
    }
    d.hbt_flatness = d.hbt_mean != 0.0 ? d.hbt_max_deviation / std::abs(d.hbt_mean) : 0.0;
    if (phases && non_hbt.size() >= 3) {
        try {
            d.non_hbt_fit = fit_cosine(f.fringe_phases, non_hbt);
            d.amplitude_ratio = d.hbt_mean != 0.0 ? d.non_hbt_fit.amplitude / d.hbt_mean : 0.0;
        } catch (const EstimationError&) {
        }
    }

    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& p = d.points[i];
        ScanRow row;
        row.scan_value = values[i];
        row.mc_mean = p.reference_covariance.mean;
        row.mc_stderr = p.reference_covariance.std_error;
        row.oracle_value = f.a_squared * f.oracle_unit[i];
        row.raw_g2 = p.moments.correlation.mean;
        row.background = p.moments.background();
        row.hbt_term = p.hbt_term.mean;
        row.non_hbt_term = p.non_hbt_term.mean;
        result.rows.push_back(row);
    }

    std::ostringstream text;
    text << "decompose: " << to_string(config.scan.variable) << ", " << values.size()
         << " points, pair sums " << (mode == PairSumMode::Direct ? "direct" : "factorized")
         << ", regime " << (result.regime.pass ? "PASS" : "FAIL") << "\n";
    text << fringe_text(f, phases);
    text << "hbt term mean:          " << fmt(d.hbt_mean) << "\n";
    text << "hbt flatness:           max deviation " << fmt(d.hbt_max_deviation, 3) << " ("
         << fmt(d.hbt_max_deviation_stderr, 3) << " stderr, " << fmt(d.hbt_flatness, 3)
         << " of mean)\n";
    if (phases) {
        text << "non-hbt cosine fit:     amplitude " << fmt(d.non_hbt_fit.amplitude)
             << ", offset " << fmt(d.non_hbt_fit.offset, 3) << ", rms residual "
             << fmt(d.non_hbt_fit.rms_residual, 3) << "\n";
        text << "non-hbt amplitude/hbt:  " << fmt(d.amplitude_ratio) << "\n";
    }
    text << "reconstruction:         max |total - covariance| = "
         << fmt(d.max_reconstruction_separation, 3) << " combined stderr (in-regime points)\n";
    result.summary = text.str();
    result.fringe = std::move(f);
    result.decompose = std::move(d);
    return result;
}

ScanResult run_hbt(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    if (config.layout.kind != LayoutKind::Hbt) {
        throw UnsupportedLayoutError("hbt needs an hbt layout");
    }
    if (config.scan.variable != ScanVariable::TimeDelay) {
        throw ConfigError("scan.variable: hbt scans need time_delay");
    }
    const auto grid = config_grid(config);
    const auto settings = settings_for(config, options);
    ScanResult result;
    result.regime = validate_regime(base_layout(config), config.spectrum, config.run.t_c,
                                    config.run.t_t, config.run.factor);
    HbtSummary h;
    for (double v : scan_values(config.scan)) {
        const ScanPoint sp = scan_point(config, v);
        const auto m = estimate_moments(sp.layout, grid, sp.t_c, sp.t_t, settings);
        const auto unit = predict(sp.layout, config.spectrum, sp.t_c, sp.t_t);
        const double oracle = unit.raw_g2 / unit.background;
        h.g2.push_back(m.g2);
        h.oracle.push_back(oracle);
        if (m.g2.std_error > 0.0) {
            h.max_separation =
                std::max(h.max_separation, std::abs(m.g2.mean - oracle) / m.g2.std_error);
        }
        ScanRow row;
        row.scan_value = v;
        row.mc_mean = m.g2.mean;
        row.mc_stderr = m.g2.std_error;
        row.oracle_value = oracle;
        row.raw_g2 = m.correlation.mean;
        row.background = m.background();
        result.rows.push_back(row);
    }
    std::ostringstream text;
    text << "hbt: " << result.rows.size() << " delays\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        text << "  tau = " << fmt(result.rows[i].scan_value) << ": g2 = " << fmt(h.g2[i].mean)
             << " +/- " << fmt(h.g2[i].std_error, 3) << " (oracle " << fmt(h.oracle[i]) << ")\n";
    }
    text << "max |g2 - oracle|: " << fmt(h.max_separation, 3) << " stderr\n";
    result.summary = text.str();
    result.hbt = std::move(h);
    return result;
}

}  // namespace thermint
