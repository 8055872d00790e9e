#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thermint/config.hpp"
#include "thermint/decomposition.hpp"
#include "thermint/field.hpp"
#include "thermint/oracle.hpp"
#include "thermint/statistics.hpp"

namespace thermint {

/// One CSV row. Column meaning depends on the command; see README.
struct ScanRow {
    double scan_value = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    double oracle_value = 0.0;
    double raw_g2 = 0.0;
    double background = 0.0;
    std::optional<double> hbt_term;
    std::optional<double> non_hbt_term;
};

inline constexpr const char* kCsvHeader =
    "scan_value,mc_mean,mc_stderr,oracle_value,raw_g2,background,hbt_term,non_hbt_term";

void write_csv(std::ostream& out, const std::vector<ScanRow>& rows);

struct RunOptions {
    int workers = 1;
    bool brute_force = false;
};

/// Fringe statistics over one phase scan.
struct FringeSummary {
    Visibility fluctuation_visibility;
    Visibility raw_visibility;
    double a_squared = 0.0;         ///< fitted oracle scale
    double fringe_amplitude = 0.0;  ///< A in A (1 + cos dphi)
    double fringe_residual = 0.0;   ///< relative residual of that fit
    CosineFit cosine;               ///< free offset/cos/sin fit of the covariance
    std::vector<double> fringe_phases;
    std::vector<CorrelationEstimate> covariance;
    std::vector<CorrelationEstimate> correlation;
    std::vector<double> oracle_unit;  ///< predictions at a2 = 1
};

struct DecomposeSummary {
    double hbt_mean = 0.0;
    double hbt_max_deviation = 0.0;
    double hbt_max_deviation_stderr = 0.0;  ///< in units of each point's stderr
    double hbt_flatness = 0.0;              ///< max deviation / mean
    CosineFit non_hbt_fit;
    double amplitude_ratio = 0.0;  ///< non-HBT cosine amplitude / HBT mean
    double max_reconstruction_separation = 0.0;
    std::vector<DecompositionEstimate> points;
};

struct HbtSummary {
    std::vector<CorrelationEstimate> g2;
    std::vector<double> oracle;
    double max_separation = 0.0;  ///< max |g2 - oracle| / stderr
};

struct UnbalanceSummary {
    std::vector<double> unbalances;
    std::vector<FringeSummary> fringes;
    double visibility_spread = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    RegimeReport regime;  ///< at the unswept configuration
    std::optional<FringeSummary> fringe;
    std::optional<DecomposeSummary> decompose;
    std::optional<HbtSummary> hbt;
    std::optional<UnbalanceSummary> unbalance;
    std::string summary;
};

/// Monte Carlo covariance scan with oracle columns. Every scan point reuses
/// the same realization seeds, so neighbouring points differ only through
/// the swept parameter.
ScanResult run_scan(const ExperimentConfig& config, const RunOptions& options = {});

/// Scan with the four-group decomposition. DOUBLE_MZ only, phase scans only.
ScanResult run_decompose(const ExperimentConfig& config, const RunOptions& options = {});

/// g2(tau) scan. HBT layout and time_delay variable only.
ScanResult run_hbt(const ExperimentConfig& config, const RunOptions& options = {});

/// Layout of the configuration with the scan variable set to `value`.
struct ScanPoint {
    Layout layout;
    double t_c;
    double t_t;
};

ScanPoint scan_point(const ExperimentConfig& config, double value);

Layout base_layout(const ExperimentConfig& config);

FrequencyGrid config_grid(const ExperimentConfig& config);

}  // namespace thermint
