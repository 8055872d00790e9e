#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thermint/layout.hpp"
#include "thermint/spectrum.hpp"

namespace thermint {

enum class ScanVariable { PhaseDiff, CommonPhase, TimeDelay, Unbalance };
enum class SweepMode { Ideal, Physical };
enum class Spacing { Linear, Log };

struct LayoutConfig {
    LayoutKind kind = LayoutKind::DoubleMz;
    DoubleMzGeometry mz;
    double length_c = 0.0;  ///< HBT arms
    double length_t = 0.0;

    bool operator==(const LayoutConfig&) const = default;
};

struct RunConfig {
    std::size_t n_samples = 100000;
    std::uint64_t seed = 1;
    std::size_t batches = 32;
    double factor = 10.0;
    double t_c = 0.0;
    double t_t = 0.0;

    bool operator==(const RunConfig&) const = default;
};

struct ScanConfig {
    ScanVariable variable = ScanVariable::PhaseDiff;
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;
    SweepMode sweep_mode = SweepMode::Ideal;
    Spacing spacing = Spacing::Linear;
    /// Phase points per unbalance value in unbalance scans.
    std::size_t phase_steps = 9;

    bool operator==(const ScanConfig&) const = default;
};

struct ExperimentConfig {
    double speed_of_light = 1.0;
    SourceSpectrum spectrum;
    std::size_t n_modes = 256;
    double span_sigma = 5.0;
    LayoutConfig layout;
    RunConfig run;
    ScanConfig scan;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the flat `section.key = value` format. Lines starting with '#'
/// are comments. A `preset = <name>` line loads that preset first and the
/// remaining keys override it, wherever the line appears. Numeric values
/// accept a trailing `pi` factor (`pi`, `2pi`, `0.5pi`).
///
/// Throws ConfigError naming the offending key (or line) for unknown keys,
/// duplicate keys, malformed values, missing required keys and semantic
/// violations (e.g. stop < start).
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Full, sorted key listing; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// `dimensionless` or `kim2018`. Throws ConfigError for other names.
ExperimentConfig preset_config(std::string_view name);

std::vector<std::string> preset_names();

/// Semantic checks shared by the parser and the runners.
void validate(const ExperimentConfig& config);

/// Scan abscissae: `steps` points from start to stop, linear or log spaced.
std::vector<double> scan_values(const ScanConfig& scan);

/// Round-trip exact, locale-independent text for a double (17 significant digits).
std::string format_double(double value);

const char* to_string(ScanVariable v);
const char* to_string(SweepMode m);

}  // namespace thermint
