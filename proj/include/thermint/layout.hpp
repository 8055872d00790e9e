#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thermint/spectrum.hpp"

namespace thermint {

enum class Detector { C, T };
enum class LayoutKind { Hbt, DoubleMz, Custom };
enum class PathType { Long, Short };

const char* to_string(Detector d);
const char* to_string(LayoutKind k);

/// One propagation route from the source to a detector.
struct PathArm {
    Detector detector = Detector::C;
    double length = 0.0;
    std::complex<double> coefficient{1.0, 0.0};
    double extra_phase = 0.0;
};

/// Arm lengths and phase offsets of two unbalanced Mach-Zehnder
/// interferometers, one in front of each detector.
struct DoubleMzGeometry {
    double long_c = 2.0;
    double short_c = 1.0;
    double long_t = 2.0;
    double short_t = 1.0;
    double extra_phase_c = 0.0;
    double extra_phase_t = 0.0;

    bool operator==(const DoubleMzGeometry&) const = default;
};

/// An interferometer as a set of arms. Immutable once built.
///
/// DOUBLE_MZ layouts store their arms in the order (C long, C short,
/// T long, T short); `arm(d, type)` relies on it.
class Layout {
public:
    /// Any set of arms; each detector needs at least one.
    static Layout custom(std::vector<PathArm> arms, double speed_of_light = 1.0);

    LayoutKind kind() const { return kind_; }
    double speed_of_light() const { return c_; }
    std::span<const PathArm> arms() const { return arms_; }
    std::vector<PathArm> arms_for(Detector d) const;

    /// DOUBLE_MZ only; throws UnsupportedLayoutError otherwise.
    const PathArm& arm(Detector d, PathType type) const;

    /// Same geometry with the C and T roles exchanged.
    Layout with_labels_swapped() const;

private:
    Layout(LayoutKind kind, std::vector<PathArm> arms, double c);

    friend Layout hbt_layout(double, double, double);
    friend Layout double_mz_layout(const DoubleMzGeometry&, double);

    LayoutKind kind_;
    std::vector<PathArm> arms_;
    double c_;
};

/// Balanced beam splitter feeding C and T directly; coefficient 1/sqrt(2) per arm.
Layout hbt_layout(double length_c, double length_t, double speed_of_light = 1.0);

/// Beam splitter followed by one unbalanced Mach-Zehnder per output.
/// Every arm carries coefficient 1/2; the extra phase of each side sits on
/// its long arm. Requires long > short >= 0 on both sides.
Layout double_mz_layout(const DoubleMzGeometry& geometry, double speed_of_light = 1.0);

/// Mach-Zehnder phase omega0 (L_d - S_d)/c + extra_phase_d, wrapped to [0, 2pi).
/// Throws UnsupportedLayoutError for non-DOUBLE_MZ layouts.
double relative_phase(const Layout& layout, Detector d, double omega0);

/// Path-delay and detection-time ratios against the coherence time.
struct RegimeReport {
    std::vector<std::pair<std::string, double>> same_type_ratios;
    std::vector<std::pair<std::string, double>> cross_type_ratios;
    double detection_ratio = 0.0;
    double factor = 10.0;
    bool pass = false;
};

inline constexpr double kDefaultRegimeFactor = 10.0;

/// Checks |same-type path differences| and |t_C - t_T| well inside, and
/// long-short unbalances well outside, the coherence time (threshold
/// `factor`). A failed regime is reported, never thrown. HBT layouts have
/// no cross-type pairs; CUSTOM layouts report only the detection ratio.
/// Throws ConfigError if factor <= 1.
RegimeReport validate_regime(const Layout& layout, const SourceSpectrum& spectrum,
                             double t_c, double t_t,
                             double factor = kDefaultRegimeFactor);

std::string format_report(const RegimeReport& report);

}  // namespace thermint
