#include "thermint/layout.hpp"

#include <cmath>
#include <sstream>

#include "thermint/error.hpp"
#include "thermint/phase.hpp"

namespace thermint {

const char* to_string(Detector d) { return d == Detector::C ? "C" : "T"; }

const char* to_string(LayoutKind k) {
    switch (k) {
        case LayoutKind::Hbt: return "HBT";
        case LayoutKind::DoubleMz: return "DOUBLE_MZ";
        case LayoutKind::Custom: return "CUSTOM";
    }
    return "?";
}

Layout::Layout(LayoutKind kind, std::vector<PathArm> arms, double c)
    : kind_(kind), arms_(std::move(arms)), c_(c) {
    if (!(c_ > 0.0)) throw ConfigError("layout: speed of light must be positive");
    std::size_t n_c = 0, n_t = 0;
    for (const auto& arm : arms_) {
        if (!(arm.length >= 0.0)) throw ConfigError("layout: arm lengths must be >= 0");
        if (std::abs(arm.coefficient) > 1.0) {
            throw ConfigError("layout: arm coefficient modulus exceeds 1");
        }
        (arm.detector == Detector::C ? n_c : n_t)++;
    }
    if (n_c == 0 || n_t == 0) throw ConfigError("layout: each detector needs at least one arm");
    if (kind_ == LayoutKind::Hbt && (n_c != 1 || n_t != 1)) {
        throw ConfigError("layout: HBT needs exactly one arm per detector");
    }
    if (kind_ == LayoutKind::DoubleMz && (n_c != 2 || n_t != 2)) {
        throw ConfigError("layout: DOUBLE_MZ needs exactly two arms per detector");
    }
}

Layout Layout::custom(std::vector<PathArm> arms, double speed_of_light) {
    return Layout(LayoutKind::Custom, std::move(arms), speed_of_light);
}

std::vector<PathArm> Layout::arms_for(Detector d) const {
    std::vector<PathArm> out;
    for (const auto& arm : arms_) {
        if (arm.detector == d) out.push_back(arm);
    }
    return out;
}

const PathArm& Layout::arm(Detector d, PathType type) const {
    if (kind_ != LayoutKind::DoubleMz) {
        throw UnsupportedLayoutError("path types are defined only for DOUBLE_MZ layouts");
    }
    const std::size_t side = d == Detector::C ? 0 : 2;
    return arms_[side + (type == PathType::Long ? 0 : 1)];
}

Layout Layout::with_labels_swapped() const {
    std::vector<PathArm> swapped;
    swapped.reserve(arms_.size());
    // Keep the (C ..., T ...) ordering that DOUBLE_MZ relies on.
    for (Detector target : {Detector::C, Detector::T}) {
        for (const auto& arm : arms_) {
            if (arm.detector != target) {
                PathArm copy = arm;
                copy.detector = target;
                swapped.push_back(copy);
            }
        }
    }
    return Layout(kind_, std::move(swapped), c_);
}

Layout hbt_layout(double length_c, double length_t, double speed_of_light) {
    if (length_c < 0.0 || length_t < 0.0) throw ConfigError("hbt layout: negative arm length");
    const std::complex<double> half_power{1.0 / std::sqrt(2.0), 0.0};
    return Layout(LayoutKind::Hbt,
                  {PathArm{Detector::C, length_c, half_power, 0.0},
                   PathArm{Detector::T, length_t, half_power, 0.0}},
                  speed_of_light);
}

Layout double_mz_layout(const DoubleMzGeometry& g, double speed_of_light) {
    if (!(g.short_c >= 0.0) || !(g.short_t >= 0.0)) {
        throw ConfigError("double_mz layout: short arms must be >= 0");
    }
    if (!(g.long_c > g.short_c)) throw ConfigError("double_mz layout: need L_C > S_C");
    if (!(g.long_t > g.short_t)) throw ConfigError("double_mz layout: need L_T > S_T");
    const std::complex<double> quarter_power{0.5, 0.0};
    return Layout(LayoutKind::DoubleMz,
                  {PathArm{Detector::C, g.long_c, quarter_power, g.extra_phase_c},
                   PathArm{Detector::C, g.short_c, quarter_power, 0.0},
                   PathArm{Detector::T, g.long_t, quarter_power, g.extra_phase_t},
                   PathArm{Detector::T, g.short_t, quarter_power, 0.0}},
                  speed_of_light);
}

double relative_phase(const Layout& layout, Detector d, double omega0) {
    if (layout.kind() != LayoutKind::DoubleMz) {
        throw UnsupportedLayoutError("relative_phase: layout is not DOUBLE_MZ");
    }
    const PathArm& lng = layout.arm(d, PathType::Long);
    const PathArm& shrt = layout.arm(d, PathType::Short);
    const long double unbalance_delay =
        (static_cast<long double>(lng.length) - static_cast<long double>(shrt.length)) /
        static_cast<long double>(layout.speed_of_light());
    const double geometric = reduced_phase(omega0, unbalance_delay);
    return wrap_phase(geometric + lng.extra_phase - shrt.extra_phase);
}

RegimeReport validate_regime(const Layout& layout, const SourceSpectrum& spectrum, double t_c,
                             double t_t, double factor) {
    if (!(factor > 1.0)) throw ConfigError("validate_regime: factor must exceed 1");
    RegimeReport report;
    report.factor = factor;
    const double dw = spectrum.delta_omega;
    const double c = layout.speed_of_light();
    auto ratio = [&](double a, double b) { return dw * std::abs(a - b) / c; };

    switch (layout.kind()) {
        case LayoutKind::DoubleMz: {
            const auto& lc = layout.arm(Detector::C, PathType::Long);
            const auto& sc = layout.arm(Detector::C, PathType::Short);
            const auto& lt = layout.arm(Detector::T, PathType::Long);
            const auto& st = layout.arm(Detector::T, PathType::Short);
            report.same_type_ratios = {{"L_C-L_T", ratio(lc.length, lt.length)},
                                       {"S_C-S_T", ratio(sc.length, st.length)}};
            report.cross_type_ratios = {{"L_C-S_C", ratio(lc.length, sc.length)},
                                        {"L_T-S_T", ratio(lt.length, st.length)}};
            break;
        }
        case LayoutKind::Hbt: {
            const auto c_arms = layout.arms_for(Detector::C);
            const auto t_arms = layout.arms_for(Detector::T);
            report.same_type_ratios = {{"l_C-l_T", ratio(c_arms[0].length, t_arms[0].length)}};
            break;
        }
        case LayoutKind::Custom:
            break;
    }
    report.detection_ratio = dw * std::abs(t_c - t_t);

    bool pass = report.detection_ratio < 1.0 / factor;
    for (const auto& [label, value] : report.same_type_ratios) pass = pass && value < 1.0 / factor;
    for (const auto& [label, value] : report.cross_type_ratios) pass = pass && value > factor;
    report.pass = pass;
    return report;
}

std::string format_report(const RegimeReport& report) {
    std::ostringstream out;
    out.precision(6);
    out << "regime (factor " << report.factor << "): " << (report.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& [label, value] : report.same_type_ratios) {
        out << "  same-type  dw|" << label << "|/c = " << value << " (need < "
            << 1.0 / report.factor << ")\n";
    }
    for (const auto& [label, value] : report.cross_type_ratios) {
        out << "  cross-type dw|" << label << "|/c = " << value << " (need > " << report.factor
            << ")\n";
    }
    out << "  detection  dw|t_C-t_T|  = " << report.detection_ratio << " (need < "
        << 1.0 / report.factor << ")\n";
    return out.str();
}

}  // namespace thermint
