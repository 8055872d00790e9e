#include "thermint/oracle.hpp"

#include <cmath>

#include "thermint/error.hpp"
#include "thermint/phase.hpp"

namespace thermint {

std::complex<double> g_two_path(double l_c, double l_t, double t_c, double t_t,
                                const SourceSpectrum& spectrum, double speed_of_light) {
    const double dw = spectrum.delta_omega;
    const double dl = (l_c - l_t) / speed_of_light;
    const double dt = t_c - t_t;
    const long double net_delay = static_cast<long double>(dt) -
                                  (static_cast<long double>(l_c) - static_cast<long double>(l_t)) /
                                      static_cast<long double>(speed_of_light);
    const double phase = reduced_phase(spectrum.omega0, net_delay);
    const double envelope = std::exp(-0.5 * dl * dl * dw * dw) * std::exp(-0.5 * dt * dt * dw * dw);
    return std::complex<double>(0.0, spectrum.mean_rate * envelope) * std::polar(1.0, phase);
}

AnalyticPrediction predict(const Layout& layout, const SourceSpectrum& spectrum, double t_c,
                           double t_t, double a_squared) {
    const double c = layout.speed_of_light();
    const double r2 = spectrum.mean_rate * spectrum.mean_rate;
    AnalyticPrediction p;
    p.normalization = a_squared * r2;

    switch (layout.kind()) {
        case LayoutKind::DoubleMz: {
            const auto& lc = layout.arm(Detector::C, PathType::Long);
            const auto& lt = layout.arm(Detector::T, PathType::Long);
            const auto& sc = layout.arm(Detector::C, PathType::Short);
            const auto& st = layout.arm(Detector::T, PathType::Short);
            const double extra = (lc.extra_phase - lt.extra_phase) - (sc.extra_phase - st.extra_phase);
            const auto g_long =
                g_two_path(lc.length, lt.length, t_c, t_t, spectrum, c) * std::polar(1.0, -extra);
            const auto g_short = g_two_path(sc.length, st.length, t_c, t_t, spectrum, c);
            p.fluctuation_correlation = a_squared * std::norm(g_long + g_short);
            p.envelope = std::abs(g_long) * std::abs(g_short) / r2;
            p.background = 4.0 * p.normalization;
            p.fringe_phase = wrap_phase(relative_phase(layout, Detector::C, spectrum.omega0) -
                                        relative_phase(layout, Detector::T, spectrum.omega0));
            break;
        }
        case LayoutKind::Hbt: {
            const auto c_arm = layout.arms_for(Detector::C).front();
            const auto t_arm = layout.arms_for(Detector::T).front();
            const auto g = g_two_path(c_arm.length, t_arm.length, t_c, t_t, spectrum, c);
            p.fluctuation_correlation = a_squared * std::norm(g);
            p.envelope = std::norm(g) / r2;
            p.background = p.normalization;
            p.fringe_phase = 0.0;
            break;
        }
        case LayoutKind::Custom:
            throw UnsupportedLayoutError("predict: CUSTOM layouts have no closed form");
    }
    p.raw_g2 = p.background + p.fluctuation_correlation;
    return p;
}

double visibility(VisibilityMode mode) {
    return mode == VisibilityMode::Fluctuation ? 1.0 : 1.0 / 3.0;
}

double visibility(double max, double min) {
    const double sum = max + min;
    return sum == 0.0 ? 0.0 : (max - min) / sum;
}

double hbt_g2(const SourceSpectrum& spectrum, double tau) {
    const double x = spectrum.delta_omega * tau;
    return 1.0 + std::exp(-x * x);
}

}  // namespace thermint
