#pragma once

// Test-side evaluation of detector fields straight from the definition,
// in long double with absolute frequencies. Valid at desk scale only
// (omega * delay must stay well below 1e15).

#include <cmath>
#include <complex>

#include "thermint/layout.hpp"
#include "thermint/spectrum.hpp"

namespace oracle {

using cld = std::complex<long double>;

inline cld arm_amplitude(const thermint::PathArm& arm, long double omega, long double t,
                         long double c) {
    const long double phase = arm.extra_phase - omega * (t - arm.length / c);
    const cld coeff(arm.coefficient.real(), arm.coefficient.imag());
    return coeff * cld(std::cos(phase), std::sin(phase));
}

inline std::complex<double> field(const std::vector<std::complex<double>>& alphas,
                                  const thermint::FrequencyGrid& grid,
                                  const thermint::Layout& layout, thermint::Detector d,
                                  double t) {
    cld sum = 0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const long double omega = static_cast<long double>(grid.center) + grid.detunings[k];
        for (const auto& arm : layout.arms_for(d)) {
            sum += cld(alphas[k].real(), alphas[k].imag()) *
                   arm_amplitude(arm, omega, t, layout.speed_of_light());
        }
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// <E_C^* E_T> = sum_k n_k conj(W_Ck) W_Tk for a thermal ensemble.
inline std::complex<double> cross_correlation(const thermint::FrequencyGrid& grid,
                                              const thermint::Layout& layout, double t_c,
                                              double t_t) {
    cld sum = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const long double omega = static_cast<long double>(grid.center) + grid.detunings[k];
        cld wc = 0, wt = 0;
        for (const auto& arm : layout.arms_for(thermint::Detector::C)) {
            wc += arm_amplitude(arm, omega, t_c, layout.speed_of_light());
        }
        for (const auto& arm : layout.arms_for(thermint::Detector::T)) {
            wt += arm_amplitude(arm, omega, t_t, layout.speed_of_light());
        }
        sum += static_cast<long double>(grid.occupations[k]) * std::conj(wc) * wt;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// <I_d> = sum_k n_k |W_dk|^2.
inline double mean_intensity(const thermint::FrequencyGrid& grid, const thermint::Layout& layout,
                             thermint::Detector d, double t) {
    long double sum = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const long double omega = static_cast<long double>(grid.center) + grid.detunings[k];
        cld w = 0;
        for (const auto& arm : layout.arms_for(d)) {
            w += arm_amplitude(arm, omega, t, layout.speed_of_light());
        }
        sum += grid.occupations[k] * std::norm(w);
    }
    return static_cast<double>(sum);
}

}  // namespace oracle
