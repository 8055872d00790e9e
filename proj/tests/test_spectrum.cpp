#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "thermint/error.hpp"
#include "thermint/rng.hpp"
#include "thermint/spectrum.hpp"

using namespace thermint;

namespace {

double gaussian_density(double r, double dw, double detuning) {
    return r * std::exp(-detuning * detuning / (2.0 * dw * dw)) / (std::sqrt(2.0 * std::numbers::pi) * dw);
}

}  // namespace

TEST_CASE("mean occupation follows the Gaussian lineshape") {
    const SourceSpectrum s{100.0, 1.0, 1.0};
    CHECK(mean_occupation(s, 100.0) == doctest::Approx(0.398942).epsilon(1e-6));
    CHECK(mean_occupation(s, 102.0) == doctest::Approx(0.053991).epsilon(1e-5));
    CHECK(mean_occupation(s, 102.0) == doctest::Approx(0.398942 * std::exp(-2.0)).epsilon(1e-5));
    CHECK(mean_occupation(s, 1e6) == 0.0);
    CHECK(mean_occupation(s, -1e6) == 0.0);

    const SourceSpectrum wide{50.0, 2.5, 3.0};
    for (double w : {40.0, 47.5, 50.0, 51.2, 58.0}) {
        CHECK(mean_occupation(wide, w) == doctest::Approx(gaussian_density(3.0, 2.5, w - 50.0)));
        CHECK(mean_occupation(wide, w) <= mean_occupation(wide, 50.0));
    }
    CHECK(mean_occupation_at_detuning(wide, 1.2) == doctest::Approx(mean_occupation(wide, 51.2)));
}

TEST_CASE("spectrum validation") {
    CHECK_NOTHROW(validate(SourceSpectrum{10.0, 1.0, 1.0}));
    CHECK_THROWS_AS(validate(SourceSpectrum{9.99, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(SourceSpectrum{0.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(SourceSpectrum{100.0, 0.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(SourceSpectrum{100.0, 1.0, -1.0}), ConfigError);
}

TEST_CASE("three-mode grid") {
    const auto g = build_grid(SourceSpectrum{100.0, 1.0, 1.0}, 3, 1.0);
    REQUIRE(g.size() == 3);
    CHECK(g.omegas[0] == 99.0);
    CHECK(g.omegas[1] == 100.0);
    CHECK(g.omegas[2] == 101.0);
    CHECK(g.spacing == 1.0);
    CHECK(g.detunings[0] == -1.0);
    CHECK(g.detunings[2] == 1.0);
    CHECK(g.occupations[1] == doctest::Approx(gaussian_density(1.0, 1.0, 0.0)));
}

TEST_CASE("grid mass matches the Riemann sum") {
    const auto g = build_grid(SourceSpectrum{100.0, 1.0, 1.0}, 201, 5.0);
    double riemann = 0.0;
    for (int k = 0; k < 201; ++k) riemann += gaussian_density(1.0, 1.0, -5.0 + 0.05 * k) * 0.05;
    CHECK(g.total_occupation() == doctest::Approx(riemann).epsilon(1e-12));
    CHECK(std::abs(g.total_occupation() - 0.99999) < 1e-3);
    CHECK(g.total_occupation() <= 1.0 + 1e-3);
}

TEST_CASE("grid invariants on the default grid") {
    const SourceSpectrum s{100.0, 1.0, 2.0};
    const auto g = build_grid(s);
    REQUIRE(g.size() == kDefaultModes);
    for (std::size_t k = 1; k < g.size(); ++k) {
        CHECK(g.omegas[k] > g.omegas[k - 1]);
        CHECK(g.detunings[k] - g.detunings[k - 1] == doctest::Approx(g.spacing).epsilon(1e-12));
    }
    for (double n : g.occupations) CHECK(n >= 0.0);
    CHECK(g.total_occupation() <= 2.0 * (1.0 + 1e-3));
    CHECK(g.total_occupation() == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("grid construction errors") {
    CHECK_THROWS_AS(build_grid(SourceSpectrum{2.0, 1.0, 1.0}, 256, 5.0), ConfigError);
    CHECK_THROWS_AS(build_grid(SourceSpectrum{100.0, 1.0, 1.0}, 1, 5.0), ConfigError);
    CHECK_THROWS_AS(build_grid(SourceSpectrum{100.0, 1.0, 1.0}, 256, 0.0), ConfigError);
    // Spacing 2 sigma: the Riemann sum overshoots the Gaussian mass by ~1.4%.
    CHECK_THROWS_AS(build_grid(SourceSpectrum{100.0, 1.0, 1.0}, 11, 10.0), ConfigError);
}

TEST_CASE("SI-scale grid keeps exact detunings") {
    const double c = 299792458.0;
    const SourceSpectrum s{2.0 * std::numbers::pi * c / 780e-9, c / 120.0, 1.0};
    const auto g = build_grid(s);
    CHECK(g.center == s.omega0);
    CHECK(g.detunings.front() == doctest::Approx(-5.0 * s.delta_omega));
    CHECK(g.detunings.back() == doctest::Approx(5.0 * s.delta_omega));
    CHECK(g.total_occupation() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("empty modes sample to exactly zero") {
    FrequencyGrid g = build_grid(SourceSpectrum{}, 4, 2.0);
    g.occupations[1] = 0.0;
    auto rng = substream(7, 0);
    const auto r = sample_realization(g, rng);
    REQUIRE(r.alphas.size() == 4);
    CHECK(r.alphas[1] == std::complex<double>(0.0, 0.0));
    CHECK(std::abs(r.alphas[0]) > 0.0);
}

TEST_CASE("sampling is deterministic per seed") {
    const auto g = build_grid(SourceSpectrum{}, 16, 3.0);
    auto a = substream(42, 3);
    auto b = substream(42, 3);
    auto c = substream(42, 4);
    const auto ra = sample_realization(g, a);
    const auto rb = sample_realization(g, b);
    const auto rc = sample_realization(g, c);
    CHECK(ra.alphas == rb.alphas);
    CHECK(ra.alphas != rc.alphas);

    std::vector<std::complex<double>> out(g.size());
    auto d = substream(42, 3);
    sample_into(g, d, out);
    CHECK(out == ra.alphas);
}

TEST_CASE("substreams differ across seeds and indices") {
    CHECK(substream(1, 0)() != substream(2, 0)());
    CHECK(substream(1, 0)() != substream(1, 1)());
    CHECK(substream(1, 5)() == substream(1, 5)());
}

TEST_CASE("mode-level thermal moments") {
    // One mode with occupation 0.5, sampled 1e5 times.
    FrequencyGrid g = build_grid(SourceSpectrum{}, 2, 1.0);
    g.occupations = {0.5, 0.0};
    const std::size_t n = 100000;
    const double nbar = 0.5;
    double s2 = 0.0, s4 = 0.0, s8 = 0.0;
    std::complex<double> s_alpha{}, s_alpha2{};
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = substream(2024, i);
        const auto a = sample_realization(g, rng).alphas[0];
        const double p = std::norm(a);
        s_alpha += a;
        s_alpha2 += a * a;
        s2 += p;
        s4 += p * p;
        s8 += p * p * p * p;
    }
    const double dn = static_cast<double>(n);
    // <|a|^2> = nbar with stderr nbar/sqrt(N).
    CHECK(std::abs(s2 / dn - nbar) < 5.0 * nbar / std::sqrt(dn));
    // <|a|^4> = 2 nbar^2; Var(|a|^4) = <|a|^8> - 4 nbar^4 = 24 nbar^4 - 4 nbar^4.
    CHECK(std::abs(s4 / dn - 2.0 * nbar * nbar) < 5.0 * std::sqrt(20.0) * nbar * nbar / std::sqrt(dn));
    CHECK(s8 / dn == doctest::Approx(24.0 * std::pow(nbar, 4)).epsilon(0.1));
    // <a> = 0 (Var |a|^2 / N) and <a^2> = 0 (Var nbar^2 / N).
    CHECK(std::abs(s_alpha / dn) < 5.0 * std::sqrt(nbar / dn));
    CHECK(std::abs(s_alpha2 / dn) < 5.0 * nbar / std::sqrt(dn));
}
