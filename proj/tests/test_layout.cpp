#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "thermint/error.hpp"
#include "thermint/layout.hpp"
#include "thermint/phase.hpp"

using namespace thermint;

namespace {

double ratio_named(const std::vector<std::pair<std::string, double>>& v, const std::string& label) {
    for (const auto& [name, value] : v) {
        if (name == label) return value;
    }
    FAIL("missing ratio " << label);
    return 0.0;
}

DoubleMzGeometry symmetric(double unbalance, double shorts = 1.0) {
    return {shorts + unbalance, shorts, shorts + unbalance, shorts, 0.0, 0.0};
}

}  // namespace

TEST_CASE("hbt layouts") {
    const auto l = hbt_layout(0.0, 0.0);
    CHECK(l.kind() == LayoutKind::Hbt);
    REQUIRE(l.arms().size() == 2);
    for (const auto& arm : l.arms()) {
        CHECK(arm.length == 0.0);
        CHECK(arm.coefficient.real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(arm.coefficient.imag() == 0.0);
    }
    CHECK(l.arms_for(Detector::C).size() == 1);
    CHECK(l.arms_for(Detector::T).size() == 1);

    const auto s = hbt_layout(1.0, 1.0).with_labels_swapped();
    CHECK(s.arms_for(Detector::C)[0].length == 1.0);
    CHECK(s.arms_for(Detector::T)[0].length == 1.0);

    const auto a = hbt_layout(1.0, 3.0).with_labels_swapped();
    CHECK(a.arms_for(Detector::C)[0].length == 3.0);
    CHECK(a.arms_for(Detector::T)[0].length == 1.0);
    CHECK(a.kind() == LayoutKind::Hbt);

    CHECK_THROWS_AS(hbt_layout(-1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(hbt_layout(0.0, -1e-9), ConfigError);
}

TEST_CASE("hbt same-type ratio") {
    const SourceSpectrum s{100.0, 2.0, 1.0};
    const double c = 3.0;
    const auto l = hbt_layout(1.0, 1.0 + 0.01 * c / s.delta_omega, c);
    const auto r = validate_regime(l, s, 0.0, 0.0);
    REQUIRE(r.same_type_ratios.size() == 1);
    CHECK(r.same_type_ratios[0].second == doctest::Approx(0.01));
    CHECK(r.cross_type_ratios.empty());
}

TEST_CASE("double MZ construction") {
    const auto l = double_mz_layout(symmetric(1.0));
    CHECK(l.kind() == LayoutKind::DoubleMz);
    REQUIRE(l.arms().size() == 4);
    for (const auto& arm : l.arms()) CHECK(std::abs(arm.coefficient) == doctest::Approx(0.5));
    for (Detector d : {Detector::C, Detector::T}) {
        double power = 0.0;
        for (const auto& arm : l.arms_for(d)) power += std::norm(arm.coefficient);
        CHECK(power == doctest::Approx(0.5));
    }
    CHECK(l.arm(Detector::C, PathType::Long).length == 2.0);
    CHECK(l.arm(Detector::T, PathType::Short).length == 1.0);

    DoubleMzGeometry g = symmetric(1.0);
    g.extra_phase_c = 0.3;
    g.extra_phase_t = 0.7;
    const auto p = double_mz_layout(g);
    CHECK(p.arm(Detector::C, PathType::Long).extra_phase == 0.3);
    CHECK(p.arm(Detector::C, PathType::Short).extra_phase == 0.0);
    CHECK(p.arm(Detector::T, PathType::Long).extra_phase == 0.7);

    CHECK_THROWS_AS(double_mz_layout({1.0, 1.0, 2.0, 1.0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(double_mz_layout({2.0, 1.0, 0.5, 1.0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(double_mz_layout({2.0, -1.0, 2.0, 1.0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(hbt_layout(0, 0).arm(Detector::C, PathType::Long), UnsupportedLayoutError);
}

TEST_CASE("custom layouts enforce invariants") {
    CHECK_NOTHROW(Layout::custom({PathArm{Detector::C, 1.0, {0.5, 0.0}, 0.0},
                                  PathArm{Detector::T, 2.0, {0.0, 0.5}, 0.0},
                                  PathArm{Detector::T, 3.0, {0.5, 0.0}, 0.0}}));
    CHECK_THROWS_AS(Layout::custom({PathArm{Detector::C, 1.0, {0.5, 0.0}, 0.0}}), ConfigError);
    CHECK_THROWS_AS(Layout::custom({PathArm{Detector::C, 1.0, {1.5, 0.0}, 0.0},
                                    PathArm{Detector::T, 1.0, {0.5, 0.0}, 0.0}}),
                    ConfigError);
    CHECK_THROWS_AS(Layout::custom({PathArm{Detector::C, -1.0, {0.5, 0.0}, 0.0},
                                    PathArm{Detector::T, 1.0, {0.5, 0.0}, 0.0}}),
                    ConfigError);
    const auto c = Layout::custom({PathArm{Detector::C, 1.0, {0.5, 0.0}, 0.0},
                                   PathArm{Detector::T, 1.0, {0.5, 0.0}, 0.0}});
    CHECK(c.kind() == LayoutKind::Custom);
    CHECK_THROWS_AS(relative_phase(c, Detector::C, 100.0), UnsupportedLayoutError);
}

TEST_CASE("cross-type ratios") {
    const SourceSpectrum s{100.0, 1.0, 1.0};
    const auto r = validate_regime(double_mz_layout(symmetric(50.0)), s, 0.0, 0.0);
    CHECK(ratio_named(r.cross_type_ratios, "L_C-S_C") == doctest::Approx(50.0));
    CHECK(ratio_named(r.cross_type_ratios, "L_T-S_T") == doctest::Approx(50.0));
    CHECK(ratio_named(r.same_type_ratios, "L_C-L_T") == 0.0);
}

TEST_CASE("relative phase") {
    const double omega0 = 100.0;
    const double lambda = kTwoPi / omega0;
    auto phase_for = [&](double unbalance, double extra) {
        DoubleMzGeometry g = symmetric(unbalance, 3.0);
        g.extra_phase_c = extra;
        return relative_phase(double_mz_layout(g), Detector::C, omega0);
    };
    CHECK(phase_for(10.25 * lambda, 0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    for (int k : {1, 2, 7, 40}) {
        const double p = phase_for(k * lambda, 0.0);
        CHECK(std::min(p, kTwoPi - p) < 1e-12);
    }
    CHECK(phase_for(std::nextafter(3.0, 4.0) - 3.0, 1.3) == doctest::Approx(1.3));
    CHECK(phase_for(1e-12, 1.3 + kTwoPi) == doctest::Approx(1.3));
    const double p = phase_for(0.37, -2.0);
    CHECK(p >= 0.0);
    CHECK(p < kTwoPi);
    CHECK_THROWS_AS(relative_phase(hbt_layout(0, 0), Detector::C, omega0), UnsupportedLayoutError);
}

TEST_CASE("relative phase is periodic in whole wavelengths") {
    const double omega0 = 100.0;
    const double lambda = kTwoPi / omega0;
    DoubleMzGeometry g = symmetric(1.2345, 0.5);
    const double base = relative_phase(double_mz_layout(g), Detector::T, omega0);
    for (int k : {1, 3, 100}) {
        DoubleMzGeometry h = g;
        h.long_t += k * lambda;
        const double shifted = relative_phase(double_mz_layout(h), Detector::T, omega0);
        CHECK(std::abs(angular_distance(shifted, base)) < 1e-10);
    }
}

TEST_CASE("SI-scale relative phase against a multiprecision oracle") {
    using big = boost::multiprecision::cpp_bin_float_50;
    const double c = 299792458.0;
    const double omega0 = 2.0 * std::numbers::pi * c / 780e-9;
    const big two_pi = 2 * boost::math::constants::pi<big>();
    for (double unbalance : {800.0, 680.0, 123.456789, 800.0 + 0.25 * 780e-9}) {
        DoubleMzGeometry g{1.0 + unbalance, 1.0, 1.0 + unbalance, 1.0, 0.0, 0.0};
        const double got = relative_phase(double_mz_layout(g, c), Detector::C, omega0);
        big exact = big(omega0) * (big(g.long_c) - big(g.short_c)) / big(c);
        exact = exact - two_pi * floor(exact / two_pi);
        const double want = exact.convert_to<double>();
        CHECK(std::abs(angular_distance(got, want)) < 1e-6);
    }
}

TEST_CASE("regime examples") {
    const SourceSpectrum s{100.0, 1.0, 1.0};
    DoubleMzGeometry g{60.0, 10.0, 60.01, 10.01, 0.0, 0.0};
    auto r = validate_regime(double_mz_layout(g), s, 0.0, 0.0);
    CHECK(r.pass);
    CHECK(r.factor == 10.0);
    CHECK(ratio_named(r.same_type_ratios, "L_C-L_T") == doctest::Approx(0.01));

    r = validate_regime(double_mz_layout(symmetric(0.5)), s, 0.0, 0.0);
    CHECK_FALSE(r.pass);
    CHECK(ratio_named(r.cross_type_ratios, "L_C-S_C") == doctest::Approx(0.5));

    r = validate_regime(double_mz_layout(symmetric(50.0)), s, 1.0, 0.0);
    CHECK_FALSE(r.pass);
    CHECK(r.detection_ratio == doctest::Approx(1.0));

    r = validate_regime(double_mz_layout(symmetric(50.0)), s, 0.0, 0.0, 100.0);
    CHECK_FALSE(r.pass);
    CHECK(r.factor == 100.0);

    CHECK_THROWS_AS(validate_regime(hbt_layout(0, 0), s, 0, 0, 1.0), ConfigError);
    CHECK(validate_regime(hbt_layout(0, 0), s, 0, 0).pass);
    CHECK_FALSE(validate_regime(hbt_layout(0, 0), s, 0, 0.2).pass);
    CHECK(format_report(r).find("FAIL") != std::string::npos);
}

TEST_CASE("regime pass is consistent with its ratios and monotone in the unbalance") {
    const SourceSpectrum s{100.0, 1.0, 1.0};
    bool seen_pass = false;
    for (double u = 0.5; u < 200.0; u *= 1.3) {
        DoubleMzGeometry g{10.0 + u, 10.0, 10.0 + u + 0.02, 10.02, 0.0, 0.0};
        const auto r = validate_regime(double_mz_layout(g), s, 0.0, 0.01);
        bool expect = r.detection_ratio < 1.0 / r.factor;
        for (const auto& [label, v] : r.same_type_ratios) expect = expect && v < 1.0 / r.factor;
        for (const auto& [label, v] : r.cross_type_ratios) expect = expect && v > r.factor;
        CHECK(r.pass == expect);
        if (seen_pass) CHECK(r.pass);
        seen_pass = seen_pass || r.pass;
    }
    CHECK(seen_pass);
}

TEST_CASE("label swap exchanges the regime report roles") {
    const SourceSpectrum s{100.0, 1.0, 1.0};
    DoubleMzGeometry g{60.0, 10.0, 75.0, 12.0, 0.4, 1.1};
    const auto l = double_mz_layout(g);
    const auto w = l.with_labels_swapped();
    CHECK(w.kind() == LayoutKind::DoubleMz);
    CHECK(w.arm(Detector::C, PathType::Long).length == 75.0);
    CHECK(w.arm(Detector::T, PathType::Short).length == 10.0);
    CHECK(w.arm(Detector::C, PathType::Long).extra_phase == 1.1);
    CHECK(relative_phase(w, Detector::C, 100.0) == relative_phase(l, Detector::T, 100.0));
    const auto a = validate_regime(l, s, 0.0, 0.0);
    const auto b = validate_regime(w, s, 0.0, 0.0);
    CHECK(ratio_named(a.cross_type_ratios, "L_C-S_C") == ratio_named(b.cross_type_ratios, "L_T-S_T"));
    CHECK(a.pass == b.pass);
}
