#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "doctest.h"
#include "thermint/config.hpp"
#include "thermint/error.hpp"

using namespace thermint;

namespace {

const char* kFull = R"(# comment
units.c = 1
spectrum.omega0 = 100
spectrum.delta_omega = 1
spectrum.mean_rate = 1
grid.n_modes = 256
grid.span_sigma = 5
layout.kind = double_mz
layout.L_C = 60
layout.S_C = 10
layout.L_T = 60
layout.S_T = 10
layout.extra_phase_C = 0
layout.extra_phase_T = 0
run.n_samples = 1e5
run.seed = 1
run.batches = 32
run.factor = 10
scan.variable = phase_diff
scan.start = 0
scan.stop = 2pi
scan.steps = 9
scan.sweep_mode = ideal
)";

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
    const auto at = text.find(key + " =");
    REQUIRE(at != std::string::npos);
    const auto end = text.find('\n', at);
    return text.replace(at, end - at, line);
}

}  // namespace

TEST_CASE("full config parses to the dimensionless preset") {
    const auto c = parse_config(kFull);
    CHECK(c == preset_config("dimensionless"));
    CHECK(c.run.n_samples == 100000);
    CHECK(c.scan.stop == 2.0 * std::numbers::pi);
    CHECK(c.layout.mz.long_c == 60.0);
}

TEST_CASE("preset with overrides") {
    const auto c = parse_config("preset = dimensionless\nrun.seed = 7\nlayout.extra_phase_C = 0.5pi\n");
    CHECK(c.run.seed == 7);
    CHECK(c.layout.mz.extra_phase_c == doctest::Approx(std::numbers::pi / 2));
    CHECK(c.spectrum.omega0 == 100.0);

    const auto k = preset_config("kim2018");
    CHECK(k.speed_of_light == 299792458.0);
    CHECK(k.scan.sweep_mode == SweepMode::Physical);
    CHECK(k.spectrum.omega0 / k.spectrum.delta_omega > 1e8);
    CHECK(k.layout.mz.long_c - k.layout.mz.short_c == 800.0);
    CHECK_NOTHROW(validate(k));
    CHECK(preset_names().size() == 2);
    CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("round trip is idempotent") {
    for (const auto& name : preset_names()) {
        const auto c = preset_config(name);
        const auto text = serialize_config(c);
        const auto back = parse_config(text);
        CHECK(back == c);
        CHECK(serialize_config(back) == text);
    }
    auto odd = parse_config(kFull);
    odd.layout.mz.extra_phase_c = 0.1;
    odd.run.t_c = 1.0 / 3.0;
    odd.scan.variable = ScanVariable::Unbalance;
    odd.scan.spacing = Spacing::Log;
    odd.scan.start = 20.0;
    odd.scan.stop = 2000.0;
    const auto text = serialize_config(odd);
    CHECK(parse_config(text) == odd);

    auto hbt = preset_config("dimensionless");
    hbt.layout.kind = LayoutKind::Hbt;
    hbt.layout.length_c = 0.25;
    hbt.scan.variable = ScanVariable::TimeDelay;
    CHECK(parse_config(serialize_config(hbt)) == hbt);
}

TEST_CASE("errors name the offending key") {
    CHECK(error_of(std::string(kFull) + "spectrum.omega = 3\n").find("spectrum.omega: unknown key") == 0);
    CHECK(error_of(std::string(kFull) + "run.seed = 2\n").find("run.seed: duplicate") == 0);
    CHECK(error_of(replace_line(kFull, "grid.n_modes", "")).find("grid.n_modes: missing") == 0);
    CHECK(error_of(replace_line(kFull, "layout.L_C", "layout.L_C = sixty")).find("layout.L_C") == 0);
    CHECK(error_of(replace_line(kFull, "scan.steps", "scan.steps = -3")).find("scan.steps") == 0);
    CHECK(error_of(replace_line(kFull, "scan.stop", "scan.stop = -1")).find("scan.stop") == 0);
    CHECK(error_of(replace_line(kFull, "scan.variable", "scan.variable = colour")).find("scan.variable") == 0);
    CHECK(error_of(replace_line(kFull, "scan.sweep_mode", "scan.sweep_mode = fast")).find("scan.sweep_mode") == 0);
    CHECK(error_of(replace_line(kFull, "layout.kind", "layout.kind = franson")).find("layout.kind") == 0);
    CHECK(error_of(std::string(kFull) + "just words\n").find("line ") == 0);
    CHECK(error_of("preset = nope\n").find("unknown preset") != std::string::npos);
    // Semantic checks of the other modules surface as config errors too.
    CHECK_FALSE(error_of(replace_line(kFull, "layout.L_C", "layout.L_C = 5")).empty());
    CHECK_FALSE(error_of(replace_line(kFull, "spectrum.omega0", "spectrum.omega0 = 5")).empty());
    CHECK_FALSE(error_of(replace_line(kFull, "run.n_samples", "run.n_samples = 10")).empty());
    CHECK(error_of(kFull).empty());
}

TEST_CASE("hbt configs need their own keys") {
    const std::string hbt = "preset = dimensionless\nlayout.kind = hbt\nlayout.l_C = 0\nlayout.l_T = 2\n";
    const auto c = parse_config(hbt);
    CHECK(c.layout.kind == LayoutKind::Hbt);
    CHECK(c.layout.length_t == 2.0);
    std::string no_preset = replace_line(kFull, "layout.kind", "layout.kind = hbt");
    CHECK(error_of(no_preset).find("missing required key") != std::string::npos);
}

TEST_CASE("scan values") {
    ScanConfig s;
    s.start = 0.0;
    s.stop = 1.0;
    s.steps = 5;
    const auto v = scan_values(s);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 0.0);
    CHECK(v[2] == 0.5);
    CHECK(v[4] == 1.0);

    s.start = 20.0;
    s.stop = 2000.0;
    s.steps = 3;
    s.spacing = Spacing::Log;
    const auto w = scan_values(s);
    CHECK(w[0] == 20.0);
    CHECK(w[1] == doctest::Approx(200.0));
    CHECK(w[2] == 2000.0);

    s.steps = 1;
    CHECK(scan_values(s) == std::vector<double>{20.0});
}

TEST_CASE("double formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 2.0 * std::numbers::pi, 1e-300, 6.02214076e23, -0.0, 100.0}) {
        const auto s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(format_double(100.0) == "100");
}

TEST_CASE("config files load") {
    const auto c = load_config(THERMINT_SOURCE_DIR "/configs/dimensionless.cfg");
    CHECK(c == preset_config("dimensionless"));
    CHECK_NOTHROW(load_config(THERMINT_SOURCE_DIR "/configs/kim2018.cfg"));
    CHECK_NOTHROW(load_config(THERMINT_SOURCE_DIR "/configs/hbt.cfg"));
    CHECK_NOTHROW(load_config(THERMINT_SOURCE_DIR "/configs/decompose.cfg"));
    CHECK_NOTHROW(load_config(THERMINT_SOURCE_DIR "/configs/unbalance.cfg"));
    CHECK_THROWS_AS(load_config(THERMINT_SOURCE_DIR "/configs/missing.cfg"), ConfigError);
}
