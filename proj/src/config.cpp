#include "thermint/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "thermint/error.hpp"

namespace thermint {

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

const char* to_string(ScanVariable v) {
    switch (v) {
        case ScanVariable::PhaseDiff: return "phase_diff";
        case ScanVariable::CommonPhase: return "common_phase";
        case ScanVariable::TimeDelay: return "time_delay";
        case ScanVariable::Unbalance: return "unbalance";
    }
    return "?";
}

const char* to_string(SweepMode m) { return m == SweepMode::Ideal ? "ideal" : "physical"; }

namespace {

const char* spacing_name(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }
const char* kind_name(LayoutKind k) {
    switch (k) {
        case LayoutKind::Hbt: return "hbt";
        case LayoutKind::DoubleMz: return "double_mz";
        case LayoutKind::Custom: return "custom";
    }
    return "?";
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
    throw ConfigError(key + ": expected " + expected + ", got '" + std::string(value) + "'");
}

double parse_number(const std::string& key, std::string_view text) {
    double factor = 1.0;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        factor = std::numbers::pi;
        text = trim(text.substr(0, text.size() - 2));
        if (text.empty()) return factor;
        if (text.back() == '*') text = trim(text.substr(0, text.size() - 1));
    }
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) bad_value(key, text, "a number");
    return value * factor;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
    std::uint64_t value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec == std::errc() && ptr != end) {
        // Accept integral scientific notation such as 1e5.
        const double d = parse_number(key, text);
        if (d < 0 || d != std::floor(d) || d > 1e18) bad_value(key, text, "a non-negative integer");
        return static_cast<std::uint64_t>(d);
    }
    if (ec != std::errc()) bad_value(key, text, "a non-negative integer");
    return value;
}

template <class Enum>
Enum parse_enum(const std::string& key, std::string_view text,
                std::initializer_list<std::pair<const char*, Enum>> names) {
    for (const auto& [name, value] : names) {
        if (text == name) return value;
    }
    std::string expected = "one of";
    for (const auto& [name, value] : names) expected += std::string(" ") + name;
    bad_value(key, text, expected.c_str());
}

struct Field {
    const char* key;
    std::function<void(ExperimentConfig&, const std::string&, std::string_view)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define THERMINT_REAL_FIELD(name, member)                                                   \
    Field {                                                                                \
        name,                                                                              \
            [](ExperimentConfig& c, const std::string& k, std::string_view v) {            \
                c.member = parse_number(k, v);                                             \
            },                                                                             \
            [](const ExperimentConfig& c) { return format_double(c.member); }              \
    }

#define THERMINT_COUNT_FIELD(name, member)                                                  \
    Field {                                                                                \
        name,                                                                              \
            [](ExperimentConfig& c, const std::string& k, std::string_view v) {            \
                c.member = static_cast<decltype(c.member)>(parse_unsigned(k, v));          \
            },                                                                             \
            [](const ExperimentConfig& c) { return std::to_string(c.member); }             \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        THERMINT_REAL_FIELD("units.c", speed_of_light),
        THERMINT_REAL_FIELD("spectrum.omega0", spectrum.omega0),
        THERMINT_REAL_FIELD("spectrum.delta_omega", spectrum.delta_omega),
        THERMINT_REAL_FIELD("spectrum.mean_rate", spectrum.mean_rate),
        THERMINT_COUNT_FIELD("grid.n_modes", n_modes),
        THERMINT_REAL_FIELD("grid.span_sigma", span_sigma),
        Field{"layout.kind",
              [](ExperimentConfig& c, const std::string& k, std::string_view v) {
                  c.layout.kind = parse_enum<LayoutKind>(
                      k, v, {{"hbt", LayoutKind::Hbt}, {"double_mz", LayoutKind::DoubleMz}});
              },
              [](const ExperimentConfig& c) { return std::string(kind_name(c.layout.kind)); }},
        THERMINT_REAL_FIELD("layout.L_C", layout.mz.long_c),
        THERMINT_REAL_FIELD("layout.S_C", layout.mz.short_c),
        THERMINT_REAL_FIELD("layout.L_T", layout.mz.long_t),
        THERMINT_REAL_FIELD("layout.S_T", layout.mz.short_t),
        THERMINT_REAL_FIELD("layout.extra_phase_C", layout.mz.extra_phase_c),
        THERMINT_REAL_FIELD("layout.extra_phase_T", layout.mz.extra_phase_t),
        THERMINT_REAL_FIELD("layout.l_C", layout.length_c),
        THERMINT_REAL_FIELD("layout.l_T", layout.length_t),
        THERMINT_COUNT_FIELD("run.n_samples", run.n_samples),
        THERMINT_COUNT_FIELD("run.seed", run.seed),
        THERMINT_COUNT_FIELD("run.batches", run.batches),
        THERMINT_REAL_FIELD("run.factor", run.factor),
        THERMINT_REAL_FIELD("run.t_C", run.t_c),
        THERMINT_REAL_FIELD("run.t_T", run.t_t),
        Field{"scan.variable",
              [](ExperimentConfig& c, const std::string& k, std::string_view v) {
                  c.scan.variable = parse_enum<ScanVariable>(
                      k, v,
                      {{"phase_diff", ScanVariable::PhaseDiff},
                       {"common_phase", ScanVariable::CommonPhase},
                       {"time_delay", ScanVariable::TimeDelay},
                       {"unbalance", ScanVariable::Unbalance}});
              },
              [](const ExperimentConfig& c) { return std::string(to_string(c.scan.variable)); }},
        THERMINT_REAL_FIELD("scan.start", scan.start),
        THERMINT_REAL_FIELD("scan.stop", scan.stop),
        THERMINT_COUNT_FIELD("scan.steps", scan.steps),
        Field{"scan.sweep_mode",
              [](ExperimentConfig& c, const std::string& k, std::string_view v) {
                  c.scan.sweep_mode = parse_enum<SweepMode>(
                      k, v, {{"ideal", SweepMode::Ideal}, {"physical", SweepMode::Physical}});
              },
              [](const ExperimentConfig& c) { return std::string(to_string(c.scan.sweep_mode)); }},
        Field{"scan.spacing",
              [](ExperimentConfig& c, const std::string& k, std::string_view v) {
                  c.scan.spacing = parse_enum<Spacing>(
                      k, v, {{"linear", Spacing::Linear}, {"log", Spacing::Log}});
              },
              [](const ExperimentConfig& c) { return std::string(spacing_name(c.scan.spacing)); }},
        THERMINT_COUNT_FIELD("scan.phase_steps", scan.phase_steps),
    };
    return table;
}

#undef THERMINT_REAL_FIELD
#undef THERMINT_COUNT_FIELD

// Keys that must be given when no preset supplies them.
const std::vector<std::string> kRequired = {
    "spectrum.omega0", "spectrum.delta_omega", "spectrum.mean_rate", "grid.n_modes",
    "grid.span_sigma", "layout.kind",          "run.n_samples",      "run.seed",
    "scan.variable",   "scan.start",           "scan.stop",          "scan.steps"};

const std::vector<std::string> kRequiredMz = {"layout.L_C", "layout.S_C", "layout.L_T",
                                              "layout.S_T"};
const std::vector<std::string> kRequiredHbt = {"layout.l_C", "layout.l_T"};

}  // namespace

std::vector<std::string> preset_names() { return {"dimensionless", "kim2018"}; }

ExperimentConfig preset_config(std::string_view name) {
    ExperimentConfig c;
    c.layout.kind = LayoutKind::DoubleMz;
    c.layout.mz = DoubleMzGeometry{60.0, 10.0, 60.0, 10.0, 0.0, 0.0};
    c.scan = ScanConfig{ScanVariable::PhaseDiff, 0.0, 2.0 * std::numbers::pi, 9,
                        SweepMode::Ideal, Spacing::Linear, 9};
    if (name == "dimensionless") {
        // c = 1, dw = 1: times in coherence times, lengths in coherence lengths.
        c.speed_of_light = 1.0;
        c.spectrum = SourceSpectrum{100.0, 1.0, 1.0};
        return c;
    }
    if (name == "kim2018") {
        // 780 nm source with a 120 m coherence length, 800 m unbalance.
        constexpr double kLightSpeed = 299792458.0;
        constexpr double kWavelength = 780e-9;
        constexpr double kCoherenceLength = 120.0;
        c.speed_of_light = kLightSpeed;
        c.spectrum = SourceSpectrum{2.0 * std::numbers::pi * kLightSpeed / kWavelength,
                                    kLightSpeed / kCoherenceLength, 1.0};
        c.layout.mz = DoubleMzGeometry{801.0, 1.0, 801.0, 1.0, 0.0, 0.0};
        c.scan.sweep_mode = SweepMode::Physical;
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& c) {
    if (!(c.speed_of_light > 0.0)) throw ConfigError("units.c: must be positive");
    validate(c.spectrum);
    build_grid(c.spectrum, c.n_modes, c.span_sigma);
    if (c.layout.kind == LayoutKind::DoubleMz) {
        double_mz_layout(c.layout.mz, c.speed_of_light);
    } else if (c.layout.kind == LayoutKind::Hbt) {
        hbt_layout(c.layout.length_c, c.layout.length_t, c.speed_of_light);
    } else {
        throw ConfigError("layout.kind: custom layouts cannot be configured from a file");
    }
    if (c.run.batches < 2) throw ConfigError("run.batches: need at least 2");
    if (c.run.n_samples < 2 * c.run.batches) {
        throw ConfigError("run.n_samples: need at least two samples per batch");
    }
    if (!(c.run.factor > 1.0)) throw ConfigError("run.factor: must exceed 1");
    if (c.scan.steps < 1) throw ConfigError("scan.steps: must be at least 1");
    if (!(c.scan.stop >= c.scan.start)) throw ConfigError("scan.stop: must be >= scan.start");
    if (c.scan.spacing == Spacing::Log && !(c.scan.start > 0.0)) {
        throw ConfigError("scan.start: log spacing needs a positive start");
    }
    if (c.scan.phase_steps < 3) throw ConfigError("scan.phase_steps: need at least 3");
}

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, std::string> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key(trim(view.substr(0, eq)));
        std::string value(trim(view.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (value.empty()) throw ConfigError(key + ": empty value");
        if (!entries.emplace(key, value).second) throw ConfigError(key + ": duplicate key");
    }

    ExperimentConfig config;
    const bool has_preset = entries.count("preset") > 0;
    if (has_preset) {
        config = preset_config(entries.at("preset"));
        entries.erase("preset");
    }

    const auto& table = fields();
    for (const auto& [key, value] : entries) {
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const Field& f) { return key == f.key; });
        if (it == table.end()) throw ConfigError(key + ": unknown key");
        it->set(config, key, value);
    }

    if (!has_preset) {
        auto require = [&](const std::vector<std::string>& keys) {
            for (const auto& k : keys) {
                if (!entries.count(k)) throw ConfigError(k + ": missing required key");
            }
        };
        require(kRequired);
        require(config.layout.kind == LayoutKind::DoubleMz ? kRequiredMz : kRequiredHbt);
    }
    validate(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& f : fields()) lines.emplace_back(f.key, f.get(config));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& [key, value] : lines) out += key + " = " + value + "\n";
    return out;
}

std::vector<double> scan_values(const ScanConfig& scan) {
    std::vector<double> values(scan.steps);
    if (scan.steps == 1) {
        values[0] = scan.start;
        return values;
    }
    const double last = static_cast<double>(scan.steps - 1);
    for (std::size_t i = 0; i < scan.steps; ++i) {
        const double f = static_cast<double>(i) / last;
        if (scan.spacing == Spacing::Linear) {
            values[i] = scan.start + f * (scan.stop - scan.start);
        } else {
            values[i] = scan.start * std::pow(scan.stop / scan.start, f);
        }
    }
    values.back() = scan.stop;
    return values;
}

}  // namespace thermint
