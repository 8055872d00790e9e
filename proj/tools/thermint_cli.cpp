// Command-line front end: scan, decompose, hbt, validate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "thermint/config.hpp"
#include "thermint/error.hpp"
#include "thermint/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    bool brute_force = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_output) {
    cmd->add_option("--config", args.config_path, "Experiment config file")->required();
    if (with_output) {
        cmd->add_option("--out", args.out_path, "CSV output path (default: stdout)");
        cmd->add_option("--workers", args.workers, "Worker threads for the realization loop")
            ->check(CLI::PositiveNumber);
    }
    cmd->add_option("--seed", args.seed, "Override run.seed");
}

thermint::ExperimentConfig load(const CommonArgs& args) {
    auto config = thermint::load_config(args.config_path);
    if (args.seed) config.run.seed = *args.seed;
    return config;
}

int emit(const thermint::ScanResult& result, const CommonArgs& args) {
    if (args.out_path.empty()) {
        thermint::write_csv(std::cout, result.rows);
        std::cerr << result.summary;
        return 0;
    }
    std::ofstream out(args.out_path);
    if (!out) {
        std::cerr << "error: cannot write " << args.out_path << "\n";
        return kExitRuntime;
    }
    thermint::write_csv(out, result.rows);
    std::cout << result.summary;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermal-light second-order interference simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* scan = app.add_subcommand("scan", "Covariance scan with analytic oracle columns");
    add_common(scan, args, true);
    auto* decompose = app.add_subcommand("decompose", "Scan with HBT / non-HBT decomposition");
    add_common(decompose, args, true);
    decompose->add_flag("--brute-force", args.brute_force,
                        "Evaluate pair sums by direct O(N^2) enumeration");
    auto* hbt = app.add_subcommand("hbt", "g2(tau) scan on an HBT layout");
    add_common(hbt, args, true);
    auto* validate = app.add_subcommand("validate", "Print the regime report of a config");
    add_common(validate, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const auto config = load(args);
        thermint::RunOptions options{args.workers, args.brute_force};
        if (*scan) return emit(thermint::run_scan(config, options), args);
        if (*decompose) return emit(thermint::run_decompose(config, options), args);
        if (*hbt) return emit(thermint::run_hbt(config, options), args);
        if (*validate) {
            const auto layout = thermint::base_layout(config);
            std::cout << "layout: " << thermint::to_string(layout.kind()) << "\n";
            if (layout.kind() == thermint::LayoutKind::DoubleMz) {
                for (auto d : {thermint::Detector::C, thermint::Detector::T}) {
                    std::cout << "phi_" << thermint::to_string(d) << " = "
                              << thermint::format_double(thermint::relative_phase(
                                     layout, d, config.spectrum.omega0))
                              << "\n";
                }
            }
            const auto report = thermint::validate_regime(layout, config.spectrum, config.run.t_c,
                                                          config.run.t_t, config.run.factor);
            std::cout << thermint::format_report(report);
            return 0;
        }
    } catch (const thermint::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const thermint::UnsupportedLayoutError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
