// nnlif: run scenarios, convergence studies and stationary-state searches
// for the noisy leaky integrate-and-fire Fokker-Planck solver.

#include "nnlif/nnlif.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
    bool quiet = false;
    std::string config;
    std::string out = ".";
    std::string axis = "space";
    int levels = 5;
};

int cmd_run(const Options& opt) {
    const auto cfg = nnlif::load_scenario(opt.config);
    const auto result = nnlif::run_scenario(cfg);
    nnlif::write_run_outputs(result, opt.out);
    if (!opt.quiet) {
        std::cout << "stop: " << nnlif::to_string(result.stop_reason) << " at t = "
                  << nnlif::format_real(result.stop_time) << " after " << result.steps << " steps\n"
                  << "final N = " << nnlif::format_real(result.final_rate)
                  << ", final mass = " << nnlif::format_real(result.final_mass) << "\n";
        if (!result.stop_detail.empty()) std::cout << "detail: " << result.stop_detail << "\n";
        if (result.negative_density_steps > 0) {
            std::cerr << "warning: negative densities in " << result.negative_density_steps
                      << " steps\n";
        }
    }
    return result.stop_reason == nnlif::StopReason::instability ? kExitNumerical : 0;
}

int cmd_convergence(const Options& opt) {
    const auto cfg = nnlif::load_scenario(opt.config);
    if (opt.axis != "space" && opt.axis != "time") {
        throw nnlif::ConfigError({"--axis: expected space or time"});
    }
    const auto axis = opt.axis == "space" ? nnlif::RefinementAxis::space : nnlif::RefinementAxis::time;
    const auto rows = nnlif::convergence_order(cfg, axis, opt.levels);
    nnlif::write_orders(rows, opt.out);
    if (!opt.quiet) nnlif::write_orders_csv(std::cout, rows);
    return 0;
}

int cmd_stationary(const Options& opt) {
    const auto cfg = nnlif::load_scenario(opt.config);
    const auto grid = cfg.grid();
    const auto rates = nnlif::find_stationary_rates(cfg.params, grid);
    nnlif::write_stationary_rates(rates, opt.out);
    if (rates.empty()) {
        std::cout << "no stationary state found in (0, 10]\n";
    }
    for (double r : rates) {
        std::cout << nnlif::format_real(r) << "\n";
        const double tail = nnlif::truncation_tail(nnlif::continuous_stationary(r, grid, cfg.params));
        if (tail > 1e-8 && !opt.quiet) {
            std::cerr << "warning: truncation at v_min loses about " << tail
                      << " mass for N = " << r << "; lower v_min\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving solver for the NNLIF Fokker-Planck equation"};
    app.set_version_flag("--version", std::string(NNLIF_VERSION));
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--quiet,-q", opt.quiet, "Suppress progress output");

    auto* run = app.add_subcommand("run", "Run one scenario and write CSV outputs");
    run->add_option("config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", opt.out, "Output directory");

    auto* conv = app.add_subcommand("convergence", "Successive-halving order study");
    conv->add_option("config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
    conv->add_option("--axis", opt.axis, "space or time")->check(CLI::IsMember({"space", "time"}));
    conv->add_option("--levels", opt.levels, "Number of table rows (runs = levels + 1)")
        ->check(CLI::Range(3, 12));
    conv->add_option("--out", opt.out, "Output directory");

    auto* stat = app.add_subcommand("stationary", "Find stationary firing rates");
    stat->add_option("config", opt.config, "Scenario file")->required()->check(CLI::ExistingFile);
    stat->add_option("--out", opt.out, "Output directory");

    for (auto* sub : {run, conv, stat}) sub->add_flag("--quiet,-q", opt.quiet, "Suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(opt);
        if (*conv) return cmd_convergence(opt);
        if (*stat) return cmd_stationary(opt);
    } catch (const nnlif::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nnlif::NumericalFailure& e) {
        std::cerr << "numerical failure (" << nnlif::to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
