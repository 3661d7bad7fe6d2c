#include <CLI11.hpp>
#include <iostream>

#include "fluxjac/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entropy stable flux-differencing experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    bool assert_mode = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file");
        sub->add_option("--seed", seed, "override the RNG seed");
        sub->add_option("--out", out_dir, "output directory");
    };
    auto* verify = app.add_subcommand("verify", "check analytic Jacobians against oracles");
    auto* bench = app.add_subcommand("bench", "time Jacobian computation methods");
    auto* converge = app.add_subcommand("converge", "time-integrator convergence rates");
    auto* simulate = app.add_subcommand("simulate", "run a configured experiment");
    for (auto* sub : {verify, bench, converge, simulate}) add_common(sub);
    simulate->add_flag("--assert", assert_mode, "apply acceptance thresholds");

    CLI11_PARSE(app, argc, argv);

    try {
        fluxjac::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = fluxjac::ExperimentConfig::load(config_path);
        if (seed >= 0) cfg.seed = static_cast<unsigned long>(seed);
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        if (verify->parsed()) return fluxjac::cmd_verify(cfg, std::cout);
        if (bench->parsed()) return fluxjac::cmd_bench(cfg, std::cout);
        if (converge->parsed()) {
            if (config_path.empty()) {
                // desk-scale default: single spectral element, resolved
                // finely enough that the fourth-order methods clear the
                // spatial accuracy floor before roundoff
                cfg.scheme = "dgsem";
                cfg.k = 1;
                cfg.degree = 24;
                cfg.k_freq = 10.0;
                cfg.final_time = 1.0;
                cfg.dt0 = 0.004;
                cfg.levels = 5;
            }
            return fluxjac::cmd_converge(cfg, std::cout);
        }
        if (simulate->parsed()) return fluxjac::cmd_simulate(cfg, assert_mode, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
