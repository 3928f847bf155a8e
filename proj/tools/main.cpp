// faraday-qnd: microcavity Faraday-rotation spin readout — response sweeps,
// feasibility regions, and the time-domain/Monte-Carlo simulator.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faraday/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Quantum-nondemolition spin readout feasibility for a microcavity quantum dot"};
    app.require_subcommand(1);

    faraday::cli::RunConfig cfg;
    std::vector<std::string> grid_specs;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--params", cfg.params_path, "parameter file (key = value)")->required();
        cmd->add_option("--out", cfg.out_dir, "output directory (default: current)");
        cmd->add_option("--seed", cfg.seed, "random seed for Monte Carlo runs");
        cmd->add_option("--grid", grid_specs, "axis override, name:min:max:count:lin|log");
        cmd->add_option("--format", cfg.format, "stdout rendering: csv (text) or json");
        cmd->add_option("--spin-lifetime", cfg.spin_lifetime, "spin lifetime in seconds (default 100 ns)");
        cmd->add_option("--trials", cfg.trials, "Monte Carlo trials (default 10000)");
        cmd->add_option("--t-end", cfg.t_end, "integration span in seconds (default: automatic)");
        cmd->add_option("--dt", cfg.dt, "integrator step in seconds (default: automatic)");
    };

    CLI::App* response = app.add_subcommand("response", "phase/amplitude response across the resonance");
    CLI::App* check = app.add_subcommand("check", "single-point feasibility verdict");
    CLI::App* feasibility = app.add_subcommand("feasibility", "region over detuning and photon number");
    CLI::App* tau_q = app.add_subcommand("tau-q", "region over cavity Q and integration time");
    CLI::App* rabi = app.add_subcommand("rabi", "vacuum Rabi frequency from the cavity geometry");
    CLI::App* simulate = app.add_subcommand("simulate", "time-domain trajectory and readout Monte Carlo");
    for (CLI::App* cmd : {response, check, feasibility, tau_q, rabi, simulate}) add_common(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto& spec : grid_specs)
            cfg.grid_overrides.push_back(faraday::AxisSpec::parse(spec));
        if (response->parsed()) return faraday::cli::run_response(cfg);
        if (check->parsed()) return faraday::cli::run_check(cfg);
        if (feasibility->parsed()) return faraday::cli::run_feasibility(cfg);
        if (tau_q->parsed()) return faraday::cli::run_tau_q(cfg);
        if (rabi->parsed()) return faraday::cli::run_rabi(cfg);
        if (simulate->parsed()) return faraday::cli::run_simulate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
