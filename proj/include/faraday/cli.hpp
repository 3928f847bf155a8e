#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "faraday/feasibility.hpp"
#include "faraday/io.hpp"
#include "faraday/langevin.hpp"
#include "faraday/params.hpp"
#include "faraday/readout_mc.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/sweeps.hpp"

namespace faraday::cli {

struct RunConfig {
    std::string params_path;
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    std::vector<AxisSpec> grid_overrides;
    std::string format = "csv";        // csv | json, selects the stdout rendering
    double spin_lifetime = 100e-9;     // used by condition (D) and the readout simulator
    long trials = 10000;               // Monte Carlo trials for simulate
    double t_end = 0.0;                // 0 = automatic
    double dt = 0.0;                   // 0 = automatic
    std::ostream* out = &std::cout;
};

namespace detail {

inline void check_format(const RunConfig& cfg) {
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("format must be csv or json");
}

inline AxisSpec pick_axis(const RunConfig& cfg, const AxisSpec& fallback) {
    for (const auto& ax : cfg.grid_overrides)
        if (ax.name == fallback.name) return ax;
    return fallback;
}

inline void reject_unknown_axes(const RunConfig& cfg, const std::vector<std::string>& names) {
    for (const auto& ax : cfg.grid_overrides)
        if (std::find(names.begin(), names.end(), ax.name) == names.end())
            throw std::invalid_argument("unknown grid axis '" + ax.name + "' for this command");
}

inline std::filesystem::path prepare_out(const RunConfig& cfg) {
    if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    return cfg.out_dir;
}

// round to one significant digit, for the "~300 GHz" style rendering
inline double round_1sig(double v) {
    if (v == 0.0) return 0.0;
    const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))));
    return std::round(v / mag) * mag;
}

inline void write_region_files(const RegionGrid& grid, const std::filesystem::path& dir) {
    std::vector<std::string> cols = {grid.axis_x.name, grid.axis_y.name};
    cols.insert(cols.end(), grid.margin_names.begin(), grid.margin_names.end());
    cols.insert(cols.end(), grid.flag_names.begin(), grid.flag_names.end());
    cols.push_back("feasible");

    io::CsvBuilder region(cols);
    for (const auto& kv : grid.metadata) region.comment(kv.first + " = " + io::format_double(kv.second));
    for (const auto& cell : grid.cells) {
        std::vector<double> row = {cell.x, cell.y};
        row.insert(row.end(), cell.margins.begin(), cell.margins.end());
        for (const bool f : cell.flags) row.push_back(f ? 1.0 : 0.0);
        row.push_back(cell.feasible ? 1.0 : 0.0);
        region.row(row);
    }
    io::write_text_atomic(dir / "region.csv", region.text());

    io::CsvBuilder bounds({"condition", "point", grid.axis_x.name, grid.axis_y.name});
    for (const auto& curve : grid.boundaries) {
        for (std::size_t k = 0; k < curve.points.size(); ++k)
            bounds.row_mixed({curve.condition, std::to_string(k),
                              io::format_double(curve.points[k].first),
                              io::format_double(curve.points[k].second)});
    }
    io::write_text_atomic(dir / "boundaries.csv", bounds.text());
}

} // namespace detail

// Frequency response of both channels across the cavity resonance; the
// phase columns are unwrapped along the sweep.
inline int run_response(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);
    detail::reject_unknown_axes(cfg, {"omega"});
    const AxisSpec axis = detail::pick_axis(
        cfg, AxisSpec{"omega", -10.0 * p.cavity.gamma_p, 10.0 * p.cavity.gamma_p, 2001, false});
    axis.validate();

    const std::vector<double> offsets = axis.points();
    std::vector<double> r0_mag, r0_phase, r_mag, r_phase;
    r0_mag.reserve(offsets.size());
    for (const double d : offsets) {
        const ComplexReflectance r0{cold_reflectance_value(d, p.cavity.gamma_p)};
        const ComplexReflectance r{coupled_reflectance_value(
            d, p.cavity.gamma_p, d + p.cavity.omega_p - p.exciton.omega_ex, p.exciton.gamma_ex,
            p.exciton.omega_rabi, p.probe.sigma_z)};
        r0_mag.push_back(r0.magnitude);
        r0_phase.push_back(r0.phase);
        r_mag.push_back(r.magnitude);
        r_phase.push_back(r.phase);
    }
    const std::vector<double> r0_unwrapped = unwrap_phases(r0_phase);
    const std::vector<double> r_unwrapped = unwrap_phases(r_phase);

    io::CsvBuilder csv({"omega_offset", "r0_mag", "r0_phase", "r_mag", "r_phase", "phase_diff"});
    for (std::size_t k = 0; k < offsets.size(); ++k)
        csv.row({offsets[k], r0_mag[k], r0_unwrapped[k], r_mag[k], r_unwrapped[k],
                 r_unwrapped[k] - r0_unwrapped[k]});
    io::write_text_atomic(detail::prepare_out(cfg) / "response.csv", csv.text());
    *cfg.out << "wrote response.csv (" << offsets.size() << " points)\n";
    return 0;
}

// Single-point feasibility verdict; exit 0 when feasible, 1 when not.
inline int run_check(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);
    const FeasibilityReport rep =
        evaluate_feasibility(p.cavity, p.exciton, p.probe, cfg.spin_lifetime);

    io::JsonBuilder json;
    json.number("margin_a", rep.cond_a.value)
        .number("margin_b", rep.cond_b.value)
        .number("margin_c", rep.cond_c.value)
        .number("margin_d", rep.cond_d.value)
        .boolean("pass_a", rep.cond_a.pass)
        .boolean("pass_b", rep.cond_b.pass)
        .boolean("pass_c", rep.cond_c.pass)
        .boolean("pass_d", rep.cond_d.pass)
        .string("binding", rep.binding)
        .boolean("feasible", rep.feasible)
        .boolean("feasible_without_d", rep.feasible_without_d)
        .number("n_ex", rep.n_ex)
        .boolean("n_ex_warning", rep.n_ex_warning)
        .boolean("dispersive_valid", rep.dispersive_valid)
        .number("intracavity_photons", rep.intracavity_photons)
        .number("d_theta", rep.d_theta)
        .number("r_mag", rep.r_mag)
        .number("signal_flux", rep.signal)
        .number("sql_flux", rep.sql)
        .number("spin_lifetime", rep.spin_lifetime)
        .number("n_in", p.probe.n_in)
        .number("tau", p.probe.tau);
    io::write_text_atomic(detail::prepare_out(cfg) / "report.json", json.text());

    if (cfg.format == "json") {
        *cfg.out << json.text();
    } else {
        const auto line = [&](const char* id, const char* label, const Margin& m) {
            *cfg.out << "  (" << id << ") " << label << ": margin " << m.value << "  "
                     << (m.pass ? "pass" : "FAIL") << (m.boundary ? " (boundary)" : "") << "\n";
        };
        line("A", "signal above shot noise", rep.cond_a);
        line("B", "real excitation below one", rep.cond_b);
        line("C", "integration beyond cavity lifetime", rep.cond_c);
        line("D", "spin outlives integration", rep.cond_d);
        *cfg.out << "  binding constraint: " << rep.binding << "\n";
        *cfg.out << "  <n_ex> = " << rep.n_ex
                 << (rep.n_ex_warning ? "  WARNING: exceeds 0.1, linearization strained" : "")
                 << "\n";
        *cfg.out << (rep.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    }
    return rep.feasible ? 0 : 1;
}

// Region data over (normalized detuning, photon number), at the probe power
// and integration time taken from the parameter file.
inline int run_feasibility(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);
    detail::reject_unknown_axes(cfg, {"detuning", "nphoton"});
    const AxisSpec detuning = detail::pick_axis(cfg, AxisSpec{"detuning", 1.0, 1e6, 400, true});
    const AxisSpec nphoton = detail::pick_axis(cfg, AxisSpec{"nphoton", 1.0, 1e12, 200, true});
    const RegionGrid grid =
        sweep_detuning(p.cavity, p.exciton, p.probe.power(), p.probe.tau, detuning, nphoton);
    detail::write_region_files(grid, detail::prepare_out(cfg));
    *cfg.out << "wrote region.csv and boundaries.csv ("
             << grid.cells.size() << " cells, feasible region "
             << (grid.any_feasible() ? "non-empty" : "empty") << ")\n";
    return 0;
}

// Region data over (cavity Q, integration time) for the standard occupation
// ladder {0.1, 0.01, 0.001}.
inline int run_tau_q(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);
    detail::reject_unknown_axes(cfg, {"q", "tau"});
    const AxisSpec q_axis = detail::pick_axis(cfg, AxisSpec{"q", 1e2, 1e6, 200, true});
    const AxisSpec tau_axis = detail::pick_axis(cfg, AxisSpec{"tau", 1e-12, 1e-6, 200, true});
    const RegionGrid grid =
        sweep_tau_q(p.cavity, p.exciton, {0.1, 0.01, 0.001}, q_axis, tau_axis);
    detail::write_region_files(grid, detail::prepare_out(cfg));
    *cfg.out << "wrote region.csv and boundaries.csv ("
             << grid.cells.size() << " cells, feasible region "
             << (grid.any_feasible() ? "non-empty" : "empty") << ")\n";
    return 0;
}

// Vacuum Rabi frequency from the cavity geometry and the radiative rate.
inline int run_rabi(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);
    const double rabi = vacuum_rabi(p.cavity, p.exciton.gamma_rad);
    if (cfg.format == "json") {
        io::JsonBuilder json;
        json.number("omega_rabi", rabi).number("omega_rabi_ghz", rabi / 1e9);
        if (p.exciton.rabi_supplied) json.number("omega_rabi_override", p.exciton.omega_rabi);
        *cfg.out << json.text();
    } else {
        *cfg.out << "omega_rabi = " << io::format_double(rabi) << " rad/s (~"
                 << io::format_double(detail::round_1sig(rabi / 1e9)) << " GHz)\n";
        if (p.exciton.rabi_supplied)
            *cfg.out << "parameter file overrides omega_rabi = "
                     << io::format_double(p.exciton.omega_rabi) << " rad/s\n";
    }
    return 0;
}

// Time-domain trajectory plus a Monte Carlo readout summary.
inline int run_simulate(const RunConfig& cfg) {
    detail::check_format(cfg);
    const SystemParams p = load_params(cfg.params_path);

    LangevinOptions opt;
    opt.t_end = cfg.t_end > 0.0 ? cfg.t_end : 50.0 / p.cavity.gamma_p;
    opt.dt = cfg.dt > 0.0 ? cfg.dt : langevin_auto_dt(p.cavity, p.exciton, p.probe.omega);
    const auto steps = static_cast<long long>(std::llround(opt.t_end / opt.dt));
    opt.sample_stride = std::max(1LL, steps / 2000);
    const std::complex<double> drive(std::sqrt(p.probe.n_in), 0.0);
    const auto trajectory = integrate_langevin(p.cavity, p.exciton, drive, p.probe.omega, opt);

    io::CsvBuilder csv({"t", "re_a", "im_a", "re_sigma", "im_sigma", "re_aout", "im_aout"});
    for (const auto& s : trajectory)
        csv.row({s.t, s.a.real(), s.a.imag(), s.sigma.real(), s.sigma.imag(), s.a_out.real(),
                 s.a_out.imag()});
    const std::filesystem::path dir = detail::prepare_out(cfg);
    io::write_text_atomic(dir / "trajectory.csv", csv.text());

    const McSummary mc =
        readout_fidelity_mc(p.cavity, p.exciton, p.probe, cfg.spin_lifetime, cfg.trials, cfg.seed);
    io::JsonBuilder json;
    json.integer("trials", mc.trials)
        .number("fidelity", mc.fidelity)
        .number("std_error", mc.std_error)
        .number("snr", mc.snr)
        .number("mean_flips", mc.mean_flips)
        .integer("flipped_trials", mc.flipped_trials)
        .number("spin_lifetime", cfg.spin_lifetime)
        .integer("seed", static_cast<long long>(mc.seed));
    io::write_text_atomic(dir / "mc.json", json.text());

    *cfg.out << "wrote trajectory.csv (" << trajectory.size() << " samples) and mc.json (fidelity "
             << mc.fidelity << ")\n";
    return 0;
}

} // namespace faraday::cli
