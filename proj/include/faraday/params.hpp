#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "faraday/constants.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/specs.hpp"

namespace faraday {

// Flat key = value parameter files, UTF-8, '#' comments. Frequency-like
// values accept the suffixes Hz|kHz|MHz|GHz|THz, which scale an angular
// frequency by 1, 1e3, 1e6, 1e9, 1e12 rad/s; omega_p and omega_ex also
// accept nm, converted through omega = 2 pi c / lambda. Unknown keys are
// hard errors so typos cannot silently change a run.
namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_value(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("parameter '" + key + "': cannot parse value '" + text + "'");
    }
    const std::string suffix = trim(text.substr(used));
    if (suffix.empty()) return value;
    if (suffix == "Hz") return value;
    if (suffix == "kHz") return value * 1e3;
    if (suffix == "MHz") return value * 1e6;
    if (suffix == "GHz") return value * 1e9;
    if (suffix == "THz") return value * 1e12;
    if (suffix == "nm") {
        if (key != "omega_p" && key != "omega_ex")
            throw std::invalid_argument("parameter '" + key + "': nm only applies to omega_p/omega_ex");
        if (!(value > 0.0)) throw std::invalid_argument("parameter '" + key + "': wavelength must be > 0");
        return constants::two_pi * constants::speed_of_light / (value * 1e-9);
    }
    throw std::invalid_argument("parameter '" + key + "': unknown unit suffix '" + suffix + "'");
}

} // namespace detail

inline SystemParams parse_params(std::istream& in) {
    static const std::set<std::string> known = {
        "omega_p", "gamma_p", "q_factor", "v_cav",   "n0",  "omega_ex", "gamma_ex",
        "gamma_rad", "omega_rabi", "omega_probe", "power_w", "n_in", "tau", "sigma_z"};

    std::map<std::string, double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string text = detail::trim(line.substr(eq + 1));
        if (!known.count(key))
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        if (values.count(key))
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
        values[key] = detail::parse_value(key, text);
    }

    const auto get = [&](const std::string& key) -> std::optional<double> {
        const auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        return it->second;
    };
    const auto require = [&](const std::string& key) -> double {
        const auto v = get(key);
        if (!v) throw std::invalid_argument("parameter file: missing required key '" + key + "'");
        return *v;
    };

    SystemParams p;

    const double omega_p = require("omega_p");
    const auto gamma_p = get("gamma_p");
    const auto q_factor = get("q_factor");
    if (gamma_p && q_factor)
        throw std::invalid_argument("parameter file: gamma_p and q_factor are exclusive");
    if (!gamma_p && !q_factor)
        throw std::invalid_argument("parameter file: need gamma_p or q_factor");
    const double v_cav = require("v_cav");
    const double n0 = require("n0");
    p.cavity = gamma_p ? CavitySpec::from_linewidth(omega_p, *gamma_p, v_cav, n0)
                       : CavitySpec::from_q(omega_p, *q_factor, v_cav, n0);

    p.exciton.omega_ex = require("omega_ex");
    p.exciton.gamma_ex = require("gamma_ex");
    p.exciton.gamma_rad = require("gamma_rad");
    if (const auto rabi = get("omega_rabi")) {
        p.exciton.omega_rabi = *rabi;
        p.exciton.rabi_supplied = true;
    } else {
        p.exciton.omega_rabi = vacuum_rabi(p.cavity, p.exciton.gamma_rad);
        p.exciton.rabi_supplied = false;
    }
    p.exciton.validate();

    const auto power = get("power_w");
    const auto n_in = get("n_in");
    if (power && n_in)
        throw std::invalid_argument("parameter file: power_w and n_in are exclusive");
    const double omega_probe = get("omega_probe").value_or(omega_p);
    const double tau = get("tau").value_or(1e-9);
    const double sigma_z = get("sigma_z").value_or(-1.0);
    p.probe = power ? ProbeSpec::from_power(omega_probe, *power, tau, sigma_z)
                    : ProbeSpec::from_flux(omega_probe, n_in.value_or(0.0), tau, sigma_z);
    return p;
}

inline SystemParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open parameter file '" + path + "'");
    return parse_params(in);
}

} // namespace faraday
