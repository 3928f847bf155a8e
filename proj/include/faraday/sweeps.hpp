#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "faraday/feasibility.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/specs.hpp"

namespace faraday {

// One sweep axis. Parsed from "name:min:max:count:lin|log".
struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log_scale = false;

    void validate() const {
        if (name.empty()) throw std::invalid_argument("AxisSpec: empty axis name");
        if (count < 2) throw std::invalid_argument("AxisSpec '" + name + "': count must be >= 2");
        if (!(min < max)) throw std::invalid_argument("AxisSpec '" + name + "': min must be < max");
        if (log_scale && !(min > 0.0))
            throw std::invalid_argument("AxisSpec '" + name + "': log axis needs min > 0");
    }

    std::vector<double> points() const {
        validate();
        std::vector<double> pts(static_cast<std::size_t>(count));
        if (log_scale) {
            const double la = std::log(min), lb = std::log(max);
            for (int k = 0; k < count; ++k)
                pts[static_cast<std::size_t>(k)] = std::exp(la + (lb - la) * k / (count - 1));
        } else {
            for (int k = 0; k < count; ++k)
                pts[static_cast<std::size_t>(k)] = min + (max - min) * k / (count - 1);
        }
        pts.front() = min;
        pts.back() = max;
        return pts;
    }

    static AxisSpec parse(const std::string& text) {
        AxisSpec ax;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t colon = text.find(':', start);
            parts.push_back(text.substr(start, colon == std::string::npos ? colon : colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 5)
            throw std::invalid_argument("grid spec '" + text + "': expected name:min:max:count:lin|log");
        ax.name = parts[0];
        try {
            ax.min = std::stod(parts[1]);
            ax.max = std::stod(parts[2]);
            ax.count = std::stoi(parts[3]);
        } catch (const std::exception&) {
            throw std::invalid_argument("grid spec '" + text + "': bad numeric field");
        }
        if (parts[4] == "log")
            ax.log_scale = true;
        else if (parts[4] == "lin")
            ax.log_scale = false;
        else
            throw std::invalid_argument("grid spec '" + text + "': scale must be lin or log");
        ax.validate();
        return ax;
    }
};

// Margin-boundary polyline of one condition: the curve along which the
// corresponding margin equals one.
struct ConditionCurve {
    std::string condition;
    std::vector<std::pair<double, double>> points;
};

// Dense 2-D feasibility mask plus the per-condition bound curves. Cells are
// stored x-major (outer loop over the first axis), so identical inputs always
// serialize identically.
struct RegionGrid {
    AxisSpec axis_x, axis_y;
    std::vector<std::string> margin_names;  // per-cell margin columns
    std::vector<std::string> flag_names;    // per-cell pass-flag columns

    struct Cell {
        double x = 0.0, y = 0.0;
        std::vector<double> margins;
        std::vector<bool> flags;
        bool feasible = false;
    };
    std::vector<Cell> cells;
    std::vector<ConditionCurve> boundaries;
    std::vector<std::pair<std::string, double>> metadata;

    bool any_feasible() const {
        for (const auto& c : cells)
            if (c.feasible) return true;
        return false;
    }
};

// Feasibility over (normalized detuning, measurement photon number) at fixed
// probe power. The x axis is Delta / (gamma_ex/2); per column the exciton is
// moved to omega_ex = omega_p + Delta and the occupied-channel reflectance is
// evaluated exactly at the probe parked on the cavity resonance. The y axis
// is N_in tau. Bound curves:
//   A: N_in tau = (|r| sin(d_theta/2))^-2   (rise with detuning, signal side)
//   B: N_in tau = (1 - |r|^2)^-1            (absorption side)
//   C: N_in tau = N_in / gamma_p            (horizontal, cavity lifetime)
inline RegionGrid sweep_detuning(const CavitySpec& cavity, const ExcitonSpec& exciton_template,
                                 double probe_power_w, double tau, const AxisSpec& detuning_axis,
                                 const AxisSpec& nphoton_axis) {
    cavity.validate();
    exciton_template.validate();
    if (!(probe_power_w > 0.0))
        throw std::invalid_argument("sweep_detuning: probe power must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("sweep_detuning: tau must be > 0");

    const double n_in = probe_power_w / (constants::hbar * cavity.omega_p);
    const double gamma_half = 0.5 * exciton_template.gamma_ex;

    RegionGrid grid;
    grid.axis_x = detuning_axis;
    grid.axis_y = nphoton_axis;
    grid.margin_names = {"margin_a", "margin_b", "margin_c"};
    grid.flag_names = {"pass_a", "pass_b", "pass_c"};
    grid.metadata = {{"n_in", n_in}, {"tau", tau}, {"gamma_p", cavity.gamma_p}};

    const std::vector<double> xs = detuning_axis.points();
    const std::vector<double> ys = nphoton_axis.points();
    grid.cells.reserve(xs.size() * ys.size());

    ConditionCurve curve_a{"A", {}}, curve_b{"B", {}}, curve_c{"C", {}};
    const double bound_c = n_in / cavity.gamma_p;

    for (const double x : xs) {
        const double delta = x * gamma_half;
        const std::complex<double> r = coupled_reflectance_value(
            0.0, cavity.gamma_p, -delta, exciton_template.gamma_ex, exciton_template.omega_rabi, -1.0);
        const double r_mag = std::abs(r);
        const double d_theta = std::arg(r);  // empty channel has zero phase on resonance

        const double signal_factor = r_mag * std::sin(0.5 * std::abs(d_theta));
        const double absorb = 1.0 - r_mag * r_mag;
        const double bound_a = signal_factor > 0.0 ? 1.0 / (signal_factor * signal_factor)
                                                   : std::numeric_limits<double>::infinity();
        const double bound_b = absorb > 0.0 ? 1.0 / absorb : std::numeric_limits<double>::infinity();
        curve_a.points.emplace_back(x, bound_a);
        curve_b.points.emplace_back(x, bound_b);
        curve_c.points.emplace_back(x, bound_c);

        for (const double y : ys) {
            RegionGrid::Cell cell;
            cell.x = x;
            cell.y = y;
            const Margin ma = make_margin(y / bound_a);
            const Margin mb = make_margin(bound_b / y);
            const Margin mc = make_margin(y / bound_c);
            cell.margins = {ma.value, mb.value, mc.value};
            cell.flags = {ma.pass, mb.pass, mc.pass};
            cell.feasible = ma.pass && mb.pass && mc.pass;
            grid.cells.push_back(std::move(cell));
        }
    }
    grid.boundaries = {std::move(curve_a), std::move(curve_b), std::move(curve_c)};
    return grid;
}

// Feasibility over (cavity Q, integration time) in the dispersive regime,
// one triangle per requested exciton occupation, plus the union mask and the
// critical-Q line Q_crit = omega_p / gamma_p^crit that its apex traces.
inline RegionGrid sweep_tau_q(const CavitySpec& cavity_template, const ExcitonSpec& exciton,
                              const std::vector<double>& n_ex_list, const AxisSpec& q_axis,
                              const AxisSpec& tau_axis) {
    cavity_template.validate();
    exciton.validate();
    if (n_ex_list.empty()) throw std::invalid_argument("sweep_tau_q: empty n_ex list");
    for (const double n : n_ex_list)
        if (!(n > 0.0 && n < 1.0))
            throw std::invalid_argument("sweep_tau_q: n_ex values must lie in (0, 1)");

    const double omega_p = cavity_template.omega_p;
    const double rabi2 = exciton.omega_rabi * exciton.omega_rabi;
    const double q_crit = omega_p / critical_linewidth(exciton);

    const auto occupation_tag = [](double n) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "[n_ex=%g]", n);
        return std::string(buf);
    };

    RegionGrid grid;
    grid.axis_x = q_axis;
    grid.axis_y = tau_axis;
    grid.metadata = {{"omega_p", omega_p}, {"q_critical", q_crit}};
    for (const double n : n_ex_list) {
        const std::string tag = occupation_tag(n);
        grid.margin_names.push_back("margin_a" + tag);
        grid.margin_names.push_back("margin_b" + tag);
        grid.margin_names.push_back("margin_c" + tag);
        grid.flag_names.push_back("feasible" + tag);
    }

    const std::vector<double> qs = q_axis.points();
    const std::vector<double> taus = tau_axis.points();
    grid.cells.reserve(qs.size() * taus.size());

    for (const double q : qs) {
        for (const double tau : taus) {
            RegionGrid::Cell cell;
            cell.x = q;
            cell.y = tau;
            bool any = false;
            for (const double n : n_ex_list) {
                const double tau_a = 4.0 * omega_p / rabi2 / (n * q);
                const double tau_b = 1.0 / (exciton.gamma_ex * n);
                const double tau_c = q / omega_p;
                const Margin ma = make_margin(tau / tau_a);
                const Margin mb = make_margin(tau_b / tau);
                const Margin mc = make_margin(tau / tau_c);
                const bool ok = ma.pass && mb.pass && mc.pass;
                cell.margins.insert(cell.margins.end(), {ma.value, mb.value, mc.value});
                cell.flags.push_back(ok);
                any = any || ok;
            }
            cell.feasible = any;
            grid.cells.push_back(std::move(cell));
        }
    }

    for (const double n : n_ex_list) {
        const std::string tag = occupation_tag(n);
        ConditionCurve hyp{"A" + tag, {}}, hor{"B" + tag, {}};
        for (const double q : qs) {
            hyp.points.emplace_back(q, 4.0 * omega_p / rabi2 / (n * q));
            hor.points.emplace_back(q, 1.0 / (exciton.gamma_ex * n));
        }
        grid.boundaries.push_back(std::move(hyp));
        grid.boundaries.push_back(std::move(hor));
    }
    ConditionCurve rising{"C", {}};
    for (const double q : qs) rising.points.emplace_back(q, q / omega_p);
    grid.boundaries.push_back(std::move(rising));
    grid.boundaries.push_back(
        ConditionCurve{"critical_q", {{q_crit, tau_axis.min}, {q_crit, tau_axis.max}}});
    return grid;
}

} // namespace faraday
