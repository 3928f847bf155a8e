#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "faraday/polarization.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/specs.hpp"

namespace faraday {

// Bound-normalized constraint ratio: > 1 passes, cells within 1e-9 of the
// bound are flagged as boundary cells.
struct Margin {
    double value = 0.0;
    bool pass = false;
    bool boundary = false;
};

inline Margin make_margin(double value) {
    Margin m;
    m.value = value;
    m.pass = value > 1.0;
    m.boundary = std::abs(value - 1.0) <= 1e-9;
    return m;
}

// Homodyne signal flux produced by the spin-induced rotation,
//   N_ss = N_in sin(d_theta/2) rbar.
inline double signal_flux(const ProbeSpec& probe, double d_theta, double r_bar) {
    probe.validate();
    return probe.n_in * std::sin(0.5 * d_theta) * r_bar;
}

// Shot-noise floor of the balanced homodyne detector (standard quantum
// limit), N_sql = sqrt(N_in / tau).
inline double sql_flux(const ProbeSpec& probe) {
    probe.validate();
    return std::sqrt(probe.n_in / probe.tau);
}

// (A) signal above shot noise: N_in tau (|r| sin(d_theta/2))^2 > 1.
inline Margin condition_a(const ProbeSpec& probe, double r_mag, double d_theta) {
    probe.validate();
    if (d_theta == 0.0 || r_mag == 0.0) return make_margin(0.0);
    const double s = r_mag * std::sin(0.5 * d_theta);
    return make_margin(probe.n_in * probe.tau * s * s);
}

// (B) negligible real excitation: (1 - |r|^2) N_in tau < 1. A unimodular
// reflection absorbs nothing and passes unconditionally.
inline Margin condition_b(const ProbeSpec& probe, double r_mag) {
    probe.validate();
    if (r_mag >= 1.0) {
        Margin m;
        m.value = std::numeric_limits<double>::infinity();
        m.pass = true;
        return m;
    }
    return make_margin(1.0 / ((1.0 - r_mag * r_mag) * probe.n_in * probe.tau));
}

// (C) integration longer than the cavity lifetime: tau gamma_p > 1.
inline Margin condition_c(const ProbeSpec& probe, const CavitySpec& cavity) {
    probe.validate();
    cavity.validate();
    return make_margin(probe.tau * cavity.gamma_p);
}

// (D) spin lifetime longer than the integration time.
inline Margin condition_d(const ProbeSpec& probe, double spin_lifetime) {
    probe.validate();
    if (!(spin_lifetime > 0.0))
        throw std::domain_error("condition_d: spin_lifetime must be > 0");
    return make_margin(spin_lifetime / probe.tau);
}

// Steady-state exciton occupation in the dispersive regime,
//   <n_ex> = Omega^2 Q N_in / (Delta^2 omega_p),
// reported together with the intracavity photon number
//   <a+ a>  = 4 Q N_in / omega_p
// so that <n_ex> = (Omega^2 / 4 Delta^2) <a+ a> holds by construction.
struct ExcitonOccupation {
    double n_ex = 0.0;
    double intracavity_photons = 0.0;
    bool dispersive_valid = false;
};

inline ExcitonOccupation exciton_occupation(const ProbeSpec& probe, const CavitySpec& cavity,
                                            const ExcitonSpec& exciton) {
    probe.validate();
    cavity.validate();
    exciton.validate();
    const double delta = exciton.omega_ex - cavity.omega_p;
    if (!(delta > 0.0))
        throw std::domain_error("exciton_occupation: requires omega_ex > omega_p");
    ExcitonOccupation occ;
    occ.intracavity_photons = 4.0 * cavity.q_factor() * probe.n_in / cavity.omega_p;
    occ.n_ex = 0.25 * exciton.omega_rabi * exciton.omega_rabi / (delta * delta) *
               occ.intracavity_photons;
    occ.dispersive_valid = delta > 10.0 * std::max(0.5 * exciton.gamma_ex, exciton.omega_rabi);
    return occ;
}

// Integration-time window in the dispersive regime at fixed <n_ex>:
//   tau > (4 omega_p / Omega^2) / (<n_ex> Q)   signal above shot noise
//   tau < 1 / (gamma_ex <n_ex>)                real excitation stays below one
//   tau > Q / omega_p                          longer than the cavity lifetime
struct TauWindow {
    double tau_min_a = 0.0;
    double tau_max_b = 0.0;
    double tau_min_c = 0.0;

    double lower() const { return std::max(tau_min_a, tau_min_c); }
    bool empty() const { return !(lower() < tau_max_b); }
    bool contains(double tau) const { return tau > lower() && tau < tau_max_b; }
};

inline TauWindow tau_bounds_large_detuning(const CavitySpec& cavity, const ExcitonSpec& exciton,
                                           double n_ex) {
    cavity.validate();
    exciton.validate();
    if (!(n_ex > 0.0 && n_ex < 1.0))
        throw std::domain_error("tau_bounds_large_detuning: n_ex must lie in (0, 1)");
    const double q = cavity.q_factor();
    const double rabi2 = exciton.omega_rabi * exciton.omega_rabi;
    TauWindow w;
    w.tau_min_a = 4.0 * cavity.omega_p / rabi2 / (n_ex * q);
    w.tau_max_b = 1.0 / (exciton.gamma_ex * n_ex);
    w.tau_min_c = q / cavity.omega_p;
    return w;
}

// Cavity linewidth above which the shot-noise and real-excitation bounds can
// no longer be satisfied together: gamma_p^crit = Omega^2 / (4 gamma_ex).
inline double critical_linewidth(const ExcitonSpec& exciton) {
    exciton.validate();
    return 0.25 * exciton.omega_rabi * exciton.omega_rabi / exciton.gamma_ex;
}

// Single-point verdict over conditions (A)-(D), with margins, the derived
// exciton occupation, and the identifier of the tightest constraint.
struct FeasibilityReport {
    Margin cond_a, cond_b, cond_c, cond_d;
    double n_ex = 0.0;
    double intracavity_photons = 0.0;
    double d_theta = 0.0;          // exact phase difference at the probe frequency
    double r_mag = 0.0;            // coupled reflectance magnitude at the probe frequency
    double signal = 0.0;           // N_ss (photons/s)
    double sql = 0.0;              // N_sql (photons/s)
    double spin_lifetime = 0.0;    // lifetime used by (D) (s)
    std::string binding;           // "A" | "B" | "C" | "D"
    bool feasible = false;         // all of (A)-(D)
    bool feasible_without_d = false;
    bool n_ex_warning = false;     // derived occupation above 0.1
    bool dispersive_valid = false;
};

// Conditions (A) and (B) are evaluated from the exact reflectance of the
// occupied channel (sigma_z = -1) at the probe frequency; the phase reference
// is the empty channel at the same frequency.
inline FeasibilityReport evaluate_feasibility(const CavitySpec& cavity, const ExcitonSpec& exciton,
                                              const ProbeSpec& probe,
                                              double spin_lifetime = 100e-9) {
    const ComplexReflectance r = coupled_reflectance(probe.omega, cavity, exciton, -1.0);
    const ComplexReflectance r0 = cold_reflectance(probe.omega, cavity);

    FeasibilityReport rep;
    rep.r_mag = r.magnitude;
    rep.d_theta = r.phase - r0.phase;
    rep.spin_lifetime = spin_lifetime;
    rep.cond_a = condition_a(probe, r.magnitude, rep.d_theta);
    rep.cond_b = condition_b(probe, r.magnitude);
    rep.cond_c = condition_c(probe, cavity);
    rep.cond_d = condition_d(probe, spin_lifetime);
    rep.signal = signal_flux(probe, rep.d_theta, mean_reflectance_magnitude(r.magnitude, r0.magnitude));
    rep.sql = sql_flux(probe);

    const ExcitonOccupation occ = exciton_occupation(probe, cavity, exciton);
    rep.n_ex = occ.n_ex;
    rep.intracavity_photons = occ.intracavity_photons;
    rep.n_ex_warning = occ.n_ex > 0.1;
    rep.dispersive_valid = occ.dispersive_valid;

    rep.feasible_without_d = rep.cond_a.pass && rep.cond_b.pass && rep.cond_c.pass;
    rep.feasible = rep.feasible_without_d && rep.cond_d.pass;

    rep.binding = "A";
    double tightest = rep.cond_a.value;
    const auto consider = [&](const Margin& m, const char* id) {
        if (m.value < tightest) {
            tightest = m.value;
            rep.binding = id;
        }
    };
    consider(rep.cond_b, "B");
    consider(rep.cond_c, "C");
    consider(rep.cond_d, "D");
    return rep;
}

} // namespace faraday
