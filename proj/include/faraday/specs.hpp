#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "faraday/constants.hpp"

namespace faraday {

// Single-sided optical microcavity. All frequencies and rates are angular
// (rad/s); gamma_p is the energy decay rate of the mode.
struct CavitySpec {
    double omega_p = 0.0;   // cavity resonance (rad/s)
    double gamma_p = 0.0;   // photon decay rate (rad/s)
    double v_cav = 0.0;     // mode volume (m^3)
    double n0 = 1.0;        // refractive index of the cavity medium

    double q_factor() const { return omega_p / gamma_p; }

    void validate() const {
        if (!(omega_p > 0.0)) throw std::invalid_argument("CavitySpec: omega_p must be > 0");
        if (!(gamma_p > 0.0)) throw std::invalid_argument("CavitySpec: gamma_p must be > 0");
        if (!(v_cav > 0.0)) throw std::invalid_argument("CavitySpec: v_cav must be > 0");
        if (!(n0 >= 1.0)) throw std::invalid_argument("CavitySpec: n0 must be >= 1");
    }

    static CavitySpec from_linewidth(double omega_p, double gamma_p, double v_cav, double n0) {
        CavitySpec c{omega_p, gamma_p, v_cav, n0};
        c.validate();
        return c;
    }

    static CavitySpec from_q(double omega_p, double q, double v_cav, double n0) {
        if (!(q > 0.0)) throw std::invalid_argument("CavitySpec: Q must be > 0");
        return from_linewidth(omega_p, omega_p / q, v_cav, n0);
    }
};

// Quantum-dot exciton coupled to the cavity mode. omega_rabi is the vacuum
// Rabi frequency; it may be supplied directly or derived from gamma_rad and
// the cavity geometry (see vacuum_rabi in reflectance.hpp). rabi_supplied
// records which. A zero omega_rabi describes a decoupled (empty-dot) run.
struct ExcitonSpec {
    double omega_ex = 0.0;    // exciton transition frequency (rad/s)
    double gamma_ex = 0.0;    // dipole dephasing rate (rad/s)
    double gamma_rad = 0.0;   // radiative recombination rate (rad/s)
    double omega_rabi = 0.0;  // vacuum Rabi frequency (rad/s)
    bool rabi_supplied = false;

    void validate() const {
        if (!(omega_ex > 0.0)) throw std::invalid_argument("ExcitonSpec: omega_ex must be > 0");
        if (!(gamma_ex > 0.0)) throw std::invalid_argument("ExcitonSpec: gamma_ex must be > 0");
        if (!(gamma_rad > 0.0)) throw std::invalid_argument("ExcitonSpec: gamma_rad must be > 0");
        if (!(omega_rabi >= 0.0)) throw std::invalid_argument("ExcitonSpec: omega_rabi must be >= 0");
    }
};

// Probe drive and measurement settings. sigma_z is the population inversion
// of the addressed transition, a fixed c-number in [-1, 0]; -1 is the
// occupied-spin channel that maximizes the Faraday response.
struct ProbeSpec {
    double omega = 0.0;     // probe frequency (rad/s)
    double n_in = 0.0;      // incident photon flux (photons/s)
    double tau = 0.0;       // integration time (s)
    double sigma_z = -1.0;  // population inversion, in [-1, 0]

    double power() const { return constants::hbar * omega * n_in; }

    void validate() const {
        if (!(omega > 0.0)) throw std::invalid_argument("ProbeSpec: omega must be > 0");
        if (!(n_in >= 0.0)) throw std::invalid_argument("ProbeSpec: n_in must be >= 0");
        if (!(tau > 0.0)) throw std::invalid_argument("ProbeSpec: tau must be > 0");
        if (!(sigma_z >= -1.0 && sigma_z <= 0.0))
            throw std::invalid_argument("ProbeSpec: sigma_z must lie in [-1, 0]");
    }

    static ProbeSpec from_flux(double omega, double n_in, double tau, double sigma_z = -1.0) {
        ProbeSpec p{omega, n_in, tau, sigma_z};
        p.validate();
        return p;
    }

    static ProbeSpec from_power(double omega, double power_w, double tau, double sigma_z = -1.0) {
        if (!(omega > 0.0)) throw std::invalid_argument("ProbeSpec: omega must be > 0");
        if (!(power_w >= 0.0)) throw std::invalid_argument("ProbeSpec: power must be >= 0");
        return from_flux(omega, power_w / (constants::hbar * omega), tau, sigma_z);
    }
};

// Bundle used by the file loader and the CLI front end.
struct SystemParams {
    CavitySpec cavity;
    ExcitonSpec exciton;
    ProbeSpec probe;
};

} // namespace faraday
