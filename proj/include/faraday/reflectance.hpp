#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "faraday/constants.hpp"
#include "faraday/specs.hpp"

namespace faraday {

// Amplitude reflection coefficient of one circular polarization, with its
// magnitude and principal-value phase in (-pi, pi] kept alongside.
struct ComplexReflectance {
    std::complex<double> value{0.0, 0.0};
    double magnitude = 0.0;
    double phase = 0.0;

    ComplexReflectance() = default;
    explicit ComplexReflectance(std::complex<double> v)
        : value(v), magnitude(std::abs(v)), phase(std::arg(v)) {
        if (phase <= -constants::pi) phase += constants::two_pi;
    }
};

// All reflectances are evaluated in a frame shifted by omega_p: the caller
// supplies detunings, never absolute 1e15-scale frequencies, so no large
// cancellations occur inside the formulas.

// Empty-cavity reflectance of a lossless single-sided cavity,
//   r0 = -(d - i gp/2) / (d + i gp/2),   d = omega - omega_p.
// Unimodular for every detuning; +1 on resonance, -> -1 far off resonance.
inline std::complex<double> cold_reflectance_value(double detuning, double gamma_p) {
    const std::complex<double> num(detuning, -0.5 * gamma_p);
    const std::complex<double> den(detuning, +0.5 * gamma_p);
    return -num / den;
}

inline ComplexReflectance cold_reflectance(double omega, const CavitySpec& cavity) {
    cavity.validate();
    return ComplexReflectance(cold_reflectance_value(omega - cavity.omega_p, cavity.gamma_p));
}

// Reflectance of the cavity dressed by the exciton transition, for population
// inversion sigma_z in [-1, 0]:
//
//   r = - [ (d_c - i gp/2)(d_x + i gex/2) + (Omega^2 sigma_z)/4 ]
//       / [ (d_c + i gp/2)(d_x + i gex/2) + (Omega^2 sigma_z)/4 ]
//
// with d_c = omega - omega_p and d_x = omega - omega_ex. This is the
// steady-state transfer function of the coupled Langevin equations; the
// coupling term carries sigma_z <= 0, which keeps |r| <= 1 for any passive
// parameter set and places the dressed resonance below omega_p for a
// blue-detuned exciton.
inline std::complex<double> coupled_reflectance_value(double detuning_cavity, double gamma_p,
                                                      double detuning_exciton, double gamma_ex,
                                                      double omega_rabi, double sigma_z) {
    const double coupling = 0.25 * omega_rabi * omega_rabi * sigma_z;
    if (coupling == 0.0) return cold_reflectance_value(detuning_cavity, gamma_p);

    const std::complex<double> exciton(detuning_exciton, 0.5 * gamma_ex);
    const std::complex<double> num = std::complex<double>(detuning_cavity, -0.5 * gamma_p) * exciton + coupling;
    const std::complex<double> den = std::complex<double>(detuning_cavity, +0.5 * gamma_p) * exciton + coupling;
    if (std::abs(den) < 1e-300)
        throw std::domain_error("coupled_reflectance: singular denominator");
    return -num / den;
}

inline ComplexReflectance coupled_reflectance(double omega, const CavitySpec& cavity,
                                              const ExcitonSpec& exciton, double sigma_z) {
    cavity.validate();
    exciton.validate();
    if (!(sigma_z >= -1.0 && sigma_z <= 0.0))
        throw std::invalid_argument("coupled_reflectance: sigma_z must lie in [-1, 0]");
    return ComplexReflectance(coupled_reflectance_value(omega - cavity.omega_p, cavity.gamma_p,
                                                        omega - exciton.omega_ex, exciton.gamma_ex,
                                                        exciton.omega_rabi, sigma_z));
}

// Dressed-cavity parameters: the occupied-channel reflectance is an empty
// cavity with a frequency-dependent pulled resonance and asymmetric
// linewidths,
//   r = -(omega - omega_p_eff - i gamma_minus/2) / (omega - omega_p_eff + i gamma_plus/2),
//   omega_p_eff = omega_p + L(omega) (omega - omega_ex),
//   gamma_pm    = gamma_p +- L(omega) gamma_ex,
//   L(omega)    = (Omega^2/4) / ((omega - omega_ex)^2 + (gamma_ex/2)^2).
struct EffectiveCavityParams {
    double omega_p_eff = 0.0;  // pulled resonance (rad/s)
    double gamma_minus = 0.0;  // numerator linewidth (rad/s)
    double gamma_plus = 0.0;   // denominator linewidth (rad/s)
};

inline EffectiveCavityParams effective_cavity_params(double omega, const CavitySpec& cavity,
                                                     const ExcitonSpec& exciton) {
    cavity.validate();
    exciton.validate();
    const double dx = omega - exciton.omega_ex;
    const double hw = 0.5 * exciton.gamma_ex;
    const double lorentz = 0.25 * exciton.omega_rabi * exciton.omega_rabi / (dx * dx + hw * hw);
    return EffectiveCavityParams{cavity.omega_p + lorentz * dx,
                                 cavity.gamma_p - lorentz * exciton.gamma_ex,
                                 cavity.gamma_p + lorentz * exciton.gamma_ex};
}

inline ComplexReflectance reflectance_from_effective(double omega, const CavitySpec& cavity,
                                                     const EffectiveCavityParams& eff) {
    const double d = (omega - cavity.omega_p) - (eff.omega_p_eff - cavity.omega_p);
    const std::complex<double> num(d, -0.5 * eff.gamma_minus);
    const std::complex<double> den(d, +0.5 * eff.gamma_plus);
    return ComplexReflectance(-num / den);
}

// Vacuum Rabi frequency from the radiative recombination rate and the cavity
// geometry:  Omega = sqrt( 2 pi c^3 gamma_rad / (n0^3 V_cav omega_p^2) ).
inline double vacuum_rabi(const CavitySpec& cavity, double gamma_rad) {
    cavity.validate();
    if (!(gamma_rad > 0.0)) throw std::domain_error("vacuum_rabi: gamma_rad must be > 0");
    const double c3 = constants::speed_of_light * constants::speed_of_light * constants::speed_of_light;
    const double n3 = cavity.n0 * cavity.n0 * cavity.n0;
    return std::sqrt(constants::two_pi * c3 * gamma_rad /
                     (n3 * cavity.v_cav * cavity.omega_p * cavity.omega_p));
}

// Dispersive Faraday phase shift between the coupled and empty channels at
// the cavity resonance,  d_theta = Omega^2 Q / (Delta omega_p), valid deep in
// the dispersive regime Delta = omega_ex - omega_p >> gamma_ex/2, Omega.
struct PhaseShift {
    double d_theta = 0.0;
    bool dispersive_valid = false;  // Delta > 10 max(gamma_ex/2, Omega)
};

inline PhaseShift faraday_phase_shift(const CavitySpec& cavity, const ExcitonSpec& exciton) {
    cavity.validate();
    exciton.validate();
    const double delta = exciton.omega_ex - cavity.omega_p;
    if (!(delta > 0.0))
        throw std::domain_error("faraday_phase_shift: requires omega_ex > omega_p");
    PhaseShift s;
    s.d_theta = exciton.omega_rabi * exciton.omega_rabi * cavity.q_factor() / (delta * cavity.omega_p);
    s.dispersive_valid = delta > 10.0 * std::max(0.5 * exciton.gamma_ex, exciton.omega_rabi);
    return s;
}

// Continuous phase along a sweep: removes the 2 pi jumps of the principal
// value, keeping consecutive differences within (-pi, pi].
inline std::vector<double> unwrap_phases(std::span<const double> wrapped) {
    std::vector<double> out;
    out.reserve(wrapped.size());
    if (wrapped.empty()) return out;
    out.push_back(wrapped[0]);
    for (std::size_t k = 1; k < wrapped.size(); ++k) {
        double d = wrapped[k] - wrapped[k - 1];
        d -= constants::two_pi * std::round(d / constants::two_pi);
        out.push_back(out.back() + d);
    }
    return out;
}

} // namespace faraday
