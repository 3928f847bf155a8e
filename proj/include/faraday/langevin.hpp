#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "faraday/specs.hpp"

namespace faraday {

// Intracavity field and exciton dipole amplitude in the frame rotating at
// the probe frequency; |a|^2 is the intracavity photon number.
struct FieldState {
    std::complex<double> a{0.0, 0.0};
    std::complex<double> sigma{0.0, 0.0};
    double t = 0.0;
};

struct TrajectoryPoint {
    double t = 0.0;
    std::complex<double> a{0.0, 0.0};
    std::complex<double> sigma{0.0, 0.0};
    std::complex<double> a_out{0.0, 0.0};
};

struct LangevinOptions {
    double t_end = 0.0;
    double dt = 0.0;
    int sample_stride = 1;  // keep every n-th step in the returned trajectory
    std::complex<double> a0{0.0, 0.0};
    std::complex<double> sigma0{0.0, 0.0};
};

// Largest admissible step for the coupled field/dipole equations: every rate
// and rotating-frame detuning must be resolved by a factor of 100.
inline double langevin_max_dt(const CavitySpec& cavity, const ExcitonSpec& exciton) {
    const double delta = std::abs(exciton.omega_ex - cavity.omega_p);
    const double scale =
        std::max(std::max(cavity.gamma_p, exciton.gamma_ex), std::max(exciton.omega_rabi, delta));
    return 0.01 / scale;
}

inline double langevin_auto_dt(const CavitySpec& cavity, const ExcitonSpec& exciton,
                               double omega_probe) {
    const double scale = std::max(
        {cavity.gamma_p, exciton.gamma_ex, exciton.omega_rabi,
         std::abs(exciton.omega_ex - cavity.omega_p), std::abs(cavity.omega_p - omega_probe),
         std::abs(exciton.omega_ex - omega_probe)});
    return 0.01 / scale;
}

// Fixed-step RK4 integration of the linearized intracavity equations in the
// frame rotating at omega_probe, with the occupied channel (sigma_z = -1):
//
//   da/dt     = -(i (omega_p - omega_probe) + gamma_p/2) a - (Omega/2) sigma + sqrt(gamma_p) a_in
//   dsigma/dt = -(i (omega_ex - omega_probe) + gamma_ex/2) sigma + (Omega/2) a
//   a_out     = -a_in + sqrt(gamma_p) a
//
// The drive amplitude is held constant, so the discrete fixed point equals
// the analytic steady state; the returned trajectory samples a, sigma and
// the output field.
inline std::vector<TrajectoryPoint> integrate_langevin(const CavitySpec& cavity,
                                                       const ExcitonSpec& exciton,
                                                       std::complex<double> drive,
                                                       double omega_probe,
                                                       const LangevinOptions& opt) {
    cavity.validate();
    exciton.validate();
    if (!(opt.t_end > 0.0)) throw std::invalid_argument("integrate_langevin: t_end must be > 0");
    if (!(opt.dt > 0.0)) throw std::invalid_argument("integrate_langevin: dt must be > 0");
    if (opt.sample_stride < 1)
        throw std::invalid_argument("integrate_langevin: sample_stride must be >= 1");
    if (opt.dt > langevin_max_dt(cavity, exciton))
        throw std::domain_error("integrate_langevin: dt too large for the fastest rate; need dt <= " +
                                std::to_string(langevin_max_dt(cavity, exciton)));

    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> pole_a = -(i_unit * (cavity.omega_p - omega_probe) + 0.5 * cavity.gamma_p);
    const std::complex<double> pole_s = -(i_unit * (exciton.omega_ex - omega_probe) + 0.5 * exciton.gamma_ex);
    const double half_rabi = 0.5 * exciton.omega_rabi;
    const double root_gamma = std::sqrt(cavity.gamma_p);
    const std::complex<double> source = root_gamma * drive;

    const auto deriv_a = [&](std::complex<double> a, std::complex<double> s) {
        return pole_a * a - half_rabi * s + source;
    };
    const auto deriv_s = [&](std::complex<double> a, std::complex<double> s) {
        return pole_s * s + half_rabi * a;
    };

    const auto n_steps = static_cast<long long>(std::llround(opt.t_end / opt.dt));
    if (n_steps < 1) throw std::invalid_argument("integrate_langevin: t_end shorter than one step");

    std::vector<TrajectoryPoint> out;
    out.reserve(static_cast<std::size_t>(n_steps / opt.sample_stride) + 2);

    std::complex<double> a = opt.a0;
    std::complex<double> s = opt.sigma0;
    const auto record = [&](long long step) {
        out.push_back({step * opt.dt, a, s, -drive + root_gamma * a});
    };
    record(0);

    const double h = opt.dt;
    for (long long step = 1; step <= n_steps; ++step) {
        const std::complex<double> ka1 = deriv_a(a, s);
        const std::complex<double> ks1 = deriv_s(a, s);
        const std::complex<double> ka2 = deriv_a(a + 0.5 * h * ka1, s + 0.5 * h * ks1);
        const std::complex<double> ks2 = deriv_s(a + 0.5 * h * ka1, s + 0.5 * h * ks1);
        const std::complex<double> ka3 = deriv_a(a + 0.5 * h * ka2, s + 0.5 * h * ks2);
        const std::complex<double> ks3 = deriv_s(a + 0.5 * h * ka2, s + 0.5 * h * ks2);
        const std::complex<double> ka4 = deriv_a(a + h * ka3, s + h * ks3);
        const std::complex<double> ks4 = deriv_s(a + h * ka3, s + h * ks3);
        a += (h / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        s += (h / 6.0) * (ks1 + 2.0 * ks2 + 2.0 * ks3 + ks4);
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(s.real()) ||
            !std::isfinite(s.imag()))
            throw std::runtime_error("integrate_langevin: non-finite state at step " +
                                     std::to_string(step));
        if (step % opt.sample_stride == 0 || step == n_steps) record(step);
    }
    return out;
}

// Steady-state reflection a_out / a_in obtained by integrating past the
// transients; the independent time-domain route to the frequency response.
inline std::complex<double> langevin_steady_reflection(const CavitySpec& cavity,
                                                       const ExcitonSpec& exciton,
                                                       double omega_probe, double settle_time = 0.0,
                                                       double dt = 0.0) {
    if (settle_time <= 0.0) settle_time = std::max(40.0 / cavity.gamma_p, 1.0 / exciton.gamma_ex);
    if (dt <= 0.0) dt = langevin_auto_dt(cavity, exciton, omega_probe);
    LangevinOptions opt;
    opt.t_end = settle_time;
    opt.dt = dt;
    opt.sample_stride = std::max(1LL, static_cast<long long>(std::llround(settle_time / dt)) / 4);
    const std::complex<double> drive(1.0, 0.0);
    const auto traj = integrate_langevin(cavity, exciton, drive, omega_probe, opt);
    return traj.back().a_out / drive;
}

} // namespace faraday
