#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "faraday/feasibility.hpp"
#include "faraday/polarization.hpp"
#include "faraday/reflectance.hpp"
#include "faraday/specs.hpp"

namespace faraday {

// Splittable counter-style generator: every stream starts from a hashed
// (seed, stream) pair and advances a Weyl sequence through the finalizer, so
// per-trial streams are independent of each other and of evaluation order.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^
                       mix64(stream + 0xD1B54A32D192ED03ull))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // uniform in (0, 1]
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential(double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(uniform()) / rate;
    }

    // Box-Muller, second value cached
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = constants::two_pi * uniform();
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// One homodyne integration window. integrated_signal is the time-averaged
// signed signal flux plus shot noise; the decision thresholds it at zero
// with ties resolved toward up.
struct ReadoutTrial {
    Spin spin = Spin::up;             // spin at the start of the window
    double integrated_signal = 0.0;   // photon-flux-normalized quadrature
    Spin decision = Spin::up;
    std::vector<double> flip_times;   // strictly increasing, within [0, tau]
};

// The spin performs a symmetric telegraph walk with rate 1/spin_lifetime in
// each direction; the signal contributes +-n_ss while the spin is up/down.
inline ReadoutTrial simulate_readout_trial(double n_ss, double n_sql, double tau,
                                           double spin_lifetime, Spin initial, TrialRng& rng) {
    ReadoutTrial trial;
    trial.spin = initial;
    const double flip_rate = std::isinf(spin_lifetime) ? 0.0 : 1.0 / spin_lifetime;

    double signed_time = 0.0;
    double t = 0.0;
    double sign = initial == Spin::up ? 1.0 : -1.0;
    while (true) {
        const double next_flip = t + rng.exponential(flip_rate);
        const double segment_end = std::min(next_flip, tau);
        signed_time += sign * (segment_end - t);
        if (next_flip >= tau) break;
        trial.flip_times.push_back(next_flip);
        sign = -sign;
        t = next_flip;
    }

    trial.integrated_signal = n_ss * signed_time / tau + n_sql * rng.normal();
    trial.decision = trial.integrated_signal >= 0.0 ? Spin::up : Spin::down;
    return trial;
}

struct McSummary {
    long trials = 0;
    double fidelity = 0.0;
    double std_error = 0.0;   // binomial standard error
    double snr = 0.0;         // n_ss / n_sql
    double mean_flips = 0.0;
    long flipped_trials = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo spin-readout fidelity: fraction of trials whose threshold
// decision recovers the spin at the start of the window. Initial spins
// alternate so both hypotheses are sampled equally.
inline McSummary readout_fidelity_mc(double n_ss, double n_sql, double tau, double spin_lifetime,
                                     long trials, std::uint64_t seed) {
    if (!(tau > 0.0)) throw std::domain_error("readout_fidelity_mc: tau must be > 0");
    if (!(spin_lifetime > 0.0))
        throw std::domain_error("readout_fidelity_mc: spin_lifetime must be > 0");
    if (trials < 100) throw std::domain_error("readout_fidelity_mc: need at least 100 trials");

    long correct = 0;
    long flipped = 0;
    long total_flips = 0;
    for (long k = 0; k < trials; ++k) {
        TrialRng rng(seed, static_cast<std::uint64_t>(k));
        const Spin initial = (k % 2 == 0) ? Spin::up : Spin::down;
        const ReadoutTrial trial = simulate_readout_trial(n_ss, n_sql, tau, spin_lifetime, initial, rng);
        if (trial.decision == initial) ++correct;
        if (!trial.flip_times.empty()) ++flipped;
        total_flips += static_cast<long>(trial.flip_times.size());
    }

    McSummary s;
    s.trials = trials;
    s.fidelity = static_cast<double>(correct) / static_cast<double>(trials);
    s.std_error = std::sqrt(s.fidelity * (1.0 - s.fidelity) / static_cast<double>(trials));
    s.snr = n_sql > 0.0 ? n_ss / n_sql : std::numeric_limits<double>::infinity();
    s.mean_flips = static_cast<double>(total_flips) / static_cast<double>(trials);
    s.flipped_trials = flipped;
    s.seed = seed;
    return s;
}

// Full-system wrapper: signal and shot-noise fluxes derived from the exact
// occupied-channel reflectance at the probe frequency.
inline McSummary readout_fidelity_mc(const CavitySpec& cavity, const ExcitonSpec& exciton,
                                     const ProbeSpec& probe, double spin_lifetime, long trials,
                                     std::uint64_t seed) {
    const ComplexReflectance r = coupled_reflectance(probe.omega, cavity, exciton, -1.0);
    const ComplexReflectance r0 = cold_reflectance(probe.omega, cavity);
    const double d_theta = r.phase - r0.phase;
    const double n_ss =
        signal_flux(probe, d_theta, mean_reflectance_magnitude(r.magnitude, r0.magnitude));
    const double n_sql = sql_flux(probe);
    return readout_fidelity_mc(std::abs(n_ss), n_sql, probe.tau, spin_lifetime, trials, seed);
}

// Expected number of photons really absorbed during one integration window:
// the exact route from the reflection deficit and the dispersive route from
// the exciton occupation, plus their ratio.
struct RealExcitation {
    double general = 0.0;         // (1 - |r|^2) N_in tau
    double large_detuning = 0.0;  // gamma_ex <n_ex> tau
    double ratio = 1.0;
};

inline RealExcitation real_excitation_counter(const CavitySpec& cavity, const ExcitonSpec& exciton,
                                              const ProbeSpec& probe) {
    const ComplexReflectance r = coupled_reflectance(probe.omega, cavity, exciton, -1.0);
    RealExcitation e;
    const double absorb = std::max(0.0, 1.0 - r.magnitude * r.magnitude);
    e.general = absorb * probe.n_in * probe.tau;
    e.large_detuning = exciton.gamma_ex * exciton_occupation(probe, cavity, exciton).n_ex * probe.tau;
    e.ratio = (e.general == 0.0 && e.large_detuning == 0.0) ? 1.0 : e.general / e.large_detuning;
    return e;
}

} // namespace faraday
