#pragma once

#include <cmath>
#include <complex>

#include "faraday/reflectance.hpp"

namespace faraday {

// Transverse polarization state in the Cartesian (x, y) basis.
struct JonesVector {
    std::complex<double> x{0.0, 0.0};
    std::complex<double> y{0.0, 0.0};

    double norm2() const { return std::norm(x) + std::norm(y); }

    static JonesVector x_polarized(std::complex<double> amplitude = 1.0) { return {amplitude, 0.0}; }
};

enum class Spin { up, down };

// Reflection off a circularly birefringent mirror: decompose into the
// circular basis e_R = (1, i)/sqrt(2), e_L = (1, -i)/sqrt(2), scale each
// component by its reflection coefficient, return Cartesian components.
// For x-polarized input this is ( (r_R + r_L)/2, i (r_R - r_L)/2 ).
inline JonesVector reflected_jones(const JonesVector& in, const ComplexReflectance& r_right,
                                   const ComplexReflectance& r_left) {
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> c_right = 0.5 * (in.x - i_unit * in.y);
    const std::complex<double> c_left = 0.5 * (in.x + i_unit * in.y);
    return {r_right.value * c_right + r_left.value * c_left,
            i_unit * (r_right.value * c_right - r_left.value * c_left)};
}

// y-amplitude of the reflected probe for an x-polarized input when one
// circular channel sees the spin-coupled response r and the other the empty
// response r0:  A_y = +(i/2)(r - r0) for up spin, the opposite sign for down.
// Up spin routes the coupled response through the right-circular channel in
// the basis convention above.
inline std::complex<double> signal_amplitude_exact(const ComplexReflectance& r,
                                                   const ComplexReflectance& r0, Spin spin) {
    const std::complex<double> half_i(0.0, 0.5);
    const std::complex<double> a_y = half_i * (r.value - r0.value);
    return spin == Spin::up ? a_y : -a_y;
}

// First order in the phase difference: A_y = +-((theta - theta0)/2) rbar
// e^{i thetabar}. Useful only for small rotations; the flag reports whether
// |theta - theta0| stayed inside the first-order regime.
struct FirstOrderSignal {
    std::complex<double> value{0.0, 0.0};
    bool within_first_order = true;
};

inline FirstOrderSignal signal_amplitude_first_order(double r_bar, double theta, double theta0,
                                                     Spin spin) {
    const double d_theta = theta - theta0;
    const double theta_bar = 0.5 * (theta + theta0);
    FirstOrderSignal s;
    s.value = 0.5 * d_theta * r_bar * std::exp(std::complex<double>(0.0, theta_bar));
    if (spin == Spin::down) s.value = -s.value;
    s.within_first_order = std::abs(d_theta) < 0.3;
    return s;
}

// Mean reflectance magnitude entering the homodyne signal; the empty channel
// of a lossless single-sided cavity has unit magnitude.
inline double mean_reflectance_magnitude(double r_mag, double r0_mag = 1.0) {
    return 0.5 * (r_mag + r0_mag);
}

} // namespace faraday
