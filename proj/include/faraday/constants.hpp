#pragma once

#include <numbers>

namespace faraday::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double hbar = 1.054571817e-34;           // J s

} // namespace faraday::constants
