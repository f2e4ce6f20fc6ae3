#pragma once

#include <numbers>

namespace tlsom::units {

// CODATA 2018 exact values.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J / K
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double debye = 3.33564095198152e-30;  // C m
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angular frequency (rad/s) of an ordinary frequency given in Hz.
constexpr double angular(double hertz) { return two_pi * hertz; }
constexpr double hertz(double angular_frequency) { return angular_frequency / two_pi; }

}  // namespace tlsom::units
