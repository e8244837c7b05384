#pragma once

#include <complex>
#include <numbers>

namespace nric {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kMu0 = 1.25663706212e-6;    // H/m
inline constexpr double kEps0 = 8.8541878128e-12;   // F/m

// Conversion denominators at or below this magnitude are treated as singular.
inline constexpr double kDegenerateThreshold = 1e-300;

inline constexpr double angular(double f_hz) { return 2.0 * kPi * f_hz; }

}  // namespace nric
