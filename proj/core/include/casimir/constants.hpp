#pragma once

#include <numbers>

// Physical constants used throughout the library. SI units unless stated.
// These are the single source of truth; result metadata echoes them verbatim.
namespace casimir::constants {

inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double c = 2.99792458e8;                  // m / s
inline constexpr double k_B = 1.380649e-23;               // J / K
inline constexpr double ev_to_rad_per_s = 1.519267447e15;  // (1 eV) / hbar, rad / s
inline constexpr double zeta3 = 1.202056903159594;         // Apery's constant

inline constexpr double pi = std::numbers::pi;

}  // namespace casimir::constants
