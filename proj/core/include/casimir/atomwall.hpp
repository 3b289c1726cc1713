#pragma once

#include <cstddef>

#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/parallel.hpp"
#include "casimir/saturation.hpp"

namespace casimir {

// Single-oscillator polarizability alpha(i xi) = alpha0 / (1 + xi^2 / wa^2),
// Gaussian convention (m^3).
struct AtomModel {
  double static_polarizability = 0.0;  // m^3
  double resonance = 0.0;              // rad/s

  double polarizability(double xi) const;
};

struct TrapConfig {
  double amplitude = 0.0;       // a, m
  double tf_radius = 0.0;       // R_x, m
  double mass = 0.0;            // kg
  double trap_frequency = 0.0;  // omega_0, rad/s
};

void validate(const AtomModel& atom);
void validate(const TrapConfig& trap);

// Rb-87 ground state, single-oscillator fit.
AtomModel rubidium();
// Trap of the Rb BEC surface-force measurement.
TrapConfig rubidium_trap();

// Area times ln f for one atom in a dilute layer facing a wall, on the
// imaginary axis, with q = gamma0 = sqrt(k^2 + xi^2/c^2):
//   TE: -2 pi alpha e^{-2qd} (g1 - q)/(g1 + q) (xi/c)^2 / q
//   TM:  2 pi alpha e^{-2qd} (g1 - eps q)/(g1 + eps q) (2k^2 + (xi/c)^2) / q
// wall_eps may be +inf (ideal wall). At xi = 0, wall_eps is the static value
// (+inf for a conductor) and the TE expression vanishes identically.
double log_f_te(double k, double xi, double wall_eps, double alpha, double d);
double log_f_tm(double k, double xi, double wall_eps, double alpha, double d);

struct AtomWallResult {
  double value = 0.0;
  double tm = 0.0;
  double te = 0.0;
  double error = 0.0;
  std::size_t matsubara_terms = 0;
};

// Potential energy of the atom (J). T = 0 integrates over xi, T > 0 sums over
// Matsubara frequencies. Saturation smears the selected low-order terms.
AtomWallResult atom_wall_potential(double d, const DielectricModel& wall, const AtomModel& atom,
                                   const ThermalState& thermal, const SaturationModel& sat,
                                   const QuadratureSpec& quad, Executor* executor = nullptr);

// F = -dV/dd (N); negative values point toward the wall.
AtomWallResult atom_wall_force(double d, const DielectricModel& wall, const AtomModel& atom,
                               const ThermalState& thermal, const SaturationModel& sat, const QuadratureSpec& quad,
                               Executor* executor = nullptr);

// 15 [(3 + z^2) sinh z - 3 z cosh z] / z^5.
double g_kernel(double z);

// Fractional trap-frequency shift |Phi_e| / (m a omega_0^2), where Phi_e is the
// force with the averaging factor I1(2 q a) g(2 q R_x) inside the integral.
// Requires d > a + R_x.
AtomWallResult gamma_x(double d, const DielectricModel& wall, const AtomModel& atom, const TrapConfig& trap,
                       const ThermalState& thermal, const SaturationModel& sat, const QuadratureSpec& quad,
                       Executor* executor = nullptr);

}  // namespace casimir
