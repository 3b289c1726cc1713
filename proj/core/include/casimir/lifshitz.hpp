#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "casimir/modecond.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/saturation.hpp"

namespace casimir {

struct ThermalState {
  double temperature = 0.0;  // K
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;  // floor, in the units of the quantity
  std::size_t max_subdivisions = 20000;
  double matsubara_tol = 1e-12;  // per-term truncation threshold relative to the running sum
  std::size_t max_matsubara_terms = 2000000;
  double k_cutoff_multiplier = 40.0;      // real axis: k_max = multiplier / d
  double omega_cutoff_multiplier = 50.0;  // real axis: omega_max = multiplier * max(c/d, omega_p)
  double thermal_cutoff = 45.0;           // real axis: occupation dropped above this many k_B T / hbar
  double real_axis_rel_tol = 1e-4;
  double zero_term_weight = 0.5;  // the prime on the Matsubara sum
};

void validate(const QuadratureSpec& q);

enum class Quantity { Energy, Pressure };
std::string to_string(Quantity q);

// Thermal part of a real-axis result split by polarization and mode class.
struct ModeDecomposition {
  double tm_propagating = 0.0;
  double tm_evanescent = 0.0;
  double te_propagating = 0.0;
  double te_evanescent = 0.0;

  double tm() const { return tm_propagating + tm_evanescent; }
  double te() const { return te_propagating + te_evanescent; }
  double total() const { return tm() + te(); }
};

// Energies in J/m^2, pressures in Pa with positive meaning attraction.
struct LifshitzResult {
  double value = 0.0;
  double tm = 0.0;
  double te = 0.0;
  // Real-axis route only: the occupation-weighted part by mode class and the
  // zero-point part by polarization.
  std::optional<ModeDecomposition> thermal;
  double zero_point_tm = 0.0;
  double zero_point_te = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t matsubara_terms = 0;
};

LifshitzResult energy_T0(const HalfSpacePair& pair, const QuadratureSpec& quad, Executor* executor = nullptr);
LifshitzResult pressure_T0(const HalfSpacePair& pair, const QuadratureSpec& quad, Executor* executor = nullptr);

LifshitzResult free_energy_matsubara(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                     const QuadratureSpec& quad, Executor* executor = nullptr);
LifshitzResult pressure_matsubara(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                  const QuadratureSpec& quad, Executor* executor = nullptr);

LifshitzResult energy_real_axis(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                const QuadratureSpec& quad, Executor* executor = nullptr);
LifshitzResult pressure_real_axis(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                  const QuadratureSpec& quad, Executor* executor = nullptr);

// V(T) - V(0) from the occupation-weighted real-axis term only.
ModeDecomposition thermal_correction_by_mode(const HalfSpacePair& pair, const ThermalState& thermal,
                                             const SaturationModel& sat, const QuadratureSpec& quad,
                                             Executor* executor = nullptr);

// Dispatch on quantity and route. T = 0 on the Matsubara route uses the
// imaginary-frequency integral.
LifshitzResult compute(Quantity quantity, Route route, const HalfSpacePair& pair, const ThermalState& thermal,
                       const SaturationModel& sat, const QuadratureSpec& quad, Executor* executor = nullptr);

// Ideal-mirror references at T = 0.
double ideal_energy(double d);    // -pi^2 hbar c / (720 d^3)
double ideal_pressure(double d);  // pi^2 hbar c / (240 d^4)

double correction_factor(Quantity kind, double value, double d);

// Sphere-plate force from the plate-plate energy, F = -2 pi R V (positive = attraction).
double pfa_sphere(double plate_energy, double radius);

// One Matsubara-type term: the dimensionless y-integral at imaginary
// frequency xi (xi = 0 selects the analytic zero-frequency limit), per
// polarization {TM, TE}.
//   energy:   int_{zeta}^inf y ln(1 - R e^{-y}) dy
//   pressure: int_{zeta}^inf y^2 R e^{-y} / (1 - R e^{-y}) dy
// with zeta = 2 xi d / c and R = r01 r02 at gamma0 = y / (2d).
quad::Vec<2> matsubara_term(const HalfSpacePair& pair, double xi, Quantity quantity, const quad::Tolerance& tol);

}  // namespace casimir
