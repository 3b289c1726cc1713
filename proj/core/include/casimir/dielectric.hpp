#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casimir/optical_data.hpp"

namespace casimir {

// eps(i xi) = 1 + wp^2 / (xi (xi + gamma)). gamma = 0 is the plasma model.
struct Drude {
  double plasma_frequency = 0.0;  // rad/s
  double relaxation = 0.0;        // rad/s
};

struct Plasma {
  double plasma_frequency = 0.0;
};

struct Oscillator {
  double strength = 0.0;
  double resonance = 0.0;  // rad/s
  double damping = 0.0;    // rad/s
};

// Sum of Lorentz oscillators; an empty set is vacuum.
struct OscillatorSet {
  std::vector<Oscillator> terms;
};

struct Tabulated {
  std::shared_ptr<const OpticalDataTable> table;
  // Relative disagreement between the full and the decimated table above which
  // imaginary-axis evaluation reports an accuracy error. Zero disables the check.
  double kk_tolerance = 0.0;
};

// Ideal mirror: r_TM = 1, r_TE = -1 everywhere.
struct PerfectReflector {};

using BaseModel = std::variant<Drude, Plasma, OscillatorSet, Tabulated, PerfectReflector>;

// Background response plus free carriers plus a static conductivity (Gaussian
// units, s^-1): eps(i xi) = base + carriers + 4 pi sigma / xi.
struct Composite {
  BaseModel base;
  std::optional<Drude> carriers;
  double conductivity = 0.0;
};

using DielectricModel = std::variant<Drude, Plasma, OscillatorSet, Tabulated, Composite, PerfectReflector>;

inline DielectricModel vacuum() { return OscillatorSet{}; }

bool is_perfect_reflector(const DielectricModel& m);
bool is_vacuum(const DielectricModel& m);
bool is_lossless(const DielectricModel& m);
void validate(const DielectricModel& m);

// Permittivity on the imaginary axis, xi > 0. Perfect reflectors return +inf.
double eval_eps_imag_axis(const DielectricModel& m, double xi);

// Permittivity on the real axis, omega > 0, with Im eps >= 0.
std::complex<double> eval_eps_real_axis(const DielectricModel& m, double omega);

// KK transform of a table to the imaginary axis. With tol > 0 the result is
// checked against the decimated table and AccuracyError carries the achieved
// relative accuracy when it is worse than tol.
double kk_to_imag_axis(const OpticalDataTable& table, double xi, double tol = 0.0);

// The xi -> 0+ behaviour that decides the zero-frequency reflection
// coefficients. Never obtained by evaluating at xi = 0.
struct StaticResponse {
  enum class Kind {
    Dielectric,  // finite eps0: r_TM = (eps0-1)/(eps0+1), r_TE = 0
    Conductor,   // eps ~ 1/xi: r_TM = 1, r_TE = 0
    Plasma,      // eps ~ wp^2/xi^2: r_TM = 1, r_TE from the penetration depth
    Perfect,     // r_TM = 1, r_TE = -1
  };
  Kind kind = Kind::Dielectric;
  double eps0 = 1.0;
  double plasma_frequency = 0.0;
};

StaticResponse static_response(const DielectricModel& m);

std::string describe(const DielectricModel& m);

// Frequencies (rad/s) where the response changes character: plasma and
// surface-plasmon frequencies, relaxation rates, resonances, table edges.
// Used to seed quadrature partitions.
std::vector<double> characteristic_frequencies(const DielectricModel& m);

}  // namespace casimir
