#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "casimir/dielectric.hpp"

namespace casimir {

enum class Polarization { TM, TE };
std::string to_string(Polarization p);

enum class ModeClass { Propagating, Evanescent };
std::string to_string(ModeClass m);

// Two half-spaces (media 1 and 2) separated by a vacuum gap (medium 0) of width d.
struct HalfSpacePair {
  DielectricModel medium1;
  DielectricModel medium2;
  double separation = 0.0;  // m
};

void validate(const HalfSpacePair& pair);

enum class Axis { Imaginary, Real };

// xi on the imaginary axis, omega on the real axis, rad/s.
struct FrequencyPoint {
  Axis axis = Axis::Imaginary;
  double value = 0.0;
};

// Permittivity sampled at one frequency point; `perfect` marks an ideal mirror.
struct Permittivity {
  std::complex<double> eps{1.0, 0.0};
  bool perfect = false;
};

Permittivity sample(const DielectricModel& m, FrequencyPoint fp);

// Imaginary axis: sqrt(k^2 + eps xi^2/c^2). Real axis: sqrt(k^2 - eps omega^2/c^2)
// on the branch Re >= 0; on the cut (purely imaginary root) Im <= 0 is taken, so a
// propagating vacuum wave has gamma0 = -i p and exp(-2 gamma0 d) = exp(2 i p d).
std::complex<double> gamma(double k, FrequencyPoint fp, std::complex<double> eps);

// Amplitude reflection coefficient for a wave in medium i hitting medium j.
//   TM: (eps_j g_i - eps_i g_j) / (eps_j g_i + eps_i g_j)
//   TE: (g_i - g_j) / (g_i + g_j)
// Evaluated in the algebraically equivalent difference form, which has no
// cancellation when eps_i ~ eps_j. Sign convention: at normal incidence on the
// imaginary axis r_TM = -r_TE; a perfect mirror has r_TM = 1, r_TE = -1.
std::complex<double> fresnel(Polarization pol, double k, FrequencyPoint fp, const Permittivity& eps_i,
                             const Permittivity& eps_j);

// f = 1 - r01 r02 exp(-2 gamma0 d).
std::complex<double> mode_condition(Polarization pol, const HalfSpacePair& pair, double k, FrequencyPoint fp);

// Vacuum -> medium reflection in the xi -> 0+ limit at transverse wavenumber k.
double static_reflection(Polarization pol, const StaticResponse& s, double k);

// Per-frequency view of a pair on the imaginary axis, for the inner integrals.
// products(q) returns {r01 r02 (TM), r01 r02 (TE)} at gamma0 = q.
class ImagAxisPair {
 public:
  static ImagAxisPair at(const HalfSpacePair& pair, double xi);
  static ImagAxisPair zero_frequency(const HalfSpacePair& pair);

  std::array<double, 2> products(double q) const;
  double xi() const { return xi_; }

 private:
  struct Side {
    bool is_static = false;
    bool perfect = false;
    double eps = 1.0;
    StaticResponse st;
  };
  double reflect(const Side& s, Polarization pol, double q) const;

  Side s1_;
  Side s2_;
  double xi_ = 0.0;
  double s2c_ = 0.0;  // (xi/c)^2
};

// Vacuum -> medium reflection {r_TM, r_TE} on the real axis with gamma0 supplied
// by the caller (kappa below the light line, -i p above it) and w2 = omega^2/c^2.
// gamma_j is formed as sqrt(gamma0^2 - (eps - 1) w2), which keeps full relative
// precision next to the light line.
std::array<std::complex<double>, 2> reflection_real_axis(const Permittivity& eps, std::complex<double> gamma0,
                                                         double w2);

// Real-axis reflection product r01 r02 for both polarizations at (k, omega).
struct RealAxisSample {
  std::complex<double> gamma0;
  std::array<std::complex<double>, 2> product;  // TM, TE
};
RealAxisSample real_axis_sample(const Permittivity& e1, const Permittivity& e2, double k, double omega);

// Lossless dispersion relation.
struct DispersionRoot {
  double k = 0.0;      // rad/m
  double omega = 0.0;  // rad/s
  Polarization pol = Polarization::TM;
  ModeClass mode = ModeClass::Evanescent;
};

struct DispersionOptions {
  int brackets_per_decade = 1000;
  double decades = 6.0;  // scan starts this many decades below the top frequency
  double rel_tol = 1e-10;
};

std::vector<DispersionRoot> dispersion_solve(const HalfSpacePair& pair, Polarization pol, double k,
                                             const DispersionOptions& opts = {});

}  // namespace casimir
