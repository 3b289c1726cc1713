#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/modecond.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class SaturationKind { None, Shifted, Cutoff };
enum class SaturationScope { AllModes, TEEvanescent, ZeroTerm };
enum class Route { Matsubara, RealAxis };

struct SaturationModel {
  SaturationKind kind = SaturationKind::None;
  double D = 0.0;  // shift of the Bose exponent
  double M = 0.0;  // occupation cap
  SaturationScope scope = SaturationScope::AllModes;
  // Zero-term scope replaces only n = 0 while D <= this threshold, and every
  // n <= ceil(D) above it.
  double zero_term_threshold = 1.0;
};

SaturationModel no_saturation();
SaturationModel shifted(double D, SaturationScope scope);
SaturationModel cutoff(double M, SaturationScope scope = SaturationScope::AllModes);

void validate(const SaturationModel& s);
bool is_active(const SaturationModel& s);
std::string to_string(SaturationKind k);
std::string to_string(SaturationScope s);
SaturationKind parse_saturation_kind(const std::string& name);
SaturationScope parse_saturation_scope(const std::string& name);
std::string describe(const SaturationModel& s);

// Thermal inverse energy 1/(k_B T), J^-1.
inline double beta_of(double temperature) { return 1.0 / (constants::k_B * temperature); }

// Bose occupation 1/(exp(hbar beta omega) - 1).
double bose(double omega, double beta);
// 1/(exp(hbar beta omega + D) - 1).
double shifted_distribution(double omega, double beta, double D);
// min(n(omega), M).
double cutoff_distribution(double omega, double beta, double M);

// Throws IncompatibleScopeError when the variant/scope cannot run on `route`.
void check_route(const SaturationModel& s, Route route);

enum class Weight { Bose, Shifted, Capped };

// Which distribution a real-axis slot uses.
Weight apply_scope(const SaturationModel& s, Polarization pol, ModeClass mode);

// Distribution value for a weight choice.
double occupation(Weight w, const SaturationModel& s, double omega, double beta);

// Whether Matsubara term n is replaced by its Lorentzian-smeared version.
bool smears_term(const SaturationModel& s, long n);
// Largest smeared term index, or -1 when none is smeared.
long last_smeared_term(const SaturationModel& s);

// Lorentzian half-width D k_B T / hbar, rad/s.
inline double smearing_width(double D, double temperature) { return D * constants::k_B * temperature / constants::hbar; }

// (1/pi) int dw' W F(|w'|) / ((w' - w_n)^2 + W^2) over the whole real line, with
// W the smearing width and w_n = 2 pi n k_B T / hbar. Each half-line about w_n
// is mapped to t in [0, 1) by w' = w_n +- W t/(1-t), which turns the
// Lorentzian into the bounded density 1/(pi (t^2 + (1-t)^2)); the left half is
// split where w' crosses zero. F(0) is never requested.
template <std::size_t N, class F>
quad::Result<N> smeared_matsubara_term(long n, F&& term, double D, double temperature, const quad::Tolerance& tol,
                                       Executor* executor = nullptr) {
  if (!(D > 0.0)) throw ValidationError("Lorentzian smearing needs D > 0");
  if (n < 0) throw ValidationError("Matsubara index must be non-negative");
  const double width = smearing_width(D, temperature);
  const double wn = 2.0 * std::numbers::pi * static_cast<double>(n) * constants::k_B * temperature / constants::hbar;
  auto density = [](double t) { return 1.0 / (std::numbers::pi * (t * t + (1.0 - t) * (1.0 - t))); };

  auto right = [&](double t) {
    const double w = wn + width * t / (1.0 - t);
    auto v = term(w);
    const double g = density(t);
    for (auto& x : v) x *= g;
    return v;
  };
  auto left = [&](double t) {
    const double w = std::abs(wn - width * t / (1.0 - t));
    auto v = term(w);
    const double g = density(t);
    for (auto& x : v) x *= g;
    return v;
  };

  // Integrand peaks where |w'| is small relative to the width; start with a few
  // panels near t = 0 so the first Kronrod pass sees the structure.
  const std::array<double, 5> bp_right{0.0, 0.25, 0.5, 0.9, 1.0};
  quad::Result<N> out = quad::integrate<N>(right, std::span<const double>(bp_right), tol, executor);
  if (n == 0) {
    for (auto& x : out.value) x *= 2.0;
    out.error *= 2.0;
    return out;
  }
  const double t0 = wn / (wn + width);
  std::array<double, 6> bp_left{0.0, 0.5 * t0, t0, 0.5 * (t0 + 1.0), 0.95 + 0.05 * t0, 1.0};
  const auto l = quad::integrate<N>(left, std::span<const double>(bp_left), tol, executor);
  for (std::size_t c = 0; c < N; ++c) out.value[c] += l.value[c];
  out.error += l.error;
  out.evaluations += l.evaluations;
  out.converged = out.converged && l.converged;
  return out;
}

}  // namespace casimir
