#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

void validate(const QuadratureSpec& q) {
  if (!(q.rel_tol > 0.0) || !(q.matsubara_tol > 0.0) || !(q.real_axis_rel_tol > 0.0)) {
    throw ValidationError("quadrature tolerances must be positive");
  }
  if (!(q.abs_tol >= 0.0)) throw ValidationError("absolute tolerance must be non-negative");
  if (q.max_subdivisions < 16) throw ValidationError("max_subdivisions must be at least 16");
  if (q.max_matsubara_terms < 4) throw ValidationError("max_matsubara_terms must be at least 4");
  if (q.k_cutoff_multiplier < 10.0) throw ValidationError("k cutoff multiplier must be >= 10");
  if (q.omega_cutoff_multiplier < 10.0) throw ValidationError("omega cutoff multiplier must be >= 10");
  if (q.thermal_cutoff < 20.0) throw ValidationError("thermal cutoff must be >= 20");
}

std::string to_string(Quantity q) { return q == Quantity::Energy ? "energy" : "pressure"; }

double ideal_energy(double d) { return -pi * pi * hbar * c / (720.0 * d * d * d); }
double ideal_pressure(double d) { return pi * pi * hbar * c / (240.0 * d * d * d * d); }

double correction_factor(Quantity kind, double value, double d) {
  if (!(d > 0.0)) throw ValidationError("separation must be positive");
  return kind == Quantity::Energy ? value / ideal_energy(d) : value / ideal_pressure(d);
}

double pfa_sphere(double plate_energy, double radius) {
  if (!(radius > 0.0)) throw ValidationError("sphere radius must be positive");
  return -2.0 * pi * radius * plate_energy;
}

namespace {

// y-integrand of one term, per polarization, at y = zeta + t.
struct TermIntegrand {
  const ImagAxisPair& media;
  double d;
  Quantity quantity;

  quad::Vec<2> at(double y) const {
    const auto r = media.products(y / (2.0 * d));
    const double e = std::exp(-y);
    quad::Vec<2> out{};
    for (int p = 0; p < 2; ++p) {
      const double x = r[p] * e;
      out[p] = quantity == Quantity::Energy ? y * std::log1p(-x) : y * y * x / (1.0 - x);
    }
    return out;
  }

  // e^t times the integrand at y = zeta + t, for Gauss-Laguerre.
  quad::Vec<2> scaled(double zeta, double t) const {
    const double y = zeta + t;
    const auto r = media.products(y / (2.0 * d));
    const double ez = std::exp(-zeta);
    const double et = std::exp(-t);
    quad::Vec<2> out{};
    for (int p = 0; p < 2; ++p) {
      const double a = r[p] * ez;
      const double x = a * et;
      if (quantity == Quantity::Energy) {
        out[p] = x == 0.0 ? -y * a : y * std::log1p(-x) / et;
      } else {
        out[p] = y * y * a / (1.0 - x);
      }
    }
    return out;
  }
};

quad::Vec<2> term_integral(const ImagAxisPair& media, double d, double zeta, Quantity quantity,
                           const quad::Tolerance& tol) {
  const TermIntegrand f{media, d, quantity};
  quad::Vec<2> value{};
  if (quad::laguerre_pair<2>([&](double t) { return f.scaled(zeta, t); }, tol, value)) return value;

  // Structure close to y = zeta (log singularities of ideal mirrors, Drude TE
  // crossovers): adaptive Gauss-Kronrod on a graded partition.
  std::vector<double> bp{zeta};
  for (double s : {1e-8, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 120.0}) bp.push_back(zeta + s);
  auto g = [&](double y) { return f.at(y); };
  const auto r = quad::integrate<2>(g, std::span<const double>(bp), tol);
  if (!r.converged) throw ConvergenceError("Matsubara term y-integral did not converge", r.error);
  return r.value;
}

quad::Tolerance inner_tolerance(const QuadratureSpec& q) {
  quad::Tolerance t;
  t.rel = std::max(0.01 * q.rel_tol, 1e-13);
  t.abs = 0.0;
  t.max_panels = q.max_subdivisions;
  return t;
}

double term_zeta(double xi, double d) { return 2.0 * xi * d / c; }

quad::Vec<2> term_at(const HalfSpacePair& pair, double xi, Quantity quantity, const quad::Tolerance& tol) {
  const auto media = xi > 0.0 ? ImagAxisPair::at(pair, xi) : ImagAxisPair::zero_frequency(pair);
  return term_integral(media, pair.separation, term_zeta(xi, pair.separation), quantity, tol);
}

void check_inputs(const HalfSpacePair& pair, const QuadratureSpec& quad) {
  validate(pair);
  validate(quad);
}

LifshitzResult zero_temperature(const HalfSpacePair& pair, Quantity quantity, const QuadratureSpec& quad,
                                Executor* executor) {
  check_inputs(pair, quad);
  LifshitzResult out;
  if (is_vacuum(pair.medium1) || is_vacuum(pair.medium2)) return out;
  const double d = pair.separation;
  const auto inner = inner_tolerance(quad);
  auto g = [&](double zeta) { return term_at(pair, zeta * c / (2.0 * d), quantity, inner); };

  std::vector<double> bp{0.0};
  for (int j = -10; j <= 0; ++j) bp.push_back(std::pow(10.0, j));
  for (double z : {3.0, 10.0, 30.0, 100.0}) bp.push_back(z);
  quad::Tolerance tol;
  tol.rel = quad.rel_tol;
  tol.max_panels = quad.max_subdivisions;
  const double pref = quantity == Quantity::Energy ? hbar * c / (32.0 * pi * pi * d * d * d)
                                                   : hbar * c / (32.0 * pi * pi * d * d * d * d);
  tol.abs = quad.abs_tol / pref;
  const auto r = quad::integrate<2>(g, std::span<const double>(bp), tol, executor);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("zero-temperature frequency integral did not converge at d={:.6g} m", d),
                           r.error / std::max(std::abs(r.value[0] + r.value[1]), 1e-300));
  }
  out.tm = pref * r.value[0];
  out.te = pref * r.value[1];
  out.value = out.tm + out.te;
  out.error = pref * r.error;
  out.evaluations = r.evaluations;
  return out;
}

LifshitzResult matsubara(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                         Quantity quantity, const QuadratureSpec& quad, Executor* executor) {
  check_inputs(pair, quad);
  if (!(thermal.temperature > 0.0)) throw ValidationError("the Matsubara sum needs T > 0");
  check_route(sat, Route::Matsubara);
  LifshitzResult out;
  if (is_vacuum(pair.medium1) || is_vacuum(pair.medium2)) return out;

  const double d = pair.separation;
  const double T = thermal.temperature;
  const double spacing = 2.0 * pi * k_B * T / hbar;
  const auto inner = inner_tolerance(quad);
  quad::Tolerance smear_tol = inner;
  smear_tol.rel = std::max(quad.rel_tol, 1e-10);

  auto term = [&](long n) -> quad::Vec<2> {
    if (smears_term(sat, n)) {
      auto f = [&](double xi) { return term_at(pair, xi, quantity, inner); };
      const auto r = smeared_matsubara_term<2>(n, f, sat.D, T, smear_tol);
      if (!r.converged) {
        throw ConvergenceError(fmt::format("Lorentzian-smeared term n={} did not converge at d={:.6g} m", n, d), r.error);
      }
      return r.value;
    }
    return term_at(pair, spacing * static_cast<double>(n), quantity, inner);
  };

  const std::size_t block = 32;
  // Smeared low-order terms are never taken as evidence of convergence; when
  // every term is smeared the ordinary rule applies.
  const long smeared_up_to = last_smeared_term(sat);
  const std::size_t last_smeared =
      smeared_up_to == std::numeric_limits<long>::max() ? 0 : static_cast<std::size_t>(std::max<long>(smeared_up_to, 0));
  std::vector<quad::Vec<2>> terms;
  quad::Vec<2> sum{};
  quad::Vec<2> prev{};
  int quiet = 0;
  std::size_t n = 0;
  bool done = false;
  while (!done) {
    if (n >= quad.max_matsubara_terms) {
      throw ConvergenceError(fmt::format("Matsubara sum not truncated within {} terms at d={:.6g} m",
                                         quad.max_matsubara_terms, d));
    }
    const std::size_t count = std::min(block, quad.max_matsubara_terms - n);
    terms.assign(count, quad::Vec<2>{});
    for_each_index(executor, count, [&](std::size_t i) { terms[i] = term(static_cast<long>(n + i)); });
    for (std::size_t i = 0; i < count && !done; ++i, ++n) {
      const double w = n == 0 ? quad.zero_term_weight : 1.0;
      const auto& t = terms[i];
      sum[0] += w * t[0];
      sum[1] += w * t[1];
      const double mag = std::abs(t[0]) + std::abs(t[1]);
      const double ref = std::abs(sum[0]) + std::abs(sum[1]);
      quiet = (n > last_smeared && mag <= quad.matsubara_tol * ref) ? quiet + 1 : 0;
      if (quiet >= 3) {
        // Geometric tail from the last two terms, per polarization.
        for (int p = 0; p < 2; ++p) {
          if (prev[p] != 0.0) {
            const double ratio = t[p] / prev[p];
            if (ratio > 0.0 && ratio < 1.0) sum[p] += t[p] * ratio / (1.0 - ratio);
          }
        }
        done = true;
      }
      prev = t;
    }
  }

  const double pref = quantity == Quantity::Energy ? k_B * T / (8.0 * pi * d * d) : k_B * T / (8.0 * pi * d * d * d);
  out.tm = pref * sum[0];
  out.te = pref * sum[1];
  out.value = out.tm + out.te;
  out.matsubara_terms = n;
  out.error = std::abs(out.value) * std::max(quad.rel_tol, quad.matsubara_tol);
  return out;
}

}  // namespace

quad::Vec<2> matsubara_term(const HalfSpacePair& pair, double xi, Quantity quantity, const quad::Tolerance& tol) {
  validate(pair);
  if (!(xi >= 0.0)) throw ValidationError("imaginary frequency must be non-negative");
  return term_at(pair, xi, quantity, tol);
}

LifshitzResult energy_T0(const HalfSpacePair& pair, const QuadratureSpec& quad, Executor* executor) {
  return zero_temperature(pair, Quantity::Energy, quad, executor);
}

LifshitzResult pressure_T0(const HalfSpacePair& pair, const QuadratureSpec& quad, Executor* executor) {
  return zero_temperature(pair, Quantity::Pressure, quad, executor);
}

LifshitzResult free_energy_matsubara(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                     const QuadratureSpec& quad, Executor* executor) {
  return matsubara(pair, thermal, sat, Quantity::Energy, quad, executor);
}

LifshitzResult pressure_matsubara(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                  const QuadratureSpec& quad, Executor* executor) {
  return matsubara(pair, thermal, sat, Quantity::Pressure, quad, executor);
}

LifshitzResult compute(Quantity quantity, Route route, const HalfSpacePair& pair, const ThermalState& thermal,
                       const SaturationModel& sat, const QuadratureSpec& quad, Executor* executor) {
  if (!(thermal.temperature >= 0.0)) throw ValidationError("temperature must be non-negative");
  if (route == Route::RealAxis) {
    return quantity == Quantity::Energy ? energy_real_axis(pair, thermal, sat, quad, executor)
                                        : pressure_real_axis(pair, thermal, sat, quad, executor);
  }
  if (thermal.temperature == 0.0) {
    if (is_active(sat)) throw IncompatibleScopeError("saturation has no effect at T = 0; set a temperature");
    return zero_temperature(pair, quantity, quad, executor);
  }
  return matsubara(pair, thermal, sat, quantity, quad, executor);
}

}  // namespace casimir
