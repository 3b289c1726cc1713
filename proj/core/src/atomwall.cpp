#include "casimir/atomwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <fmt/format.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/modecond.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

double AtomModel::polarizability(double xi) const {
  const double u = xi / resonance;
  return static_polarizability / (1.0 + u * u);
}

void validate(const AtomModel& atom) {
  if (!(atom.static_polarizability > 0.0)) throw ValidationError("atom polarizability must be positive");
  if (!(atom.resonance > 0.0)) throw ValidationError("atom resonance frequency must be positive");
}

void validate(const TrapConfig& trap) {
  if (!(trap.amplitude > 0.0 && trap.tf_radius > 0.0 && trap.mass > 0.0 && trap.trap_frequency > 0.0)) {
    throw ValidationError("trap amplitude, Thomas-Fermi radius, mass and frequency must be positive");
  }
}

AtomModel rubidium() { return {4.73e-29, 2.4e15}; }

TrapConfig rubidium_trap() { return {2.50e-6, 2.69e-6, 1.443e-25, 2.0 * pi * 229.0}; }

namespace {

// (g1 - q)/(g1 + q) and (g1 - eps q)/(g1 + eps q) at s = (xi/c)^2 > 0.
struct WallFactors {
  double te = 0.0;
  double tm = 0.0;
};

WallFactors wall_factors(double eps, double q, double s) {
  if (std::isinf(eps)) return {1.0, -1.0};
  const double em1 = eps - 1.0;
  const double g1 = std::sqrt(q * q + em1 * s);
  const double te = em1 * s / ((g1 + q) * (g1 + q));
  const double tm = -em1 * ((eps + 1.0) * q * q - s) / ((eps * q + g1) * (eps * q + g1));
  return {te, tm};
}

double static_tm_factor(double eps) {
  if (std::isinf(eps)) return -1.0;
  return (1.0 - eps) / (1.0 + eps);
}

}  // namespace

double log_f_te(double k, double xi, double wall_eps, double alpha, double d) {
  if (xi == 0.0 || alpha == 0.0) return 0.0;
  const double s = (xi / c) * (xi / c);
  const double q = std::sqrt(k * k + s);
  return -2.0 * pi * alpha * std::exp(-2.0 * q * d) * wall_factors(wall_eps, q, s).te * s / q;
}

double log_f_tm(double k, double xi, double wall_eps, double alpha, double d) {
  if (alpha == 0.0) return 0.0;
  const double s = (xi / c) * (xi / c);
  const double q = std::sqrt(k * k + s);
  const double r = xi == 0.0 ? static_tm_factor(wall_eps) : wall_factors(wall_eps, q, s).tm;
  return 2.0 * pi * alpha * std::exp(-2.0 * q * d) * r * (2.0 * k * k + s) / q;
}

double g_kernel(double z) {
  if (!(z >= 0.0)) throw ValidationError("g_kernel needs z >= 0");
  if (z < 1.0) {
    // 15 sum_{j>=2} 4 j (j-1) z^(2j-4) / (2j+1)!
    const double z2 = z * z;
    double term = 1.0;  // j = 2: 15 * 8 / 120
    double sum = 1.0;
    for (int j = 3; j < 20; ++j) {
      term *= z2 * static_cast<double>(j) / static_cast<double>(j - 2) / ((2.0 * j) * (2.0 * j + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  const double z5 = z * z * z * z * z;
  return 15.0 * ((3.0 + z * z) * std::sinh(z) - 3.0 * z * std::cosh(z)) / z5;
}

namespace {

enum class Kind { Potential, Force, Trap };

// I1(x) e^{-x}.
double bessel_i1_scaled(double x) {
  if (x == 0.0) return 0.0;
  if (x < 600.0) return boost::math::cyl_bessel_i(1, x) * std::exp(-x);
  // Hankel expansion, mu = 4 nu^2 = 4.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(4.0 - odd * odd) / (k * 8.0 * x);
    sum += term;
  }
  return sum / std::sqrt(2.0 * pi * x);
}

// g(z) e^{-z}.
double g_kernel_scaled(double z) {
  if (z < 30.0) return g_kernel(z) * std::exp(-z);
  const double e2 = std::exp(-2.0 * z);
  const double z5 = z * z * z * z * z;
  return 7.5 * ((3.0 + z * z) * (1.0 - e2) - 3.0 * z * (1.0 + e2)) / z5;
}

struct Engine {
  double d;
  const DielectricModel& wall;
  const AtomModel& atom;
  const TrapConfig* trap;
  Kind what;
  double decay;  // the integrand falls as exp(-2 q decay)
  StaticResponse statics;

  // {TM, TE} per unit exp(-2 q decay) at (q, xi).
  quad::Vec<2> reduced(double q, double xi, double eps) const {
    const double s = (xi / c) * (xi / c);
    WallFactors r;
    if (xi == 0.0) {
      r.tm = -static_reflection(Polarization::TM, statics, q);
      r.te = 0.0;
    } else {
      r = wall_factors(eps, q, s);
    }
    const double alpha = atom.polarizability(xi);
    double w = alpha;
    if (what != Kind::Potential) w *= 2.0 * q;
    if (what == Kind::Trap) {
      w *= bessel_i1_scaled(2.0 * q * trap->amplitude) * g_kernel_scaled(2.0 * q * trap->tf_radius);
    } else {
      w *= std::exp(-2.0 * q * (d - decay));
    }
    return {w * r.tm * (2.0 * q * q - s), xi == 0.0 ? 0.0 : -w * r.te * s};
  }

  // int_{xi/c}^inf dq e^{-2 q decay} reduced(q).
  quad::Vec<2> term(double xi, const quad::Tolerance& tol) const {
    const double q0 = xi / c;
    const double eps = xi > 0.0 ? eval_eps_imag_axis(wall, xi) : 0.0;
    const double h = 0.5 / decay;
    const double front = std::exp(-2.0 * q0 * decay) * h;
    quad::Vec<2> v{};
    auto g = [&](double t) { return reduced(q0 + h * t, xi, eps); };
    if (!quad::laguerre_pair<2>(g, tol, v)) {
      std::vector<double> bp{0.0};
      for (double x : {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 120.0}) bp.push_back(x);
      auto f = [&](double t) {
        auto y = g(t);
        const double e = std::exp(-t);
        return quad::Vec<2>{y[0] * e, y[1] * e};
      };
      const auto r = quad::integrate<2>(f, std::span<const double>(bp), tol);
      if (!r.converged) throw ConvergenceError("atom-wall q integral did not converge", r.error);
      v = r.value;
    }
    return {front * v[0], front * v[1]};
  }
};

quad::Tolerance inner_tolerance(const QuadratureSpec& q) {
  quad::Tolerance t;
  t.rel = std::max(0.01 * q.rel_tol, 1e-13);
  t.max_panels = q.max_subdivisions;
  return t;
}

AtomWallResult zero_temperature(const Engine& e, const QuadratureSpec& quad, Executor* executor) {
  const auto inner = inner_tolerance(quad);
  // xi = zeta c / (2 decay)
  const double scale = c / (2.0 * e.decay);
  auto g = [&](double zeta) { return e.term(zeta * scale, inner); };
  std::vector<double> bp{0.0};
  for (int j = -8; j <= 0; ++j) bp.push_back(std::pow(10.0, j));
  for (double z : {3.0, 10.0, 30.0, 100.0, 300.0}) bp.push_back(z);
  const double wa = e.atom.resonance / scale;
  if (wa > 0.0 && wa < 300.0) bp.push_back(wa);
  std::sort(bp.begin(), bp.end());
  quad::Tolerance tol;
  tol.rel = quad.rel_tol;
  tol.max_panels = quad.max_subdivisions;
  const auto r = quad::integrate<2>(g, std::span<const double>(bp), tol, executor);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("atom-wall frequency integral did not converge at d={:.6g} m", e.d), r.error);
  }
  const double pref = hbar * scale / (2.0 * pi);
  AtomWallResult out;
  out.tm = pref * r.value[0];
  out.te = pref * r.value[1];
  out.value = out.tm + out.te;
  out.error = pref * r.error;
  return out;
}

AtomWallResult matsubara(const Engine& e, const ThermalState& thermal, const SaturationModel& sat,
                         const QuadratureSpec& quad, Executor* executor) {
  const double T = thermal.temperature;
  const double spacing = 2.0 * pi * k_B * T / hbar;
  const auto inner = inner_tolerance(quad);
  quad::Tolerance smear_tol = inner;
  smear_tol.rel = std::max(quad.rel_tol, 1e-10);

  auto term = [&](long n) -> quad::Vec<2> {
    if (smears_term(sat, n)) {
      auto f = [&](double xi) { return e.term(xi, inner); };
      const auto r = smeared_matsubara_term<2>(n, f, sat.D, T, smear_tol);
      if (!r.converged) {
        throw ConvergenceError(fmt::format("Lorentzian-smeared atom-wall term n={} did not converge", n), r.error);
      }
      return r.value;
    }
    return e.term(spacing * static_cast<double>(n), inner);
  };

  const long smeared_up_to = last_smeared_term(sat);
  const std::size_t last_smeared =
      smeared_up_to == std::numeric_limits<long>::max() ? 0 : static_cast<std::size_t>(std::max<long>(smeared_up_to, 0));
  const std::size_t block = 16;
  std::vector<quad::Vec<2>> terms;
  quad::Vec<2> sum{};
  int quiet = 0;
  std::size_t n = 0;
  bool done = false;
  while (!done) {
    if (n >= quad.max_matsubara_terms) {
      throw ConvergenceError(fmt::format("atom-wall Matsubara sum not truncated within {} terms at d={:.6g} m",
                                         quad.max_matsubara_terms, e.d));
    }
    const std::size_t count = std::min(block, quad.max_matsubara_terms - n);
    terms.assign(count, quad::Vec<2>{});
    for_each_index(executor, count, [&](std::size_t i) { terms[i] = term(static_cast<long>(n + i)); });
    for (std::size_t i = 0; i < count && !done; ++i, ++n) {
      const double w = n == 0 ? quad.zero_term_weight : 1.0;
      sum[0] += w * terms[i][0];
      sum[1] += w * terms[i][1];
      const double mag = std::abs(terms[i][0]) + std::abs(terms[i][1]);
      const double ref = std::abs(sum[0]) + std::abs(sum[1]);
      quiet = (n > last_smeared && mag <= quad.matsubara_tol * ref) ? quiet + 1 : 0;
      done = quiet >= 3;
    }
  }
  AtomWallResult out;
  out.tm = k_B * T * sum[0];
  out.te = k_B * T * sum[1];
  out.value = out.tm + out.te;
  out.matsubara_terms = n;
  out.error = std::abs(out.value) * std::max(quad.rel_tol, quad.matsubara_tol);
  return out;
}

AtomWallResult run(Kind what, double d, const DielectricModel& wall, const AtomModel& atom,
                   const TrapConfig* trap, const ThermalState& thermal, const SaturationModel& sat,
                   const QuadratureSpec& quad, Executor* executor) {
  if (!(d > 0.0)) throw ValidationError("separation must be positive");
  validate(wall);
  validate(atom);
  validate(quad);
  validate(sat);
  if (!(thermal.temperature >= 0.0)) throw ValidationError("temperature must be non-negative");
  double decay = d;
  if (trap) {
    validate(*trap);
    decay = d - trap->amplitude - trap->tf_radius;
    if (!(decay > 0.0)) {
      throw ValidationError(fmt::format("trap averaging needs d > a + R_x ({:.6g} m), got d = {:.6g} m",
                                        trap->amplitude + trap->tf_radius, d));
    }
  }
  if (is_vacuum(wall)) return {};
  const Engine e{d, wall, atom, trap, what, decay, static_response(wall)};
  if (thermal.temperature == 0.0) {
    if (is_active(sat)) throw IncompatibleScopeError("saturation has no effect at T = 0; set a temperature");
    return zero_temperature(e, quad, executor);
  }
  check_route(sat, Route::Matsubara);
  return matsubara(e, thermal, sat, quad, executor);
}

}  // namespace

AtomWallResult atom_wall_potential(double d, const DielectricModel& wall, const AtomModel& atom,
                                   const ThermalState& thermal, const SaturationModel& sat,
                                   const QuadratureSpec& quad, Executor* executor) {
  return run(Kind::Potential, d, wall, atom, nullptr, thermal, sat, quad, executor);
}

AtomWallResult atom_wall_force(double d, const DielectricModel& wall, const AtomModel& atom,
                               const ThermalState& thermal, const SaturationModel& sat, const QuadratureSpec& quad,
                               Executor* executor) {
  return run(Kind::Force, d, wall, atom, nullptr, thermal, sat, quad, executor);
}

AtomWallResult gamma_x(double d, const DielectricModel& wall, const AtomModel& atom, const TrapConfig& trap,
                       const ThermalState& thermal, const SaturationModel& sat, const QuadratureSpec& quad,
                       Executor* executor) {
  auto r = run(Kind::Trap, d, wall, atom, &trap, thermal, sat, quad, executor);
  const double scale = 1.0 / (trap.mass * trap.amplitude * trap.trap_frequency * trap.trap_frequency);
  AtomWallResult out;
  out.tm = std::abs(r.tm) * scale;
  out.te = std::abs(r.te) * scale;
  out.value = std::abs(r.value) * scale;
  out.error = r.error * scale;
  out.matsubara_terms = r.matsubara_terms;
  return out;
}

}  // namespace casimir
