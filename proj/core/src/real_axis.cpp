// Real-frequency route: V = hbar/(2 pi^2) int k dk Im int dw [n(w) + 1/2] ln f(k, w).
//
// The k integral is outermost. At fixed k the inner integral is split at the
// light line w = ck:
//   below it (evanescent) w = ck sin(theta), gamma0 = k cos(theta) is real and
//     arg f is continued from arg f = 0 at w = 0, since surface resonances can
//     wind the phase;
//   above it (propagating) w = c sqrt(k^2 + p^2), gamma0 = -i p. There |r01 r02| <= 1
//     and Re f > 0, so the principal logarithm is the continuous one.
// f vanishes like gamma0 at the light line itself, so arg f drops by exactly
// pi/2 across it; that jump is checked for every k.

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

namespace {

using cd = std::complex<double>;
using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

// Channel layout: part * 4 + slot, part 0 = zero-point, 1 = occupation-weighted.
enum Slot { kTMp = 0, kTMe = 1, kTEp = 2, kTEe = 3 };

struct Setup {
  const HalfSpacePair* pair = nullptr;
  double d = 0.0;
  double beta = 0.0;
  SaturationModel sat;
  bool zero_point = true;
  bool thermal = true;
  Quantity quantity = Quantity::Energy;
  double omega_max = 0.0;
  double omega_thermal = 0.0;
  double k_max = 0.0;
  double inner_abs = 0.0;
  double inner_rel = 0.0;
  std::size_t max_panels = 0;
  std::array<Weight, 4> weight{};
  std::vector<double> features;

  double occupation_at(int slot, double w) const {
    if (!thermal || w > omega_thermal) return 0.0;
    return occupation(weight[slot], sat, w, beta);
  }
};

struct Point {
  cd gamma0;
  std::array<cd, 2> x;  // r01 r02 exp(-2 gamma0 d), TM and TE
  std::array<double, 2> reflectivity;  // |r01 r02|
};

Point evaluate(const Setup& s, cd gamma0, double w, double w2) {
  const FrequencyPoint fp{Axis::Real, w};
  const auto e1 = sample(s.pair->medium1, fp);
  const auto e2 = sample(s.pair->medium2, fp);
  const auto r1 = reflection_real_axis(e1, gamma0, w2);
  const auto r2 = reflection_real_axis(e2, gamma0, w2);
  const cd ex = std::exp(-2.0 * gamma0 * s.d);
  Point p;
  p.gamma0 = gamma0;
  for (int j = 0; j < 2; ++j) {
    const cd rr = r1[j] * r2[j];
    p.x[j] = rr * ex;
    p.reflectivity[j] = std::abs(rr);
  }
  return p;
}

// Principal arg of 1 - x.
double arg_f(cd x) { return std::atan2(-x.imag(), 1.0 - x.real()); }

// Im[2 gamma0 x / (1 - x)], the d-derivative of ln f.
double pressure_density(cd gamma0, cd x) { return (2.0 * gamma0 * x / (1.0 - x)).imag(); }

Point evanescent_point(const Setup& s, double k, double theta) {
  const double st = std::sin(theta);
  const double w = c * k * st;
  return evaluate(s, cd(k * std::cos(theta), 0.0), w, k * k * st * st);
}

Point propagating_point(const Setup& s, double k, double p) {
  const double w2 = k * k + p * p;
  return evaluate(s, cd(0.0, -p), c * std::sqrt(w2), w2);
}

std::vector<double> evanescent_breakpoints(const Setup& s, double k, double theta_end) {
  const double top = c * k;
  std::vector<double> w;
  for (int j = 1; j <= 12; ++j) w.push_back(top * std::pow(10.0, -j));
  for (double f : s.features) w.push_back(f);
  if (s.thermal) {
    const double wt = 1.0 / (hbar * s.beta);
    for (double m : {0.01, 0.1, 1.0, 10.0}) w.push_back(m * wt);
  }
  std::vector<double> bp{0.0, theta_end};
  for (double x : w) {
    if (x > 0.0 && x < top) {
      const double t = std::asin(x / top);
      if (t > 0.0 && t < theta_end) bp.push_back(t);
    }
  }
  // Coupled surface modes sit just below the light line, where the phase of f
  // can swing by nearly 2 pi over a narrow interval: grade toward theta_end.
  for (int j = 0; j <= 72; ++j) {
    const double t = 0.5 * pi - std::pow(10.0, -j / 8.0);
    if (t > 0.0 && t < theta_end) bp.push_back(t);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

// Partition of [0, p_end] that resolves the exp(2 i p d) oscillation while the
// reflection product matters and stops once the remaining integrand is
// provably below tolerance: beyond every material feature |r01 r02| only
// decreases, and the integrand is bounded by its value times dw/dp <= c.
std::vector<double> propagating_breakpoints(const Setup& s, double k, double p_end, bool& truncated) {
  truncated = false;
  std::vector<double> bp{0.0};
  const double step = 0.5 * pi / s.d;
  double last_feature = 0.0;
  for (double f : s.features) last_feature = std::max(last_feature, f);
  std::vector<double> marks;
  for (double f : s.features) {
    const double q = (f / c) * (f / c) - k * k;
    if (q > 0.0) marks.push_back(std::sqrt(q));
  }
  if (s.thermal) {
    const double q = (s.omega_thermal / c) * (s.omega_thermal / c) - k * k;
    if (q > 0.0) marks.push_back(std::sqrt(q));
  }
  std::sort(marks.begin(), marks.end());
  std::size_t next_mark = 0;
  const double density_floor = 1e-3 * s.inner_abs / std::max(p_end, step);
  double p = 0.0;
  while (p < p_end) {
    double q = std::min(p + step, p_end);
    while (next_mark < marks.size() && marks[next_mark] <= p) ++next_mark;
    if (next_mark < marks.size() && marks[next_mark] < q) q = marks[next_mark];
    bp.push_back(q);
    p = q;
    if (p < p_end && s.zero_point) {
      const double w = c * std::sqrt(k * k + p * p);
      if (w > 2.0 * last_feature && w > 2.0 * s.omega_thermal * (s.thermal ? 1.0 : 0.0)) {
        const auto pt = propagating_point(s, k, p);
        const double bound = std::max(pt.reflectivity[0], pt.reflectivity[1]) * c * (pi + 1.0) * 2.0 * p;
        if (bound < density_floor) {
          truncated = true;
          break;
        }
      }
    }
    if (bp.size() > s.max_panels) throw ConvergenceError("real-axis propagating partition exceeds the panel limit");
  }
  return bp;
}

quad::Vec<8> inner(const Setup& s, double k) {
  quad::Vec<8> out{};
  const double light = c * k;
  const bool energy = s.quantity == Quantity::Energy;
  const double zp = s.zero_point ? 0.5 : 0.0;
  // The outer integrand is k times this one, so below k = 1/d the same share
  // of the error budget allows a looser inner tolerance.
  const double abs_tol = s.inner_abs * std::max(1.0, 1.0 / (k * s.d));

  // Below the light line.
  double theta_end = 0.5 * pi - 1e-9;
  bool reaches_light_line = true;
  if (!s.zero_point) {
    if (s.omega_thermal < light) {
      theta_end = std::asin(s.omega_thermal / light);
      reaches_light_line = false;
    }
  } else if (s.omega_max < light) {
    theta_end = std::asin(s.omega_max / light);
    reaches_light_line = false;
  }
  std::array<double, 2> end_phase{0.0, 0.0};
  if (k > 0.0) {
    const auto bp = evanescent_breakpoints(s, k, theta_end);
    if (energy) {
      auto f = [&](double theta) {
        const auto pt = evanescent_point(s, k, theta);
        const double w = light * std::sin(theta);
        const double jac = light * std::cos(theta);
        quad::PhaseSample<4> ps;
        const double ptm = arg_f(pt.x[0]);
        const double pte = arg_f(pt.x[1]);
        ps.phase = {ptm, pte, ptm, pte};
        ps.scale = {zp * jac, zp * jac, s.occupation_at(kTMe, w) * jac, s.occupation_at(kTEe, w) * jac};
        return ps;
      };
      const auto r = quad::integrate_unwrapped<4>(f, std::span<const double>(bp), quad::Vec<4>{}, abs_tol, 40,
                                                      0.25 * pi);
      if (!r.converged) {
        throw ConvergenceError(fmt::format("evanescent real-axis integral did not converge at k={:.6g} 1/m", k), r.error);
      }
      out[kTMe] = r.value[0];
      out[kTEe] = r.value[1];
      out[4 + kTMe] = r.value[2];
      out[4 + kTEe] = r.value[3];
      end_phase = {r.end_phase[0], r.end_phase[1]};
    } else {
      auto f = [&](double theta) {
        const auto pt = evanescent_point(s, k, theta);
        const double w = light * std::sin(theta);
        const double jac = light * std::cos(theta);
        const double ptm = pressure_density(pt.gamma0, pt.x[0]);
        const double pte = pressure_density(pt.gamma0, pt.x[1]);
        return quad::Vec<4>{zp * jac * ptm, zp * jac * pte, s.occupation_at(kTMe, w) * jac * ptm,
                            s.occupation_at(kTEe, w) * jac * pte};
      };
      quad::Tolerance tol;
      tol.rel = s.inner_rel;
      tol.abs = abs_tol;
      tol.max_panels = s.max_panels;
      const auto r = quad::integrate<4>(f, std::span<const double>(bp), tol);
      if (!r.converged) {
        throw ConvergenceError(fmt::format("evanescent real-axis integral did not converge at k={:.6g} 1/m", k), r.error);
      }
      out[kTMe] = r.value[0];
      out[kTEe] = r.value[1];
      out[4 + kTMe] = r.value[2];
      out[4 + kTEe] = r.value[3];
    }
  }
  if (!reaches_light_line) return out;

  // Above the light line.
  const double w_end = s.zero_point ? s.omega_max : s.omega_thermal;
  const double q2 = (w_end / c) * (w_end / c) - k * k;
  if (!(q2 > 0.0)) return out;
  const double p_end = std::sqrt(q2);

  if (energy && k > 0.0) {
    const double probe = 1e-9 * std::min(k, 1.0 / s.d);
    const auto pt = propagating_point(s, k, probe);
    for (int j = 0; j < 2; ++j) {
      const double jump = end_phase[j] - (arg_f(pt.x[j]) + 0.5 * pi);
      if (std::abs(jump) > 0.5) {
        throw ConvergenceError(
            fmt::format("phase continuation across the light line failed at k={:.6g} 1/m ({} mismatch {:.3g} rad)", k,
                        j == 0 ? "TM" : "TE", jump),
            std::abs(jump));
      }
    }
  }

  bool truncated = false;
  const auto bp = propagating_breakpoints(s, k, p_end, truncated);
  auto f = [&](double p) {
    const auto pt = propagating_point(s, k, p);
    const double w = c * std::sqrt(k * k + p * p);
    const double jac = c * p / std::sqrt(k * k + p * p);
    double vtm;
    double vte;
    if (energy) {
      vtm = arg_f(pt.x[0]);
      vte = arg_f(pt.x[1]);
    } else {
      vtm = pressure_density(pt.gamma0, pt.x[0]);
      vte = pressure_density(pt.gamma0, pt.x[1]);
    }
    return quad::Vec<4>{zp * jac * vtm, zp * jac * vte, s.occupation_at(kTMp, w) * jac * vtm,
                        s.occupation_at(kTEp, w) * jac * vte};
  };
  quad::Tolerance tol;
  tol.rel = s.inner_rel;
  tol.abs = abs_tol;
  tol.max_panels = std::max(s.max_panels, 4 * bp.size());
  const auto r = quad::integrate<4>(f, std::span<const double>(bp), tol);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("propagating real-axis integral did not converge at k={:.6g} 1/m", k), r.error);
  }
  out[kTMp] = r.value[0];
  out[kTEp] = r.value[1];
  out[4 + kTMp] = r.value[2];
  out[4 + kTEp] = r.value[3];
  return out;
}

Setup make_setup(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                 const QuadratureSpec& quad, Quantity quantity, bool zero_point) {
  validate(pair);
  validate(quad);
  if (!(thermal.temperature >= 0.0)) throw ValidationError("temperature must be non-negative");
  check_route(sat, Route::RealAxis);
  const bool ideal = is_perfect_reflector(pair.medium1) && is_perfect_reflector(pair.medium2);
  if (!ideal && is_lossless(pair.medium1) && is_lossless(pair.medium2)) {
    throw ValidationError("the real-axis route needs a dissipative medium; use the Matsubara route for lossless models");
  }
  Setup s;
  s.pair = &pair;
  s.d = pair.separation;
  s.sat = sat;
  s.quantity = quantity;
  s.zero_point = zero_point;
  s.thermal = thermal.temperature > 0.0;
  s.beta = s.thermal ? beta_of(thermal.temperature) : 0.0;
  s.omega_thermal = s.thermal ? quad.thermal_cutoff * k_B * thermal.temperature / hbar : 0.0;
  s.k_max = quad.k_cutoff_multiplier / s.d;
  for (const auto* m : {&pair.medium1, &pair.medium2}) {
    for (double f : characteristic_frequencies(*m)) s.features.push_back(f);
  }
  std::sort(s.features.begin(), s.features.end());
  s.features.erase(std::unique(s.features.begin(), s.features.end()), s.features.end());
  double wp = 0.0;
  for (double f : s.features) wp = std::max(wp, f);
  s.omega_max = std::max(quad.omega_cutoff_multiplier * std::max(c / s.d, wp), 2.0 * c * s.k_max);
  const int slots[4] = {kTMp, kTMe, kTEp, kTEe};
  for (int slot : slots) {
    const auto pol = (slot == kTMp || slot == kTMe) ? Polarization::TM : Polarization::TE;
    const auto mode = (slot == kTMp || slot == kTEp) ? ModeClass::Propagating : ModeClass::Evanescent;
    s.weight[slot] = apply_scope(sat, pol, mode);
  }
  const double scale = zero_point ? c / s.d : std::min(c / s.d, k_B * std::max(thermal.temperature, 1e-300) / hbar);
  const double pscale = quantity == Quantity::Energy ? 1.0 : 1.0 / s.d;
  s.inner_abs = 1e-3 * quad.real_axis_rel_tol * scale * pscale;
  s.inner_rel = 1e-2 * quad.real_axis_rel_tol;
  s.max_panels = quad.max_subdivisions;
  return s;
}

struct Integrated {
  quad::Vec<8> value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

Integrated integrate_k(const Setup& s, const QuadratureSpec& quad, Executor* executor) {
  std::vector<double> bp{0.0, s.k_max};
  for (double m : {1e-3, 1e-2, 0.1, 0.3, 1.0, 2.0, 4.0, 8.0, 16.0}) bp.push_back(m / s.d);
  for (double f : s.features) bp.push_back(f / c);
  if (s.thermal) bp.push_back(s.omega_thermal / c);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::remove_if(bp.begin(), bp.end(), [&](double x) { return x > s.k_max; }), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  auto f = [&](double k) {
    auto v = inner(s, k);
    for (auto& x : v) x *= k;
    return v;
  };
  quad::Tolerance tol;
  tol.rel = quad.real_axis_rel_tol;
  tol.abs = quad.abs_tol / (hbar / (2.0 * pi * pi));
  tol.max_panels = quad.max_subdivisions;
  const auto r = quad::integrate<8>(f, std::span<const double>(bp), tol, executor);
  if (!r.converged) {
    throw ConvergenceError(fmt::format("real-axis k integral did not converge at d={:.6g} m", s.d), r.error);
  }
  return {r.value, r.error, r.evaluations};
}

LifshitzResult assemble(const Setup& s, const Integrated& in) {
  const double pref = hbar / (2.0 * pi * pi);
  LifshitzResult out;
  const auto& v = in.value;
  out.zero_point_tm = pref * (v[kTMp] + v[kTMe]);
  out.zero_point_te = pref * (v[kTEp] + v[kTEe]);
  ModeDecomposition th;
  th.tm_propagating = pref * v[4 + kTMp];
  th.tm_evanescent = pref * v[4 + kTMe];
  th.te_propagating = pref * v[4 + kTEp];
  th.te_evanescent = pref * v[4 + kTEe];
  out.thermal = th;
  out.tm = out.zero_point_tm + th.tm();
  out.te = out.zero_point_te + th.te();
  out.value = out.tm + out.te;
  out.error = pref * in.error;
  out.evaluations = in.evaluations;
  (void)s;
  return out;
}

LifshitzResult run(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                   const QuadratureSpec& quad, Quantity quantity, bool zero_point, Executor* executor) {
  const auto s = make_setup(pair, thermal, sat, quad, quantity, zero_point);
  if (is_vacuum(pair.medium1) || is_vacuum(pair.medium2)) {
    LifshitzResult out;
    out.thermal = ModeDecomposition{};
    return out;
  }
  if (!zero_point && !s.thermal) {
    LifshitzResult out;
    out.thermal = ModeDecomposition{};
    return out;
  }
  auto in = integrate_k(s, quad, executor);
  if (s.thermal && is_active(sat)) {
    // Adaptive refinement is shared by all slots, so a saturated slot would
    // perturb its neighbours. Slots outside the scope come from the plain run.
    const auto base = make_setup(pair, thermal, no_saturation(), quad, quantity, zero_point);
    const auto plain = integrate_k(base, quad, executor);
    for (int slot = 0; slot < 4; ++slot) {
      in.value[slot] = plain.value[slot];
      if (s.weight[slot] == Weight::Bose) in.value[4 + slot] = plain.value[4 + slot];
    }
    in.error = std::max(in.error, plain.error);
    in.evaluations += plain.evaluations;
  }
  return assemble(s, in);
}

}  // namespace

LifshitzResult energy_real_axis(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                const QuadratureSpec& quad, Executor* executor) {
  return run(pair, thermal, sat, quad, Quantity::Energy, true, executor);
}

LifshitzResult pressure_real_axis(const HalfSpacePair& pair, const ThermalState& thermal, const SaturationModel& sat,
                                  const QuadratureSpec& quad, Executor* executor) {
  return run(pair, thermal, sat, quad, Quantity::Pressure, true, executor);
}

ModeDecomposition thermal_correction_by_mode(const HalfSpacePair& pair, const ThermalState& thermal,
                                             const SaturationModel& sat, const QuadratureSpec& quad,
                                             Executor* executor) {
  return *run(pair, thermal, sat, quad, Quantity::Energy, false, executor).thermal;
}

}  // namespace casimir
