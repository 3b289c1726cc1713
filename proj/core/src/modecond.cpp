#include "casimir/modecond.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using cd = std::complex<double>;
using constants::c;

std::string to_string(Polarization p) { return p == Polarization::TM ? "TM" : "TE"; }
std::string to_string(ModeClass m) { return m == ModeClass::Propagating ? "propagating" : "evanescent"; }

void validate(const HalfSpacePair& pair) {
  if (!(pair.separation > 0.0) || !std::isfinite(pair.separation)) throw ValidationError("separation must be positive");
  validate(pair.medium1);
  validate(pair.medium2);
}

Permittivity sample(const DielectricModel& m, FrequencyPoint fp) {
  if (is_perfect_reflector(m)) return {cd(1.0, 0.0), true};
  if (fp.axis == Axis::Imaginary) return {cd(eval_eps_imag_axis(m, fp.value), 0.0), false};
  return {eval_eps_real_axis(m, fp.value), false};
}

namespace {

// gamma^2 = k^2 + eps * s with s = +xi^2/c^2 (imaginary axis) or -omega^2/c^2 (real axis).
double axis_s(FrequencyPoint fp) {
  const double w = fp.value / c;
  return fp.axis == Axis::Imaginary ? w * w : -w * w;
}

cd branch_sqrt(cd z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, -std::sqrt(-z.real())};
  return std::sqrt(z);
}

cd reflect(Polarization pol, double k2, double s, cd ei, cd ej, cd gi, cd gj) {
  cd num;
  cd den;
  if (pol == Polarization::TE) {
    num = (ei - ej) * s;
    den = gi + gj;
  } else {
    num = (ej - ei) * (k2 * (ei + ej) + ei * ej * s);
    den = ej * gi + ei * gj;
  }
  if (den == cd(0.0, 0.0)) {
    if (num == cd(0.0, 0.0)) return {0.0, 0.0};
    throw SingularCoefficientError("Fresnel denominator vanishes (" + to_string(pol) + ")");
  }
  return num / (den * den);
}

}  // namespace

cd gamma(double k, FrequencyPoint fp, cd eps) { return branch_sqrt(cd(k * k, 0.0) + eps * axis_s(fp)); }

cd fresnel(Polarization pol, double k, FrequencyPoint fp, const Permittivity& eps_i, const Permittivity& eps_j) {
  if (eps_i.perfect && eps_j.perfect) throw ValidationError("reflection between two perfect mirrors is undefined");
  if (eps_j.perfect) return pol == Polarization::TM ? cd(1.0) : cd(-1.0);
  if (eps_i.perfect) return pol == Polarization::TM ? cd(-1.0) : cd(1.0);
  const double s = axis_s(fp);
  const cd gi = gamma(k, fp, eps_i.eps);
  const cd gj = gamma(k, fp, eps_j.eps);
  return reflect(pol, k * k, s, eps_i.eps, eps_j.eps, gi, gj);
}

cd mode_condition(Polarization pol, const HalfSpacePair& pair, double k, FrequencyPoint fp) {
  const Permittivity vac{};
  const cd r1 = fresnel(pol, k, fp, vac, sample(pair.medium1, fp));
  const cd r2 = fresnel(pol, k, fp, vac, sample(pair.medium2, fp));
  const cd g0 = gamma(k, fp, cd(1.0));
  return 1.0 - r1 * r2 * std::exp(-2.0 * g0 * pair.separation);
}

double static_reflection(Polarization pol, const StaticResponse& s, double k) {
  using Kind = StaticResponse::Kind;
  if (pol == Polarization::TM) {
    if (s.kind == Kind::Dielectric) return (s.eps0 - 1.0) / (s.eps0 + 1.0);
    return 1.0;
  }
  switch (s.kind) {
    case Kind::Perfect: return -1.0;
    case Kind::Plasma: {
      const double kp = s.plasma_frequency / c;
      const double root = std::sqrt(k * k + kp * kp);
      return -(kp * kp) / ((k + root) * (k + root));
    }
    default: return 0.0;
  }
}

ImagAxisPair ImagAxisPair::at(const HalfSpacePair& pair, double xi) {
  ImagAxisPair p;
  p.xi_ = xi;
  p.s2c_ = (xi / c) * (xi / c);
  auto side = [&](const DielectricModel& m) {
    Side s;
    if (is_perfect_reflector(m)) s.perfect = true;
    else s.eps = eval_eps_imag_axis(m, xi);
    return s;
  };
  p.s1_ = side(pair.medium1);
  p.s2_ = side(pair.medium2);
  return p;
}

ImagAxisPair ImagAxisPair::zero_frequency(const HalfSpacePair& pair) {
  ImagAxisPair p;
  auto side = [](const DielectricModel& m) {
    Side s;
    s.is_static = true;
    s.st = static_response(m);
    return s;
  };
  p.s1_ = side(pair.medium1);
  p.s2_ = side(pair.medium2);
  return p;
}

double ImagAxisPair::reflect(const Side& s, Polarization pol, double q) const {
  if (s.perfect) return pol == Polarization::TM ? 1.0 : -1.0;
  if (s.is_static) return static_reflection(pol, s.st, q);
  const double e = s.eps;
  const double gj = std::sqrt(q * q + (e - 1.0) * s2c_);
  if (pol == Polarization::TE) {
    const double den = q + gj;
    return -(e - 1.0) * s2c_ / (den * den);
  }
  const double den = e * q + gj;
  return (e - 1.0) * ((e + 1.0) * q * q - s2c_) / (den * den);
}

std::array<double, 2> ImagAxisPair::products(double q) const {
  return {reflect(s1_, Polarization::TM, q) * reflect(s2_, Polarization::TM, q),
          reflect(s1_, Polarization::TE, q) * reflect(s2_, Polarization::TE, q)};
}

std::array<cd, 2> reflection_real_axis(const Permittivity& eps, cd gamma0, double w2) {
  if (eps.perfect) return {cd(1.0), cd(-1.0)};
  const cd e = eps.eps;
  const cd em1 = e - 1.0;
  const cd gj = branch_sqrt(gamma0 * gamma0 - em1 * w2);
  const cd den_te = gamma0 + gj;
  const cd den_tm = e * gamma0 + gj;
  if (den_te == cd(0.0) || den_tm == cd(0.0)) {
    if (em1 == cd(0.0)) return {cd(0.0), cd(0.0)};
    throw SingularCoefficientError("Fresnel denominator vanishes on the real axis");
  }
  return {em1 * ((e + 1.0) * gamma0 * gamma0 + w2) / (den_tm * den_tm), em1 * w2 / (den_te * den_te)};
}

RealAxisSample real_axis_sample(const Permittivity& e1, const Permittivity& e2, double k, double omega) {
  const FrequencyPoint fp{Axis::Real, omega};
  const Permittivity vac{};
  RealAxisSample out;
  out.gamma0 = gamma(k, fp, cd(1.0));
  for (int p = 0; p < 2; ++p) {
    const auto pol = p == 0 ? Polarization::TM : Polarization::TE;
    out.product[p] = fresnel(pol, k, fp, vac, e1) * fresnel(pol, k, fp, vac, e2);
  }
  return out;
}

namespace {

double lossless_plasma_frequency(const DielectricModel& m) {
  if (const auto* p = std::get_if<Plasma>(&m)) return p->plasma_frequency;
  if (const auto* d = std::get_if<Drude>(&m)) {
    if (d->relaxation == 0.0) return d->plasma_frequency;
  }
  throw ValidationError("dispersion_solve needs lossless plasma-type media (Plasma or Drude with zero relaxation)");
}

struct DispersionFunction {
  double wp1;
  double wp2;
  double d;
  double k;
  Polarization pol;

  // Evanescent side, omega < ck: everything is real, and the numerator form
  // D1 D2 - N1 N2 exp(-2 g0 d) avoids the single-interface poles of r.
  double evanescent(double w) const {
    const double g0 = std::sqrt(std::max(k * k - (w / c) * (w / c), 0.0));
    const double e = std::exp(-2.0 * g0 * d);
    auto nd = [&](double wp, double& n, double& dd) {
      const double eps = 1.0 - (wp / w) * (wp / w);
      const double gj = std::sqrt(k * k + (wp * wp - w * w) / (c * c));
      if (pol == Polarization::TE) {
        n = g0 - gj;
        dd = g0 + gj;
      } else {
        n = eps * g0 - gj;
        dd = eps * g0 + gj;
      }
    };
    double n1;
    double d1;
    double n2;
    double d2;
    nd(wp1, n1, d1);
    nd(wp2, n2, d2);
    return d1 * d2 - n1 * n2 * e;
  }

  // Identical media: f factors into D - s N exp(-g0 d), s = +-1 (symmetric and
  // antisymmetric branches). The product form has a double root once the
  // exponential underflows, so each factor is scanned on its own.
  double evanescent_branch(double w, double s) const {
    const double g0 = std::sqrt(std::max(k * k - (w / c) * (w / c), 0.0));
    const double eps = 1.0 - (wp1 / w) * (wp1 / w);
    const double gj = std::sqrt(k * k + (wp1 * wp1 - w * w) / (c * c));
    const double a = pol == Polarization::TE ? g0 : eps * g0;
    return (a + gj) - s * (a - gj) * std::exp(-g0 * d);
  }

  // Propagating side, ck < omega < sqrt(wp^2 + c^2 k^2): both |r| = 1 and
  // f = 0 exactly when phi1 + phi2 + p d is a multiple of pi.
  double propagating(double w) const {
    const double p = std::sqrt(std::max((w / c) * (w / c) - k * k, 0.0));
    auto phi = [&](double wp) {
      const double eps = 1.0 - (wp / w) * (wp / w);
      const double gj = std::sqrt(std::max(k * k + (wp * wp - w * w) / (c * c), 0.0));
      const double a = pol == Polarization::TE ? p : eps * p;
      return std::atan2(a, gj);
    };
    return std::sin(phi(wp1) + phi(wp2) + p * d);
  }
};

template <class F>
std::vector<double> bracket_roots(const F& f, double lo, double hi, std::size_t n, double rel_tol,
                                  bool log_grid = true) {
  std::vector<double> roots;
  if (!(hi > lo) || !(lo > 0.0)) return roots;
  const double step = log_grid ? std::log(hi / lo) / static_cast<double>(n) : (hi - lo) / static_cast<double>(n);
  double a = lo;
  double fa = f(a);
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = step * static_cast<double>(i);
    const double b = i == n ? hi : log_grid ? lo * std::exp(t) : lo + t;
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double x0 = a;
      double x1 = b;
      double f0 = fa;
      while (x1 - x0 > rel_tol * x1) {
        const double m = 0.5 * (x0 + x1);
        const double fm = f(m);
        if (fm == 0.0) {
          x0 = x1 = m;
          break;
        }
        if ((fm < 0.0) == (f0 < 0.0)) {
          x0 = m;
          f0 = fm;
        } else {
          x1 = m;
        }
      }
      roots.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

std::vector<DispersionRoot> dispersion_solve(const HalfSpacePair& pair, Polarization pol, double k,
                                             const DispersionOptions& opts) {
  if (!(k > 0.0)) throw ValidationError("dispersion_solve needs k > 0");
  if (!(pair.separation > 0.0)) throw ValidationError("separation must be positive");
  if (opts.brackets_per_decade < 1000) throw ValidationError("dispersion_solve needs at least 1000 brackets per decade");
  const double wp1 = lossless_plasma_frequency(pair.medium1);
  const double wp2 = lossless_plasma_frequency(pair.medium2);
  const DispersionFunction fn{wp1, wp2, pair.separation, k, pol};

  const double light = c * k;
  const double top = std::sqrt(std::min(wp1, wp2) * std::min(wp1, wp2) + light * light);
  const double lo = top * std::pow(10.0, -opts.decades);
  const double edge = 1e-12;

  auto scan = [&](int per_decade) {
    std::vector<DispersionRoot> out;
    auto region = [&](double a, double b, ModeClass mode) {
      if (!(b > a)) return;
      const double decades = std::log10(b / a);
      const auto n = static_cast<std::size_t>(std::ceil(std::max(decades, 0.05) * per_decade));
      auto f = [&](double w) { return mode == ModeClass::Evanescent ? fn.evanescent(w) : fn.propagating(w); };
      for (double w : bracket_roots(f, a, b, n, opts.rel_tol)) out.push_back({k, w, pol, mode});
    };
    const double wt = std::min(light, top) * (1.0 - edge);
    if (wp1 == wp2) {
      const auto n = static_cast<std::size_t>(std::ceil(std::max(std::log10(wt / lo), 0.05) * per_decade));
      for (double s : {1.0, -1.0}) {
        auto f = [&](double w) { return fn.evanescent_branch(w, s); };
        for (double w : bracket_roots(f, lo, wt, n, opts.rel_tol)) out.push_back({k, w, pol, ModeClass::Evanescent});
      }
    } else {
      region(lo, wt, ModeClass::Evanescent);
    }
    // Guided modes are spaced by about pi/d in the vacuum wavenumber p, which
    // at large k packs them into a sliver of frequency: scan uniformly in p.
    const double wa = std::max(light * (1.0 + edge), lo);
    const double wb = top * (1.0 - edge);
    if (wb > wa) {
      auto p_of = [&](double w) { return std::sqrt(std::max((w / c) * (w / c) - k * k, 0.0)); };
      const double pa = p_of(wa);
      const double pb = p_of(wb);
      const double log_count = std::max(std::log10(wb / wa), 0.05) * per_decade;
      const double phase_count = (pb - pa) * pair.separation / std::numbers::pi * (per_decade / 20.0);
      const auto n = static_cast<std::size_t>(std::ceil(std::max(log_count, phase_count)));
      auto f = [&](double pv) { return fn.propagating(c * std::sqrt(pv * pv + k * k)); };
      for (double pr : bracket_roots(f, pa, pb, n, opts.rel_tol, false)) {
        out.push_back({k, c * std::sqrt(pr * pr + k * k), pol, ModeClass::Propagating});
      }
    }
    return out;
  };

  const auto coarse = scan(opts.brackets_per_decade);
  auto fine = scan(2 * opts.brackets_per_decade);
  if (coarse.size() != fine.size()) {
    throw RefinementError("dispersion root count changed under grid refinement (" + std::to_string(coarse.size()) +
                              " vs " + std::to_string(fine.size()) + ")",
                          static_cast<double>(fine.size()));
  }
  std::sort(fine.begin(), fine.end(), [](const DispersionRoot& a, const DispersionRoot& b) { return a.omega < b.omega; });
  return fine;
}

}  // namespace casimir
