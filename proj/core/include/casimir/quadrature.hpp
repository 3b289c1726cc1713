#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "casimir/parallel.hpp"

// Adaptive Gauss-Kronrod machinery shared by every route. All integrands are
// vector valued (std::array<double, N>) so that polarization and mode-class
// channels are integrated on one set of nodes.
namespace casimir::quad {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Tolerance {
  double rel = 1e-8;
  double abs = 0.0;
  std::size_t max_panels = 20000;
};

template <std::size_t N>
struct Result {
  Vec<N> value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292358383, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

// Ascending list of the 21 abscissae mapped to [a, b].
inline std::array<double, 21> kronrod_abscissae(double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 21> x{};
  for (std::size_t j = 0; j < 10; ++j) {
    x[j] = c - h * kKronrodNodes[j];
    x[20 - j] = c + h * kKronrodNodes[j];
  }
  x[10] = c;
  return x;
}

// Kronrod weight of ascending abscissa i, and Gauss weight (0 if not a Gauss node).
inline double kronrod_weight(std::size_t i) {
  const std::size_t j = i <= 10 ? i : 20 - i;
  return kKronrodWeights[j];
}
inline double gauss_weight(std::size_t i) {
  const std::size_t j = i <= 10 ? i : 20 - i;
  if (j % 2 == 1) return kGaussWeights[j / 2];
  return 0.0;
}

template <std::size_t N>
double norm1(const Vec<N>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Vec<N> value{};
  double error = 0.0;
};

template <std::size_t N, class F>
void apply_rule(F& f, Panel<N>& p) {
  const auto x = kronrod_abscissae(p.a, p.b);
  const double h = 0.5 * (p.b - p.a);
  Vec<N> k{};
  Vec<N> g{};
  for (std::size_t i = 0; i < 21; ++i) {
    const Vec<N> y = f(x[i]);
    const double wk = kronrod_weight(i);
    const double wg = gauss_weight(i);
    for (std::size_t c = 0; c < N; ++c) {
      k[c] += wk * y[c];
      g[c] += wg * y[c];
    }
  }
  double err = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    k[c] *= h;
    g[c] *= h;
    err += std::abs(k[c] - g[c]);
  }
  p.value = k;
  p.error = err;
}

}  // namespace detail

// Globally adaptive integration over the partition given by `breakpoints`
// (ascending, at least two entries). Refinement proceeds in rounds: every panel
// whose error exceeds its share of the target is bisected. Panels of a round are
// evaluated on `executor` when one is supplied; sums are always formed in
// left-to-right panel order, so the result does not depend on worker count.
template <std::size_t N, class F>
Result<N> integrate(F&& f, std::span<const double> breakpoints, const Tolerance& tol,
                    Executor* executor = nullptr) {
  using detail::Panel;
  std::vector<Panel<N>> panels;
  panels.reserve(breakpoints.size() * 4);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) panels.push_back({breakpoints[i], breakpoints[i + 1], {}, 0.0});
  }
  Result<N> out;
  if (panels.empty()) return out;

  auto evaluate = [&](std::vector<Panel<N>>& ps, std::span<const std::size_t> which) {
    for_each_index(executor, which.size(), [&](std::size_t i) { detail::apply_rule<N>(f, ps[which[i]]); });
    out.evaluations += 21 * which.size();
  };
  {
    std::vector<std::size_t> all(panels.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    evaluate(panels, all);
  }

  for (;;) {
    Vec<N> total{};
    double err = 0.0;
    for (const auto& p : panels) {
      for (std::size_t c = 0; c < N; ++c) total[c] += p.value[c];
      err += p.error;
    }
    out.value = total;
    out.error = err;
    const double target = std::max(tol.abs, tol.rel * detail::norm1<N>(total));
    if (err <= target) break;
    if (panels.size() >= tol.max_panels) {
      out.converged = false;
      break;
    }
    const double share = target / static_cast<double>(panels.size());
    double worst = 0.0;
    for (const auto& p : panels) worst = std::max(worst, p.error);
    std::vector<Panel<N>> next;
    std::vector<std::size_t> fresh;
    next.reserve(panels.size() * 2);
    std::size_t budget = tol.max_panels - panels.size();
    for (const auto& p : panels) {
      const double mid = 0.5 * (p.a + p.b);
      const bool splittable = mid > p.a && mid < p.b;
      if (budget > 0 && splittable && (p.error > share || p.error == worst)) {
        --budget;
        fresh.push_back(next.size());
        next.push_back({p.a, mid, {}, 0.0});
        fresh.push_back(next.size());
        next.push_back({mid, p.b, {}, 0.0});
      } else {
        next.push_back(p);
      }
    }
    if (fresh.empty()) {
      out.converged = false;
      break;
    }
    panels = std::move(next);
    evaluate(panels, fresh);
  }
  return out;
}

template <std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, const Tolerance& tol, Executor* executor = nullptr) {
  const std::array<double, 2> bp{a, b};
  return integrate<N>(std::forward<F>(f), std::span<const double>(bp), tol, executor);
}

// Scalar convenience wrapper.
template <class F>
Result<1> integrate_scalar(F&& f, std::span<const double> breakpoints, const Tolerance& tol,
                           Executor* executor = nullptr) {
  auto g = [&f](double x) { return Vec<1>{f(x)}; };
  return integrate<1>(g, breakpoints, tol, executor);
}

template <class F>
Result<1> integrate_scalar(F&& f, double a, double b, const Tolerance& tol) {
  const std::array<double, 2> bp{a, b};
  return integrate_scalar(std::forward<F>(f), std::span<const double>(bp), tol);
}

// Integration of scale(x) * arg f(x) where arg f must be continued through the
// 2 pi wraps of the principal branch. The integrand returns, per channel, the
// scale and the principal-branch phase in (-pi, pi]. Panels are processed
// strictly left to right so the running phase can be unwrapped node by node; a
// panel is also refined whenever two neighbouring nodes differ by more than
// max_phase_step, which keeps the unwrap unambiguous.
template <std::size_t N>
struct PhaseSample {
  Vec<N> scale{};
  Vec<N> phase{};
};

template <std::size_t N>
struct UnwrappedResult {
  Vec<N> value{};
  Vec<N> end_phase{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

inline double unwrap_to(double reference, double principal) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return reference + std::remainder(principal - reference, two_pi);
}

template <std::size_t N, class F>
struct UnwrapRecursion {
  F& f;
  double tol_density;
  int max_depth;
  double max_phase_step;
  UnwrappedResult<N>& out;

  Vec<N> panel(double a, double b, const Vec<N>& phase_a, int depth) {
    const auto x = kronrod_abscissae(a, b);
    std::array<PhaseSample<N>, 21> s;
    for (std::size_t i = 0; i < 21; ++i) s[i] = f(x[i]);
    PhaseSample<N> end = f(b);
    out.evaluations += 22;

    Vec<N> prev = phase_a;
    double step = 0.0;
    for (std::size_t i = 0; i < 21; ++i) {
      for (std::size_t c = 0; c < N; ++c) {
        const double u = unwrap_to(prev[c], s[i].phase[c]);
        step = std::max(step, std::abs(u - prev[c]));
        s[i].phase[c] = u;
        prev[c] = u;
      }
    }
    Vec<N> phase_b{};
    for (std::size_t c = 0; c < N; ++c) {
      phase_b[c] = unwrap_to(prev[c], end.phase[c]);
      step = std::max(step, std::abs(phase_b[c] - prev[c]));
    }

    const double h = 0.5 * (b - a);
    Vec<N> k{};
    Vec<N> g{};
    for (std::size_t i = 0; i < 21; ++i) {
      const double wk = kronrod_weight(i);
      const double wg = gauss_weight(i);
      for (std::size_t c = 0; c < N; ++c) {
        const double y = s[i].scale[c] * s[i].phase[c];
        k[c] += wk * y;
        g[c] += wg * y;
      }
    }
    double err = 0.0;
    for (std::size_t c = 0; c < N; ++c) err += std::abs(h * (k[c] - g[c]));

    const double mid = 0.5 * (a + b);
    const bool can_split = depth < max_depth && mid > a && mid < b;
    if (can_split && (err > tol_density * (b - a) || step > max_phase_step)) {
      const Vec<N> phase_mid = panel(a, mid, phase_a, depth + 1);
      return panel(mid, b, phase_mid, depth + 1);
    }
    if (err > tol_density * (b - a) || step > max_phase_step) out.converged = false;
    for (std::size_t c = 0; c < N; ++c) out.value[c] += h * k[c];
    out.error += err;
    return phase_b;
  }
};

}  // namespace detail

template <std::size_t N, class F>
UnwrappedResult<N> integrate_unwrapped(F&& f, std::span<const double> breakpoints, const Vec<N>& start_phase,
                                       double abs_tol, int max_depth = 40,
                                       double max_phase_step = 0.5 * std::numbers::pi) {
  UnwrappedResult<N> out;
  if (breakpoints.size() < 2) return out;
  const double span = breakpoints.back() - breakpoints.front();
  if (!(span > 0.0)) return out;
  detail::UnwrapRecursion<N, std::remove_reference_t<F>> rec{f, abs_tol / span, max_depth, max_phase_step, out};
  Vec<N> phase = start_phase;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) phase = rec.panel(breakpoints[i], breakpoints[i + 1], phase, 0);
  }
  out.end_phase = phase;
  return out;
}

// Gauss-Laguerre rule of order n for weight exp(-x) on [0, inf).
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const LaguerreRule& gauss_laguerre(std::size_t n);

// Integral over [0, inf) of exp(-t) g(t) by Gauss-Laguerre of two orders. Returns
// false (and leaves `value` as the higher-order estimate) when the orders disagree
// by more than the tolerance, signalling the caller to fall back to adaptive GK.
template <std::size_t N, class G>
bool laguerre_pair(G&& g, const Tolerance& tol, Vec<N>& value) {
  const auto& lo = gauss_laguerre(32);
  const auto& hi = gauss_laguerre(48);
  Vec<N> a{};
  Vec<N> b{};
  for (std::size_t i = 0; i < lo.nodes.size(); ++i) {
    const Vec<N> y = g(lo.nodes[i]);
    for (std::size_t c = 0; c < N; ++c) a[c] += lo.weights[i] * y[c];
  }
  for (std::size_t i = 0; i < hi.nodes.size(); ++i) {
    const Vec<N> y = g(hi.nodes[i]);
    for (std::size_t c = 0; c < N; ++c) b[c] += hi.weights[i] * y[c];
  }
  value = b;
  double diff = 0.0;
  for (std::size_t c = 0; c < N; ++c) diff += std::abs(a[c] - b[c]);
  return diff <= std::max(tol.abs, tol.rel * detail::norm1<N>(b));
}

}  // namespace casimir::quad
