#include "casimir/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "casimir/errors.hpp"

namespace casimir::quad {

namespace {

// Newton iteration on L_n with the classic asymptotic starting guesses.
LaguerreRule build_laguerre(std::size_t n) {
  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double dn = static_cast<double>(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * dn);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * dn);
    } else {
      const double ai = static_cast<double>(i - 1);
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0;
    double p2 = 0.0;
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = ((2.0 * dj + 1.0 - z) * p2 - dj * p3) / (dj + 1.0);
      }
      pp = (dn * p1 - dn * p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::abs(z)) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (pp * dn * p2);
  }
  return rule;
}

}  // namespace

const LaguerreRule& gauss_laguerre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, LaguerreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (n == 0 || n > 128) throw ValidationError("Gauss-Laguerre order must be in [1, 128]");
    it = cache.emplace(n, build_laguerre(n)).first;
  }
  return it->second;
}

}  // namespace casimir::quad
