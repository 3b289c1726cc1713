#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "casimir/interpolation.hpp"

using casimir::MonotoneCubic;

TEST_CASE("monotone cubic reproduces knots and linear data") {
  const std::vector<double> x{0.0, 1.0, 2.5, 4.0, 7.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v - 2.0);
  const MonotoneCubic f(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == doctest::Approx(y[i]));
  for (double t = 0.0; t <= 7.0; t += 0.37) CHECK(f(t) == doctest::Approx(3.0 * t - 2.0));
  // Outside the knots the end values are held.
  CHECK(f(-1.0) == doctest::Approx(y.front()));
  CHECK(f(9.0) == doctest::Approx(y.back()));
}

TEST_CASE("monotone data stays monotone between knots") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> step(0.01, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x{0.0};
    std::vector<double> y{0.0};
    for (int i = 0; i < 12; ++i) {
      x.push_back(x.back() + step(rng));
      // Occasional flat runs are the classic overshoot trap.
      y.push_back(y.back() + (i % 4 == 0 ? 0.0 : step(rng) * step(rng)));
    }
    const MonotoneCubic f(x, y);
    double prev = f(x.front());
    for (double t = x.front(); t <= x.back(); t += 0.003) {
      const double v = f(t);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("few knots fall back to linear") {
  const MonotoneCubic f({1.0, 3.0}, {2.0, 6.0});
  CHECK(f(2.0) == doctest::Approx(4.0));
}
