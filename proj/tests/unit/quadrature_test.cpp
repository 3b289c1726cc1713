#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;
namespace q = casimir::quad;

TEST_CASE("adaptive Gauss-Kronrod") {
  const q::Tolerance tol{1e-12, 0.0, 2000};
  const auto r = q::integrate_scalar([](double x) { return std::exp(-x) * std::sin(3.0 * x); }, 0.0, 40.0, tol);
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(0.3).epsilon(1e-11));
  // Integrable endpoint singularity.
  const auto s = q::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 0.0, 5000});
  CHECK(s.value[0] == doctest::Approx(2.0).epsilon(1e-8));
  // Vector channels share nodes.
  const std::array<double, 3> bp{0.0, 1.0, 2.0};
  const auto v = q::integrate<2>([](double x) { return q::Vec<2>{x, x * x}; }, std::span<const double>(bp), tol);
  CHECK(v.value[0] == doctest::Approx(2.0));
  CHECK(v.value[1] == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("parallel panels give the same bits as serial ones") {
  const q::Tolerance tol{1e-13, 0.0, 4000};
  auto f = [](double x) { return q::Vec<1>{std::cos(50.0 * x) / (1.0 + x * x)}; };
  std::array<double, 9> bp{};
  for (std::size_t i = 0; i < bp.size(); ++i) bp[i] = static_cast<double>(i);
  const auto serial = q::integrate<1>(f, std::span<const double>(bp), tol);
  Executor ex(4);
  const auto threaded = q::integrate<1>(f, std::span<const double>(bp), tol, &ex);
  CHECK(serial.value[0] == threaded.value[0]);
  CHECK(serial.evaluations == threaded.evaluations);
}

TEST_CASE("Gauss-Laguerre") {
  q::Vec<2> out{};
  const bool ok = q::laguerre_pair<2>([](double t) { return q::Vec<2>{t * t * t, std::exp(-t)}; }, {1e-12, 0.0, 1}, out);
  CHECK(ok);
  CHECK(out[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(0.5).epsilon(1e-12));
  // A sharply peaked integrand is not resolved and asks for the fallback.
  q::Vec<1> peaked{};
  CHECK_FALSE(q::laguerre_pair<1>([](double t) { return q::Vec<1>{1.0 / (1e-4 + (t - 7.3) * (t - 7.3))}; },
                                  {1e-8, 0.0, 1}, peaked));
}

TEST_CASE("phase unwrapping follows a winding argument") {
  // arg(exp(i a x)) over [0, 1] unwraps to a x; the integral of x * 1 is a / 2.
  const double a = 40.0;
  auto f = [&](double x) {
    q::PhaseSample<1> s;
    s.scale = {1.0};
    s.phase = {std::arg(std::polar(1.0, a * x))};
    return s;
  };
  const std::array<double, 2> bp{0.0, 1.0};
  const auto r = q::integrate_unwrapped<1>(f, std::span<const double>(bp), q::Vec<1>{0.0}, 1e-10);
  CHECK(r.converged);
  CHECK(r.end_phase[0] == doctest::Approx(a).epsilon(1e-12));
  CHECK(r.value[0] == doctest::Approx(a / 2.0).epsilon(1e-9));
  // Starting phase offsets carry through.
  const auto s = q::integrate_unwrapped<1>(f, std::span<const double>(bp), q::Vec<1>{2.0 * std::numbers::pi}, 1e-10);
  CHECK(s.end_phase[0] == doctest::Approx(a + 2.0 * std::numbers::pi).epsilon(1e-12));
}
