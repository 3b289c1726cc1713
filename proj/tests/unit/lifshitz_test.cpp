#include <cmath>
#include <numbers>

#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

using namespace casimir;
using namespace casimir::constants;

namespace {

const DielectricModel gold = Drude{1.37e16, 5.32e13};
const DielectricModel plasma = Plasma{1.37e16};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

QuadratureSpec fast_real_axis() {
  QuadratureSpec q;
  q.real_axis_rel_tol = 1e-2;
  return q;
}

}  // namespace

TEST_CASE("ideal mirrors at zero temperature") {
  const QuadratureSpec q;
  for (double d : {1e-7, 1e-6, 1e-5}) {
    const HalfSpacePair p{PerfectReflector{}, PerfectReflector{}, d};
    const double e = -std::pow(pi, 2) * hbar * c / (720.0 * d * d * d);
    CHECK(rel(energy_T0(p, q).value, e) < 1e-6);
    CHECK(rel(pressure_T0(p, q).value, std::pow(pi, 2) * hbar * c / (240.0 * std::pow(d, 4))) < 1e-6);
  }
  CHECK(ideal_pressure(1e-6) == doctest::Approx(1.3001e-3).epsilon(1e-4));
  CHECK(correction_factor(Quantity::Energy, ideal_energy(2e-6), 2e-6) == doctest::Approx(1.0));
  CHECK(pfa_sphere(-2.0, 0.5) == doctest::Approx(2.0 * pi));
}

TEST_CASE("TE and TM halves of the ideal energy") {
  const auto r = energy_T0({PerfectReflector{}, PerfectReflector{}, 1e-6}, {});
  CHECK(rel(r.tm, r.te) < 1e-9);
  CHECK(rel(r.tm + r.te, r.value) < 1e-14);
}

TEST_CASE("high-temperature limit of ideal mirrors") {
  // Only the n = 0 term survives: -(k_B T / 2) zeta(3) / (4 pi d^2) per polarization.
  const double d = 50e-6;
  const double T = 300.0;
  const auto r = free_energy_matsubara({PerfectReflector{}, PerfectReflector{}, d}, {T}, no_saturation(), {});
  CHECK(rel(r.value, -zeta3 * k_B * T / (8.0 * pi * d * d)) < 1e-3);
  // Drude metals lose the TE half.
  const auto g = free_energy_matsubara({gold, gold, d}, {T}, no_saturation(), {});
  CHECK(rel(g.value, -zeta3 * k_B * T / (16.0 * pi * d * d)) < 2e-2);
  CHECK(std::abs(g.te) < 0.02 * std::abs(g.tm));
}

TEST_CASE("zero-frequency term for Drude metals has no TE part") {
  const HalfSpacePair p{gold, gold, 1e-6};
  const auto t = matsubara_term(p, 0.0, Quantity::Energy, {1e-10, 0.0, 2000});
  CHECK(t[1] == 0.0);
  CHECK(t[0] == doctest::Approx(-zeta3).epsilon(1e-9));
  const auto pl = matsubara_term({plasma, plasma, 1e-6}, 0.0, Quantity::Energy, {1e-10, 0.0, 2000});
  CHECK(pl[1] < 0.0);
}

TEST_CASE("pressure is minus the derivative of the energy") {
  const QuadratureSpec q;
  const double d = 1e-6;
  const double h = 1e-3 * d;
  for (double T : {0.0, 300.0}) {
    auto energy = [&](double x) { return compute(Quantity::Energy, Route::Matsubara, {gold, gold, x}, {T}, no_saturation(), q).value; };
    const double numeric = -(energy(d + h) - energy(d - h)) / (2.0 * h);
    const double p = compute(Quantity::Pressure, Route::Matsubara, {gold, gold, d}, {T}, no_saturation(), q).value;
    // Sign convention: positive pressure is attraction, i.e. dE/dd > 0.
    CHECK(rel(-numeric, p) < 1e-5);
  }
}

TEST_CASE("plasma plates approach ideal mirrors with separation") {
  const QuadratureSpec q;
  double prev = 0.0;
  for (double d : {1e-7, 1e-6, 1e-5, 1e-4}) {
    const double f = correction_factor(Quantity::Energy, energy_T0({plasma, plasma, d}, q).value, d);
    CHECK(f > prev);
    CHECK(f < 1.0);
    prev = f;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("Matsubara sum at low temperature approaches the T = 0 integral") {
  const QuadratureSpec q;
  const HalfSpacePair p{plasma, plasma, 1e-6};
  CHECK(rel(free_energy_matsubara(p, {2.0}, no_saturation(), q).value, energy_T0(p, q).value) < 1e-5);
}

TEST_CASE("real-axis route at zero temperature") {
  const HalfSpacePair p{gold, gold, 2e-6};
  const auto q = fast_real_axis();
  const auto r = energy_real_axis(p, {0.0}, no_saturation(), q);
  CHECK(rel(r.value, energy_T0(p, QuadratureSpec{}).value) < 1e-2);
  REQUIRE(r.thermal.has_value());
  CHECK(r.thermal->total() == 0.0);
}

TEST_CASE("mode decomposition") {
  const HalfSpacePair p{gold, gold, 2e-6};
  const auto q = fast_real_axis();
  const auto base = thermal_correction_by_mode(p, {300.0}, no_saturation(), q);
  // The TE-evanescent part is positive (less binding) and dominant.
  CHECK(base.te_evanescent > 0.0);
  CHECK(base.te_evanescent > std::abs(base.tm()));
  const double dV = free_energy_matsubara(p, {300.0}, no_saturation(), {}).value - energy_T0(p, {}).value;
  CHECK(rel(base.total(), dV) < 2e-2);
  // A TE-evanescent scope leaves every TM slot untouched, bit for bit.
  const auto sat = thermal_correction_by_mode(p, {300.0}, shifted(0.5, SaturationScope::TEEvanescent), q);
  CHECK(sat.tm_propagating == base.tm_propagating);
  CHECK(sat.tm_evanescent == base.tm_evanescent);
  CHECK(sat.te_propagating == base.te_propagating);
  CHECK(sat.te_evanescent < base.te_evanescent);
}

TEST_CASE("preconditions") {
  const QuadratureSpec q;
  CHECK_THROWS_AS(energy_T0({gold, gold, 0.0}, q), ValidationError);
  CHECK_THROWS_AS(free_energy_matsubara({gold, gold, 1e-6}, {0.0}, no_saturation(), q), ValidationError);
  CHECK_THROWS_AS(free_energy_matsubara({gold, gold, 1e-6}, {300.0}, cutoff(10.0), q), IncompatibleScopeError);
  CHECK_THROWS_AS(energy_real_axis({plasma, plasma, 1e-6}, {300.0}, no_saturation(), q), ValidationError);
  QuadratureSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(energy_T0({gold, gold, 1e-6}, bad), ValidationError);
}
