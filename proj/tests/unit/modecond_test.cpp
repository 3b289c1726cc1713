#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/modecond.hpp"

using namespace casimir;
using cd = std::complex<double>;
using constants::c;

namespace {

constexpr double wp = 1.37e16;
constexpr double gam = 5.32e13;

FrequencyPoint imag(double xi) { return {Axis::Imaginary, xi}; }
FrequencyPoint real(double w) { return {Axis::Real, w}; }

}  // namespace

TEST_CASE("gamma branches") {
  CHECK(std::abs(gamma(3.0, imag(0.0), 1.0) - cd(3.0)) < 1e-15);
  // Vacuum below the light line: real and positive.
  const double k = 2e7;
  const double w = 0.5 * c * k;
  const auto g = gamma(k, real(w), 1.0);
  CHECK(std::abs(g.imag()) == 0.0);
  CHECK(g.real() == doctest::Approx(std::sqrt(k * k - (w / c) * (w / c))));
  // Above it: -i p, so exp(-2 gamma d) is an outgoing phase.
  const auto h = gamma(k, real(2.0 * c * k), 1.0);
  CHECK(h.real() == 0.0);
  CHECK(h.imag() < 0.0);
  CHECK(h.imag() == doctest::Approx(-std::sqrt(3.0) * k));
  // Lossy medium: Re gamma >= 0.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const cd eps(std::pow(10.0, u(rng)) * (u(rng) < 0 ? -1.0 : 1.0), std::pow(10.0, u(rng)));
    const auto gg = gamma(std::pow(10.0, 6.0 + u(rng)), real(std::pow(10.0, 14.0 + u(rng))), eps);
    CHECK(gg.real() >= 0.0);
  }
}

TEST_CASE("fresnel coefficients against the textbook forms") {
  const Permittivity vac{};
  for (double eps : {1.5, 4.0, 80.0}) {
    const Permittivity m{cd(eps)};
    // Normal incidence on the imaginary axis: r_TE = (1 - n)/(1 + n), r_TM = -r_TE.
    const double n = std::sqrt(eps);
    const auto te = fresnel(Polarization::TE, 0.0, imag(1e14), vac, m);
    const auto tm = fresnel(Polarization::TM, 0.0, imag(1e14), vac, m);
    CHECK(te.real() == doctest::Approx((1.0 - n) / (1.0 + n)).epsilon(1e-13));
    CHECK(tm.real() == doctest::Approx(-te.real()).epsilon(1e-13));
    // Oblique: direct quotient forms.
    const double k = 3e6;
    const double xi = 5e14;
    const double g0 = std::sqrt(k * k + xi * xi / (c * c));
    const double g1 = std::sqrt(k * k + eps * xi * xi / (c * c));
    CHECK(fresnel(Polarization::TE, k, imag(xi), vac, m).real() == doctest::Approx((g0 - g1) / (g0 + g1)).epsilon(1e-13));
    CHECK(fresnel(Polarization::TM, k, imag(xi), vac, m).real() ==
          doctest::Approx((eps * g0 - g1) / (eps * g0 + g1)).epsilon(1e-13));
  }
  CHECK(std::abs(fresnel(Polarization::TE, 1e6, imag(1e14), vac, vac)) == 0.0);
  const Permittivity mirror{cd(1.0), true};
  CHECK(fresnel(Polarization::TM, 1e6, imag(1e14), vac, mirror) == cd(1.0));
  CHECK(fresnel(Polarization::TE, 1e6, imag(1e14), vac, mirror) == cd(-1.0));
}

TEST_CASE("real-axis reflection matches the quotient form") {
  const cd eps = 1.0 - wp * wp / (3e15 * cd(3e15, gam));
  const double w = 3e15;
  const double w2 = (w / c) * (w / c);
  for (double k : {1e6, 0.9 * w / c, 1.1 * w / c, 1e8}) {
    const cd g0 = gamma(k, real(w), 1.0);
    const cd g1 = gamma(k, real(w), eps);
    const auto r = reflection_real_axis(Permittivity{eps}, g0, w2);
    CHECK(std::abs(r[0] - (eps * g0 - g1) / (eps * g0 + g1)) < 1e-12);
    CHECK(std::abs(r[1] - (g0 - g1) / (g0 + g1)) < 1e-12);
  }
}

TEST_CASE("mode condition") {
  const HalfSpacePair ideal{PerfectReflector{}, PerfectReflector{}, 1e-6};
  const double k = 2e6;
  const double xi = 1e14;
  const double g0 = std::sqrt(k * k + xi * xi / (c * c));
  const double ref = 1.0 - std::exp(-2.0 * g0 * 1e-6);
  CHECK(mode_condition(Polarization::TM, ideal, k, imag(xi)).real() == doctest::Approx(ref).epsilon(1e-13));
  CHECK(mode_condition(Polarization::TE, ideal, k, imag(xi)).real() == doctest::Approx(ref).epsilon(1e-13));
  const HalfSpacePair empty{vacuum(), vacuum(), 1e-6};
  CHECK(mode_condition(Polarization::TM, empty, k, imag(xi)) == cd(1.0));
}

TEST_CASE("zero-frequency reflection") {
  // Drude: eps -> inf but eps xi^2 -> 0, so TE vanishes while TM is 1.
  const auto drude = static_response(Drude{wp, gam});
  CHECK(static_reflection(Polarization::TM, drude, 1e6) == 1.0);
  CHECK(static_reflection(Polarization::TE, drude, 1e6) == 0.0);
  const auto mirror = static_response(PerfectReflector{});
  CHECK(static_reflection(Polarization::TE, mirror, 1e6) == -1.0);
  const auto diel = static_response(OscillatorSet{{{2.8, 1.88e14, 0.0}}});
  CHECK(static_reflection(Polarization::TM, diel, 1e6) == doctest::Approx(2.8 / 4.8));
  CHECK(static_reflection(Polarization::TE, diel, 1e6) == 0.0);
  // Plasma: TE from the penetration depth, (k - sqrt(k^2 + wp^2/c^2)) / (k + ...).
  const auto plasma = static_response(Plasma{wp});
  const double k = 1e7;
  const double q = std::sqrt(k * k + wp * wp / (c * c));
  CHECK(static_reflection(Polarization::TE, plasma, k) == doctest::Approx((k - q) / (k + q)).epsilon(1e-13));
  // The xi -> 0 limit of the imaginary-axis coefficient agrees with it.
  const auto te = fresnel(Polarization::TE, k, imag(1.0), Permittivity{}, Permittivity{cd(1.0 + wp * wp)});
  CHECK(te.real() == doctest::Approx((k - q) / (k + q)).epsilon(1e-9));
}

TEST_CASE("lossless dispersion") {
  const HalfSpacePair p{Plasma{wp}, Plasma{wp}, 1e-6};
  const double wsp = wp / std::sqrt(2.0);
  // Both coupled surface-plasmon branches flatten at wp / sqrt(2).
  const auto tm = dispersion_solve(p, Polarization::TM, 50.0 * wp / c);
  int evanescent = 0;
  for (const auto& r : tm) {
    if (r.mode == ModeClass::Evanescent) {
      ++evanescent;
      CHECK(std::abs(r.omega / wsp - 1.0) < 1e-3);
    }
  }
  CHECK(evanescent == 2);
  // Below the light line the branches split; one is under c k.
  for (double k : {1e5, 1e6, 1e7}) {
    for (const auto& r : dispersion_solve(p, Polarization::TE, k)) CHECK(r.mode == ModeClass::Propagating);
    for (const auto& r : dispersion_solve(p, Polarization::TM, k)) {
      CHECK(r.omega > 0.0);
      if (r.mode == ModeClass::Evanescent) CHECK(r.omega < c * k);
    }
  }
  // Guided modes: phases of the two mirrors plus p d hit multiples of pi.
  const auto te = dispersion_solve(p, Polarization::TE, 1e6);
  REQUIRE(!te.empty());
  for (std::size_t i = 1; i < te.size(); ++i) CHECK(te[i].omega > te[i - 1].omega);
  CHECK_THROWS_AS(dispersion_solve(HalfSpacePair{Drude{wp, gam}, Drude{wp, gam}, 1e-6}, Polarization::TM, 1e6),
                  ValidationError);
  CHECK_THROWS_AS(dispersion_solve(p, Polarization::TM, -1.0), ValidationError);
}
