#include <cmath>
#include <numbers>

#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/saturation.hpp"

using namespace casimir;
using constants::hbar;
using constants::k_B;

TEST_CASE("distributions") {
  const double T = 300.0;
  const double beta = beta_of(T);
  const double w = 2.0 * k_B * T / hbar;
  CHECK(bose(w, beta) == doctest::Approx(1.0 / (std::exp(2.0) - 1.0)).epsilon(1e-14));
  CHECK(shifted_distribution(w, beta, 0.0) == bose(w, beta));
  CHECK(shifted_distribution(w, beta, 0.5) == doctest::Approx(1.0 / (std::exp(2.5) - 1.0)).epsilon(1e-14));
  // D > 0 removes the pole at zero frequency.
  CHECK(shifted_distribution(0.0, beta, 0.1) == doctest::Approx(1.0 / std::expm1(0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(bose(0.0, beta), DivergenceError);
  CHECK_THROWS_AS(shifted_distribution(0.0, beta, 0.0), DivergenceError);
  // The cap only bites where n exceeds it.
  CHECK(cutoff_distribution(w, beta, 100.0) == bose(w, beta));
  CHECK(cutoff_distribution(1e-6 * w, beta, 100.0) == 100.0);
  CHECK(cutoff_distribution(0.0, beta, 3.0) == 3.0);
}

TEST_CASE("shifted occupation decreases with D and tends to Bose as D -> 0") {
  const double beta = beta_of(295.0);
  for (double w : {1e10, 1e12, 1e13, 1e14}) {
    double prev = bose(w, beta);
    for (double D : {1e-6, 1e-3, 0.01, 0.1, 1.0, 10.0}) {
      const double n = shifted_distribution(w, beta, D);
      CHECK(n < prev);
      prev = n;
    }
    // First order in D: n - D n (n + 1).
    const double n = bose(w, beta);
    CHECK(std::abs(shifted_distribution(w, beta, 1e-12) - (n - 1e-12 * n * (n + 1.0))) <
          1e-3 * 1e-12 * n * (n + 1.0) + 1e-14 * n);
  }
}

TEST_CASE("scope selection") {
  const auto te = shifted(0.1, SaturationScope::TEEvanescent);
  CHECK(apply_scope(te, Polarization::TM, ModeClass::Propagating) == Weight::Bose);
  CHECK(apply_scope(te, Polarization::TM, ModeClass::Evanescent) == Weight::Bose);
  CHECK(apply_scope(te, Polarization::TE, ModeClass::Propagating) == Weight::Bose);
  CHECK(apply_scope(te, Polarization::TE, ModeClass::Evanescent) == Weight::Shifted);
  const auto all = cutoff(5.0);
  CHECK(apply_scope(all, Polarization::TM, ModeClass::Propagating) == Weight::Capped);
  CHECK(apply_scope(no_saturation(), Polarization::TE, ModeClass::Evanescent) == Weight::Bose);

  const auto zero = shifted(0.1, SaturationScope::ZeroTerm);
  CHECK(smears_term(zero, 0));
  CHECK_FALSE(smears_term(zero, 3));
  CHECK_FALSE(smears_term(zero, 1));
  auto big = shifted(2.5, SaturationScope::ZeroTerm);
  CHECK(last_smeared_term(big) == 3);
  big.zero_term_threshold = 5.0;
  CHECK(last_smeared_term(big) == 0);
  CHECK(last_smeared_term(no_saturation()) == -1);
  CHECK(last_smeared_term(shifted(0.0, SaturationScope::ZeroTerm)) == -1);
}

TEST_CASE("route compatibility") {
  CHECK_THROWS_AS(check_route(cutoff(10.0), Route::Matsubara), IncompatibleScopeError);
  CHECK_THROWS_AS(check_route(shifted(0.1, SaturationScope::ZeroTerm), Route::RealAxis), IncompatibleScopeError);
  CHECK_THROWS_AS(check_route(shifted(0.1, SaturationScope::TEEvanescent), Route::Matsubara), IncompatibleScopeError);
  CHECK_NOTHROW(check_route(cutoff(10.0), Route::RealAxis));
  CHECK_NOTHROW(check_route(shifted(0.1, SaturationScope::ZeroTerm), Route::Matsubara));
  CHECK_THROWS_AS(validate(shifted(-1.0, SaturationScope::AllModes)), ValidationError);
  CHECK_THROWS_AS(validate(cutoff(0.0)), ValidationError);
}

TEST_CASE("names round-trip") {
  for (auto s : {SaturationScope::AllModes, SaturationScope::TEEvanescent, SaturationScope::ZeroTerm}) {
    CHECK(parse_saturation_scope(to_string(s)) == s);
  }
  for (auto k : {SaturationKind::None, SaturationKind::Shifted, SaturationKind::Cutoff}) {
    CHECK(parse_saturation_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_saturation_scope("tm-only"), ValidationError);
}

TEST_CASE("Lorentzian smearing of a Matsubara term") {
  // F(w) = b^2 / (w^2 + b^2) is pi b times a Lorentzian of width b; convolving
  // with the smearing Lorentzian of width W adds the widths:
  //   n = 0: b / (W + b);  n > 0: b (W + b) / (w_n^2 + (W + b)^2).
  const double T = 300.0;
  const double D = 0.3;
  const double W = smearing_width(D, T);
  const double b = 0.7 * W;
  auto F = [&](double w) { return quad::Vec<1>{b * b / (w * w + b * b)}; };
  const quad::Tolerance tol{1e-11, 0.0, 4000};
  const auto zero = smeared_matsubara_term<1>(0, F, D, T, tol);
  CHECK(zero.value[0] == doctest::Approx(b / (W + b)).epsilon(1e-9));
  for (long n : {1L, 4L}) {
    const double wn = 2.0 * std::numbers::pi * n * k_B * T / hbar;
    const auto r = smeared_matsubara_term<1>(n, F, D, T, tol);
    CHECK(r.value[0] == doctest::Approx(b * (W + b) / (wn * wn + (W + b) * (W + b))).epsilon(1e-8));
  }
  // A constant is left alone.
  const auto one = smeared_matsubara_term<1>(2, [](double) { return quad::Vec<1>{1.0}; }, D, T, tol);
  CHECK(one.value[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(smeared_matsubara_term<1>(0, F, 0.0, T, tol), ValidationError);
}
