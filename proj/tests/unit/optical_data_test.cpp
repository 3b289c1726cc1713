#include <cmath>
#include <memory>
#include <sstream>

#include <doctest.h>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/optical_data.hpp"

using namespace casimir;

namespace {

constexpr double wp = 1.37e16;
constexpr double gam = 5.32e13;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("sampled Drude table reproduces the Drude model on the imaginary axis") {
  auto table = std::make_shared<const OpticalDataTable>(
      OpticalDataTable::read(std::string(CASIMIR_TEST_DATA) + "/drude_gold.txt"));
  CHECK(table->metadata().material == "gold (Drude)");
  CHECK(table->metadata().metal);
  // The fitted low tail goes through the two lowest rows of an exact Drude sample.
  CHECK(rel(table->tail_plasma_frequency(), wp) < 1e-6);
  CHECK(rel(table->tail_relaxation(), gam) < 1e-6);
  CHECK(table->conducting_low_tail());
  const Tabulated model{table, 0.0};
  for (double xi : {1e13, 1e14, 1e15, 1e16}) {
    CHECK(rel(eval_eps_imag_axis(model, xi), eval_eps_imag_axis(Drude{wp, gam}, xi)) < 1e-3);
  }
  CHECK(static_response(model).kind == StaticResponse::Kind::Conductor);
}

TEST_CASE("n, k columns") {
  const auto t = OpticalDataTable::read(std::string(CASIMIR_TEST_DATA) + "/silica_nk.txt");
  CHECK(t.has_nk());
  CHECK(t.size() == 4);
  CHECK_FALSE(t.metadata().metal);
  CHECK(rel(t.eps2()[0], 2.0 * 1.40 * 0.001) < 1e-14);
  CHECK(rel(t.omega()[1], 1.0 * constants::ev_to_rad_per_s) < 1e-14);
  // Inside the table the real part comes from n and k directly.
  const auto e = t.eps_real_axis(t.omega()[2]);
  CHECK(rel(e.real(), 1.46 * 1.46 - 0.0002 * 0.0002) < 1e-12);
}

TEST_CASE("table validation") {
  TailPolicy none;
  none.low = LowTail::None;
  none.high = HighTail::None;
  CHECK_THROWS_AS(OpticalDataTable::from_eps2({2.0, 1.0}, {1.0, 1.0}, {}, none), ValidationError);
  CHECK_THROWS_AS(OpticalDataTable::from_eps2({1.0, 2.0}, {1.0, -1.0}, {}, none), ValidationError);
  CHECK_THROWS_AS(OpticalDataTable::from_eps2({1.0}, {1.0}, {}, none), ValidationError);
  // The KK real part of an eps2 table needs both tails.
  CHECK_THROWS_AS(OpticalDataTable::from_eps2({1e14, 2e14, 4e14}, {1.0, 0.5, 0.25}, {}, none), ExtrapolationError);
  const auto t = OpticalDataTable::from_nk({1e14, 2e14, 4e14}, {1.0, 1.0, 1.0}, {0.5, 0.25, 0.125}, {}, none);
  CHECK_THROWS_AS(t.im_eps(1e13), ExtrapolationError);
  CHECK_THROWS_AS(t.im_eps(1e15), ExtrapolationError);
  CHECK(t.im_eps(2e14) == doctest::Approx(0.5));

  std::istringstream bad("#! columns: eV eps2\n1.0 2.0 3.0\n");
  CHECK_THROWS_AS(OpticalDataTable::parse(bad), ValidationError);
  std::istringstream word("1.0 abc\n");
  CHECK_THROWS_AS(OpticalDataTable::parse(word), ValidationError);
  std::istringstream cols("#! columns: eV eps1 eps2\n1 2 3\n");
  CHECK_THROWS_AS(OpticalDataTable::parse(cols), ValidationError);
}

TEST_CASE("sparse table trips the accuracy check") {
  std::vector<double> omega;
  std::vector<double> eps2;
  for (int i = 0; i < 12; ++i) {
    const double w = 1e14 * std::pow(3.0, i);
    omega.push_back(w);
    eps2.push_back(wp * wp * gam / (w * (w * w + gam * gam)) + (i == 6 ? 50.0 : 0.0));
  }
  auto table = std::make_shared<const OpticalDataTable>(OpticalDataTable::from_eps2(omega, eps2, {"x", "", true}));
  CHECK_THROWS_AS(kk_to_imag_axis(*table, 1e16, 1e-9), AccuracyError);
  CHECK_NOTHROW(kk_to_imag_axis(*table, 1e16, 0.0));
}

TEST_CASE("tail policy names") {
  CHECK(parse_low_tail("drude-fit") == LowTail::DrudeFit);
  CHECK(to_string(parse_low_tail(to_string(LowTail::Zero))) == to_string(LowTail::Zero));
  CHECK(parse_high_tail("inverse-cube") == HighTail::InverseCube);
  CHECK_THROWS_AS(parse_low_tail("sideways"), ValidationError);
}
