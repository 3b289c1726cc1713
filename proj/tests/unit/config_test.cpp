#include <cmath>
#include <sstream>
#include <string>

#include <doctest.h>

#include "casimir/config.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, CASIMIR_TEST_DATA);
}

const std::string gold_run =
    "[run]\n"
    "name = gold\n"
    "quantity = energy\n"
    "temperature = 300\n"
    "separations = 0.5, 1, 2\n"
    "separation_unit = um\n"
    "[medium1]\n"
    "model = drude\n"
    "plasma_frequency = 1.37e16\n"
    "relaxation = 5.32e13\n";

}  // namespace

TEST_CASE("plate-plate config") {
  const auto cfg = parse(gold_run);
  CHECK(cfg.name == "gold");
  CHECK(cfg.geometry == Geometry::PlatePlate);
  CHECK(cfg.observable == Observable::Energy);
  CHECK(cfg.route == Route::Matsubara);
  REQUIRE(cfg.separations.size() == 3);
  CHECK(cfg.separations[1] == doctest::Approx(1e-6));
  CHECK(cfg.temperatures.front() == 300.0);
  // medium2 defaults to medium1.
  CHECK(std::get<Drude>(cfg.medium2).relaxation == 5.32e13);
  CHECK(cfg.saturations.empty());
  CHECK(cfg.hash != 0);
}

TEST_CASE("separation grids") {
  const auto log = parse(
      "[run]\nseparation_min = 1e-7\nseparation_max = 1e-5\nseparation_count = 3\nseparation_spacing = log\n"
      "[medium1]\nmodel = perfect\n");
  REQUIRE(log.separations.size() == 3);
  CHECK(log.separations[1] == doctest::Approx(1e-6));
  CHECK_THROWS_AS(parse("[run]\nseparations = 2, 1\n[medium1]\nmodel = perfect\n"), ValidationError);
  CHECK_THROWS_AS(parse("[run]\nseparations = -1\n[medium1]\nmodel = perfect\n"), ValidationError);
}

TEST_CASE("hash follows results, not execution settings") {
  const auto a = parse(gold_run);
  const auto b = parse(gold_run + "[quadrature]\nrel_tol = 1e-8\n");
  CHECK(a.hash == b.hash);
  std::string threaded = gold_run;
  threaded.insert(threaded.find("name"), "workers = 4\noutput = somewhere.csv\n");
  const auto c = parse(threaded);
  CHECK(c.workers == 4);
  CHECK(a.hash == c.hash);
  const auto d = parse(gold_run + "[quadrature]\nrel_tol = 1e-9\n");
  CHECK(a.hash != d.hash);
  std::string hotter = gold_run;
  hotter.replace(hotter.find("300"), 3, "310");
  CHECK(parse(hotter).hash != a.hash);
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK_THROWS_AS(parse(gold_run + "[medium3]\nmodel = drude\n"), ValidationError);
  CHECK_THROWS_AS(parse(gold_run + "[quadrature]\nrel_tolerance = 1e-3\n"), ValidationError);
  CHECK_THROWS_AS(parse("[run]\nseparations = 1e-6\n[medium1]\nmodel = jelly\n"), ValidationError);
  CHECK_THROWS_AS(parse("[run]\nseparations = 1e-6\n"), ValidationError);
  CHECK_THROWS_AS(parse(gold_run + "[wall]\nmodel = perfect\n"), ValidationError);
  CHECK_THROWS_AS(parse("[run]\nseparations = x\n[medium1]\nmodel = perfect\n"), ValidationError);
}

TEST_CASE("saturation settings are checked against the route") {
  const auto ok = parse(gold_run + "[saturation]\nmodel = shifted\nscope = zero-term\nD = 0.01, 0.1\ninclude_unsaturated = true\n");
  REQUIRE(ok.saturations.size() == 3);
  CHECK(ok.saturations[0].kind == SaturationKind::None);
  CHECK(ok.saturations[2].D == 0.1);
  CHECK_THROWS_AS(parse(gold_run + "[saturation]\nmodel = cutoff\nM = 10\n"), IncompatibleScopeError);
  std::string real = gold_run;
  real.insert(real.find("temperature"), "route = real-axis\n");
  CHECK_NOTHROW(parse(real + "[saturation]\nmodel = cutoff\nM = 10\n"));
  CHECK_THROWS_AS(parse(real + "[saturation]\nmodel = shifted\nscope = zero-term\nD = 0.1\n"), IncompatibleScopeError);
  CHECK_THROWS_AS(parse(gold_run + "[saturation]\nmodel = shifted\nD = -1\n"), ValidationError);
}

TEST_CASE("sweep expands baseline plus settings") {
  std::string real = gold_run;
  real.insert(real.find("temperature"), "route = real-axis\n");
  const auto cfg = parse(real + "[sweep]\nD = 0.01, 0.1, 1\nscopes = te-evanescent, all-modes\nM = 5\n"
                                "temperatures = 0, 300\n");
  CHECK(cfg.sweep.size() == 1 + 6 + 1);
  CHECK(cfg.sweep.front().kind == SaturationKind::None);
  CHECK(cfg.temperatures.size() == 2);
}

TEST_CASE("materials") {
  const auto comp = make_material({{"model", "oscillators"},
                                   {"oscillators", "1.703:1.88e14:0, 1.098:2.035e16:0"},
                                   {"conductivity", "100"}});
  const auto* c = std::get_if<Composite>(&comp);
  REQUIRE(c != nullptr);
  CHECK(c->conductivity == 100.0);
  CHECK(std::get<OscillatorSet>(c->base).terms.size() == 2);
  const auto table = make_material({{"model", "tabulated"}, {"table", "drude_gold.txt"}}, CASIMIR_TEST_DATA);
  CHECK(std::holds_alternative<Tabulated>(table));
  CHECK(std::holds_alternative<PerfectReflector>(make_material({{"model", "perfect"}})));
  CHECK_THROWS_AS(make_material({{"model", "drude"}, {"plasma_frequency", "1e16"}, {"bogus", "1"}}), ValidationError);
  CHECK_THROWS_AS(make_material({{"model", "oscillators"}, {"oscillators", "1:2"}}), ValidationError);
  CHECK_THROWS_AS(make_material({{"model", "tabulated"}, {"table", "missing.txt"}}, CASIMIR_TEST_DATA), ValidationError);
}

TEST_CASE("atom-wall config") {
  const auto cfg = parse(
      "[run]\ngeometry = atom-wall\nquantity = gamma_x\ntemperature = 310\nseparations = 6, 8, 10\n"
      "separation_unit = um\n"
      "[wall]\nmodel = oscillators\noscillators = 1.703:1.88e14:0, 1.098:2.035e16:0\nconductivity = 100\n"
      "[trap]\n");
  CHECK(cfg.geometry == Geometry::AtomWall);
  CHECK(cfg.observable == Observable::GammaX);
  REQUIRE(cfg.trap.has_value());
  CHECK(cfg.trap->amplitude == doctest::Approx(2.5e-6));
  CHECK(cfg.atom.static_polarizability > 0.0);
  // Atom-wall runs default to the 310 K equilibrium of the trap experiment.
  const auto warm = parse("[run]\ngeometry = atom-wall\nseparations = 1e-5\n[wall]\nmodel = perfect\n");
  CHECK(warm.temperatures.front() == 310.0);
  CHECK_THROWS_AS(parse("[run]\ngeometry = atom-wall\nquantity = energy\nseparations = 1e-6\n[wall]\nmodel = perfect\n"),
                  ValidationError);
}

TEST_CASE("dispersion section") {
  const auto cfg = parse(
      "[run]\nseparations = 1e-6\n[medium1]\nmodel = plasma\nplasma_frequency = 1.37e16\n"
      "[dispersion]\npolarizations = tm\nk_min = 0.1\nk_max = 10\nk_count = 3\nk_unit = surface\n");
  REQUIRE(cfg.dispersion.wavenumbers.size() == 3);
  CHECK(cfg.dispersion.polarizations.size() == 1);
  CHECK(cfg.dispersion.wavenumbers.front() == doctest::Approx(0.1 * 1.37e16 / std::sqrt(2.0) / 299792458.0));
}
