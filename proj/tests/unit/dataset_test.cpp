#include <cmath>
#include <sstream>

#include <doctest.h>

#include "casimir/dataset.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

TEST_CASE("dataset units are converted to SI") {
  std::istringstream in(
      "# pressure data\n"
      "#! quantity: pressure\n"
      "#! separation_unit: nm\n"
      "#! value_unit: mPa\n"
      "#! source: test bench\n"
      "160, 1100.5, 3.2\n"
      "200 460 2\n");
  const auto ds = parse_dataset(in);
  CHECK(ds.quantity == "pressure");
  CHECK(ds.source == "test bench");
  REQUIRE(ds.rows.size() == 2);
  CHECK(ds.rows[0].separation == doctest::Approx(160e-9));
  CHECK(ds.rows[0].value == doctest::Approx(1.1005));
  CHECK(ds.rows[1].error == doctest::Approx(2e-3));
}

TEST_CASE("emit and parse are inverse") {
  ExperimentDataset ds;
  ds.quantity = "energy";
  ds.normalization = Normalization::CorrectionFactor;
  ds.source = "torsion pendulum";
  ds.rows = {{0.7e-6, 0.91, 0.05}, {1.1e-6, 0.8700000000000001, 0.04}, {3.3e-6, 1.0 / 3.0, 0.2}};
  std::istringstream in(emit_dataset(ds));
  CHECK(parse_dataset(in) == ds);
}

TEST_CASE("dataset validation") {
  std::istringstream no_units("#! quantity: energy\n1 2 3\n");
  CHECK_THROWS_AS(parse_dataset(no_units), ValidationError);
  std::istringstream bad_error("#! quantity: energy\n#! separation_unit: m\n#! value_unit: J/m^2\n1e-6 2 0\n");
  CHECK_THROWS_AS(parse_dataset(bad_error), ValidationError);
  std::istringstream bad_unit("#! quantity: energy\n#! separation_unit: furlong\n#! value_unit: J/m^2\n1 2 3\n");
  CHECK_THROWS_AS(parse_dataset(bad_unit), ValidationError);
  std::istringstream normalized_units(
      "#! quantity: energy\n#! normalization: correction-factor\n#! separation_unit: um\n#! value_unit: J/m^2\n1 2 3\n");
  CHECK_THROWS_AS(parse_dataset(normalized_units), ValidationError);
  std::istringstream extra("#! quantity: energy\n#! separation_unit: um\n#! value_unit: J/m^2\n1 2 3 4\n");
  CHECK_THROWS_AS(parse_dataset(extra), ValidationError);
  CHECK_THROWS_AS(ingest_dataset("/nonexistent/data.txt"), ValidationError);
}

TEST_CASE("residuals against a model curve") {
  ExperimentDataset ds;
  ds.quantity = "energy";
  ds.rows = {{1.5, 2.5, 0.1}, {2.5, 4.0, 0.1}};
  // Model y = 2 d - 0.5 through knots: exact at 1.5 (2.5), off by +0.5 at 2.5.
  const std::vector<double> d{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{1.5, 3.5, 5.5, 7.5};
  const auto rep = compare_curve(d, y, ds, 0.1);
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].pull == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.points[0].within_error);
  CHECK(rep.points[1].pull == doctest::Approx(5.0));
  CHECK_FALSE(rep.points[1].within_error);
  CHECK(rep.chi2 == doctest::Approx(25.0));
  CHECK(rep.within_error == 1);
  CHECK(rep.max_relative_deviation == doctest::Approx(0.125));
  CHECK(rep.flagged);
  CHECK_FALSE(compare_curve(d, y, ds, 0.2).flagged);
  ExperimentDataset outside = ds;
  outside.rows.push_back({9.0, 1.0, 0.1});
  CHECK_THROWS_AS(compare_curve(d, y, outside), ValidationError);
}

TEST_CASE("comparison groups rows by saturation setting") {
  ResultTable t;
  for (const char* sat : {"none", "shifted"}) {
    for (double d : {1e-6, 2e-6, 3e-6}) {
      ResultRow r;
      r.separation = d;
      r.quantity = "energy";
      r.saturation = sat;
      r.saturation_parameter = sat[0] == 's' ? 0.1 : 0.0;
      r.scope = sat[0] == 's' ? "all-modes" : "";
      r.value = -1.0 / (d * d * d);
      r.correction_factor = sat[0] == 's' ? 0.9 : 0.8;
      t.rows.push_back(r);
    }
  }
  ExperimentDataset ds;
  ds.quantity = "energy";
  ds.normalization = Normalization::CorrectionFactor;
  ds.rows = {{1.5e-6, 0.85, 0.05}};
  const auto reports = compare(t, ds);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].label == "none T=0K");
  CHECK(reports[0].points[0].model == doctest::Approx(0.8));
  CHECK(reports[1].points[0].model == doctest::Approx(0.9));
  CHECK(format_reports(reports).find("label,d_m,measured") == 0);
  ds.quantity = "pressure";
  CHECK_THROWS_AS(compare(t, ds), ValidationError);
}
