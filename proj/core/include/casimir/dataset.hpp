#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/results.hpp"

namespace casimir {

enum class Normalization { Raw, CorrectionFactor, NormalizedPressure };
std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& name);

struct DataPoint {
  double separation = 0.0;  // m
  double value = 0.0;       // SI, or dimensionless when normalized
  double error = 0.0;       // same units as value, > 0

  bool operator==(const DataPoint&) const = default;
};

// Measured points. Text format: '#' comments; '#!' directives
//   quantity: energy | pressure | force | potential | gamma_x | sphere_force
//   normalization: raw | correction-factor | normalized-pressure
//   separation_unit: m | um | nm
//   value_unit: J/m^2 | Pa | mPa | N | pN | fN | J | 1
//   source: free text
// then rows "d, value, error" (commas or whitespace).
struct ExperimentDataset {
  std::string quantity;
  Normalization normalization = Normalization::Raw;
  std::string source;
  std::vector<DataPoint> rows;

  bool operator==(const ExperimentDataset&) const = default;
};

void validate(const ExperimentDataset& ds);
ExperimentDataset parse_dataset(std::istream& in);
ExperimentDataset ingest_dataset(const std::filesystem::path& path);
// Written in SI with value_unit 1 for normalized sets; parse_dataset reads it back exactly.
std::string emit_dataset(const ExperimentDataset& ds);

struct Residual {
  double separation = 0.0;
  double measured = 0.0;
  double model = 0.0;
  double sigma = 0.0;
  double pull = 0.0;                 // (model - measured) / sigma
  double relative_deviation = 0.0;   // (model - measured) / |measured|
  bool within_error = false;
};

struct CompareReport {
  std::string label;  // saturation setting of the model curve
  std::vector<Residual> points;
  double chi2 = 0.0;
  std::size_t within_error = 0;
  double max_relative_deviation = 0.0;
  bool flagged = false;  // max relative deviation above the threshold
};

// Model curve (separations ascending) interpolated onto the data separations
// with a monotone cubic; data outside the model range is a validation error.
CompareReport compare_curve(const std::vector<double>& separation, const std::vector<double>& model,
                            const ExperimentDataset& ds, double flag_threshold = 0.2);

// One report per saturation setting present in the table.
std::vector<CompareReport> compare(const ResultTable& table, const ExperimentDataset& ds,
                                   double flag_threshold = 0.2);

std::string format_reports(const std::vector<CompareReport>& reports);

}  // namespace casimir
