#include "casimir/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "casimir/errors.hpp"
#include "casimir/interpolation.hpp"

namespace casimir {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double separation_scale(const std::string& unit) {
  if (unit == "m") return 1.0;
  if (unit == "um") return 1e-6;
  if (unit == "nm") return 1e-9;
  throw ValidationError(fmt::format("unknown separation unit '{}'", unit));
}

double value_scale(const std::string& unit) {
  static const std::map<std::string, double> units = {{"J/m^2", 1.0}, {"Pa", 1.0}, {"mPa", 1e-3}, {"N", 1.0},
                                                      {"pN", 1e-12},  {"fN", 1e-15}, {"J", 1.0},  {"1", 1.0}};
  const auto it = units.find(unit);
  if (it == units.end()) throw ValidationError(fmt::format("unknown value unit '{}'", unit));
  return it->second;
}

const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> q = {"energy", "pressure", "force", "potential", "gamma_x", "sphere_force"};
  return q;
}

std::string group_label(const ResultRow& r) {
  if (r.saturation == "none") return "none";
  return fmt::format("{}({}) {}", r.saturation, format_number(r.saturation_parameter), r.scope);
}

double model_value(const ResultRow& r, const ExperimentDataset& ds) {
  switch (ds.normalization) {
    case Normalization::Raw:
      if (ds.quantity == "sphere_force") {
        if (!r.sphere_force) throw ValidationError("dataset is a sphere force but the run has no sphere radius");
        return *r.sphere_force;
      }
      return r.value;
    case Normalization::CorrectionFactor:
    case Normalization::NormalizedPressure:
      if (!r.correction_factor) throw ValidationError("model rows carry no correction factor");
      return *r.correction_factor;
  }
  return r.value;
}

}  // namespace

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::Raw:
      return "raw";
    case Normalization::CorrectionFactor:
      return "correction-factor";
    case Normalization::NormalizedPressure:
      return "normalized-pressure";
  }
  return "raw";
}

Normalization parse_normalization(const std::string& name) {
  if (name == "raw") return Normalization::Raw;
  if (name == "correction-factor") return Normalization::CorrectionFactor;
  if (name == "normalized-pressure") return Normalization::NormalizedPressure;
  throw ValidationError(fmt::format("unknown normalization '{}'", name));
}

void validate(const ExperimentDataset& ds) {
  if (std::find(known_quantities().begin(), known_quantities().end(), ds.quantity) == known_quantities().end()) {
    throw ValidationError(fmt::format("unknown dataset quantity '{}'", ds.quantity));
  }
  if (ds.normalization == Normalization::NormalizedPressure && ds.quantity != "pressure") {
    throw ValidationError("normalized-pressure datasets must have quantity pressure");
  }
  if (ds.rows.empty()) throw ValidationError("dataset has no rows");
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const auto& p = ds.rows[i];
    if (!(p.separation > 0.0)) throw ValidationError(fmt::format("dataset row {}: separation must be positive", i + 1));
    if (!(p.error > 0.0)) throw ValidationError(fmt::format("dataset row {}: error must be positive", i + 1));
    if (!std::isfinite(p.value)) throw ValidationError(fmt::format("dataset row {}: value is not finite", i + 1));
    if (i > 0 && !(p.separation > ds.rows[i - 1].separation)) {
      throw ValidationError(fmt::format("dataset row {}: separations must be strictly increasing", i + 1));
    }
  }
}

ExperimentDataset parse_dataset(std::istream& in) {
  ExperimentDataset ds;
  std::string d_unit;
  std::string v_unit;
  bool have_quantity = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.rfind("#!", 0) == 0) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw ValidationError(fmt::format("dataset line {}: malformed directive", line_no));
      const std::string key = trim(s.substr(2, colon - 2));
      const std::string val = trim(s.substr(colon + 1));
      if (key == "quantity") {
        ds.quantity = val;
        have_quantity = true;
      } else if (key == "normalization") {
        ds.normalization = parse_normalization(val);
      } else if (key == "separation_unit") {
        d_unit = val;
      } else if (key == "value_unit") {
        v_unit = val;
      } else if (key == "source") {
        ds.source = val;
      } else {
        throw ValidationError(fmt::format("dataset line {}: unknown directive '{}'", line_no, key));
      }
      continue;
    }
    if (s[0] == '#') continue;
    std::string row = s;
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream ss(row);
    double d = 0.0;
    double v = 0.0;
    double e = 0.0;
    std::string extra;
    if (!(ss >> d >> v >> e) || (ss >> extra)) {
      throw ValidationError(fmt::format("dataset line {}: expected 'd, value, error'", line_no));
    }
    if (d_unit.empty() || v_unit.empty()) {
      throw ValidationError("dataset must declare separation_unit and value_unit before the first row");
    }
    const double ds_scale = separation_scale(d_unit);
    const double vs = value_scale(v_unit);
    ds.rows.push_back({d * ds_scale, v * vs, e * vs});
  }
  if (!have_quantity) throw ValidationError("dataset must declare its quantity");
  if (ds.normalization != Normalization::Raw && v_unit != "1") {
    throw ValidationError("normalized datasets must use value_unit 1");
  }
  validate(ds);
  return ds;
}

ExperimentDataset ingest_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open dataset {}", path.string()));
  auto ds = parse_dataset(in);
  if (ds.source.empty()) ds.source = path.filename().string();
  return ds;
}

std::string emit_dataset(const ExperimentDataset& ds) {
  validate(ds);
  std::string unit = "1";
  if (ds.normalization == Normalization::Raw) {
    if (ds.quantity == "energy") unit = "J/m^2";
    else if (ds.quantity == "pressure") unit = "Pa";
    else if (ds.quantity == "force" || ds.quantity == "sphere_force") unit = "N";
    else if (ds.quantity == "potential") unit = "J";
  }
  std::string out = fmt::format("#! quantity: {}\n#! normalization: {}\n#! separation_unit: m\n#! value_unit: {}\n",
                                ds.quantity, to_string(ds.normalization), unit);
  if (!ds.source.empty()) out += fmt::format("#! source: {}\n", ds.source);
  for (const auto& p : ds.rows) {
    out += fmt::format("{}, {}, {}\n", format_number(p.separation), format_number(p.value), format_number(p.error));
  }
  return out;
}

CompareReport compare_curve(const std::vector<double>& separation, const std::vector<double>& model,
                            const ExperimentDataset& ds, double flag_threshold) {
  validate(ds);
  if (separation.size() != model.size() || separation.empty()) {
    throw ValidationError("model curve needs matching, nonempty separation and value lists");
  }
  for (std::size_t i = 1; i < separation.size(); ++i) {
    if (!(separation[i] > separation[i - 1])) throw ValidationError("model separations must be strictly increasing");
  }
  const MonotoneCubic curve = separation.size() > 1 ? MonotoneCubic(separation, model) : MonotoneCubic();
  CompareReport rep;
  const double lo = separation.front();
  const double hi = separation.back();
  for (const auto& p : ds.rows) {
    const double tol = 1e-12 * hi;
    if (p.separation < lo - tol || p.separation > hi + tol) {
      throw ValidationError(fmt::format("data separation {:.6g} m lies outside the model range [{:.6g}, {:.6g}] m",
                                        p.separation, lo, hi));
    }
    Residual r;
    r.separation = p.separation;
    r.measured = p.value;
    r.model = separation.size() > 1 ? curve(p.separation) : model.front();
    r.sigma = p.error;
    r.pull = (r.model - r.measured) / r.sigma;
    r.relative_deviation = r.measured != 0.0 ? (r.model - r.measured) / std::abs(r.measured) : 0.0;
    r.within_error = std::abs(r.model - r.measured) <= r.sigma;
    rep.chi2 += r.pull * r.pull;
    rep.within_error += r.within_error ? 1 : 0;
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(r.relative_deviation));
    rep.points.push_back(r);
  }
  rep.flagged = rep.max_relative_deviation > flag_threshold;
  return rep;
}

std::vector<CompareReport> compare(const ResultTable& table, const ExperimentDataset& ds, double flag_threshold) {
  validate(ds);
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ResultRow*>> groups;
  for (const auto& r : table.rows) {
    const std::string wanted = ds.quantity == "sphere_force" ? std::string("energy") : ds.quantity;
    if (r.quantity != wanted) {
      throw ValidationError(fmt::format("quantity mismatch: dataset is {}, result rows are {}", ds.quantity, r.quantity));
    }
    const std::string label = group_label(r) + fmt::format(" T={}K", format_number(r.temperature));
    if (!groups.count(label)) order.push_back(label);
    groups[label].push_back(&r);
  }
  if (order.empty()) throw ValidationError("result table has no rows");
  std::vector<CompareReport> out;
  for (const auto& label : order) {
    auto rows = groups[label];
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) { return a->separation < b->separation; });
    std::vector<double> d;
    std::vector<double> v;
    for (const auto* r : rows) {
      d.push_back(r->separation);
      v.push_back(model_value(*r, ds));
    }
    auto rep = compare_curve(d, v, ds, flag_threshold);
    rep.label = label;
    out.push_back(std::move(rep));
  }
  return out;
}

std::string format_reports(const std::vector<CompareReport>& reports) {
  std::string out = "label,d_m,measured,model,sigma,pull,relative_deviation,within_error\n";
  for (const auto& rep : reports) {
    for (const auto& p : rep.points) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", rep.label, format_number(p.separation), format_number(p.measured),
                         format_number(p.model), format_number(p.sigma), format_number(p.pull),
                         format_number(p.relative_deviation), p.within_error ? 1 : 0);
    }
  }
  out += "\nlabel,points,chi2,within_error,max_relative_deviation,flagged\n";
  for (const auto& rep : reports) {
    out += fmt::format("{},{},{},{},{},{}\n", rep.label, rep.points.size(), format_number(rep.chi2), rep.within_error,
                       format_number(rep.max_relative_deviation), rep.flagged ? 1 : 0);
  }
  return out;
}

}  // namespace casimir
