#include "casimir/results.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

bool same(const ModeDecomposition& a, const ModeDecomposition& b) {
  return a.tm_propagating == b.tm_propagating && a.tm_evanescent == b.tm_evanescent &&
         a.te_propagating == b.te_propagating && a.te_evanescent == b.te_evanescent;
}

std::string opt(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("malformed number '{}' in column {}", s, what));
  }
}

std::optional<double> to_opt(const std::string& s, const std::string& what) {
  if (s.empty()) return std::nullopt;
  return to_double(s, what);
}

nlohmann::json opt_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); }

std::optional<double> json_opt(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

bool ResultRow::operator==(const ResultRow& o) const {
  const bool thermal_same = thermal.has_value() == o.thermal.has_value() && (!thermal || same(*thermal, *o.thermal));
  return separation == o.separation && quantity == o.quantity && route == o.route && temperature == o.temperature &&
         saturation == o.saturation && saturation_parameter == o.saturation_parameter && scope == o.scope &&
         value == o.value && correction_factor == o.correction_factor && tm == o.tm && te == o.te && thermal_same &&
         zero_point_tm == o.zero_point_tm && zero_point_te == o.zero_point_te && sphere_force == o.sphere_force &&
         error == o.error && matsubara_terms == o.matsubara_terms;
}

const std::string* ResultTable::find(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

void ResultTable::set(const std::string& key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(key, std::move(value));
}

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "d_m",           "quantity",       "route",          "temperature_K",  "saturation",
      "saturation_parameter", "scope",   "value",          "correction_factor", "tm",
      "te",            "tm_propagating", "tm_evanescent",  "te_propagating", "te_evanescent",
      "zero_point_tm", "zero_point_te",  "sphere_force_N", "error",          "matsubara_terms"};
  return cols;
}

std::string format_number(double x) { return fmt::format("{}", x); }

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) { return fmt::format("{:016x}", h); }

std::vector<std::pair<std::string, std::string>> constants_metadata() {
  return {{"constant.hbar_J_s", format_number(constants::hbar)},
          {"constant.c_m_per_s", format_number(constants::c)},
          {"constant.k_B_J_per_K", format_number(constants::k_B)},
          {"constant.eV_to_rad_per_s", format_number(constants::ev_to_rad_per_s)},
          {"constant.zeta3", format_number(constants::zeta3)}};
}

std::string to_csv(const ResultTable& t) {
  std::string out;
  for (const auto& [k, v] : t.metadata) out += fmt::format("# {} = {}\n", k, v);
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : t.rows) {
    std::vector<std::string> cells = {format_number(r.separation),
                                      r.quantity,
                                      r.route,
                                      format_number(r.temperature),
                                      r.saturation,
                                      format_number(r.saturation_parameter),
                                      r.scope,
                                      format_number(r.value),
                                      opt(r.correction_factor),
                                      format_number(r.tm),
                                      format_number(r.te),
                                      r.thermal ? format_number(r.thermal->tm_propagating) : "",
                                      r.thermal ? format_number(r.thermal->tm_evanescent) : "",
                                      r.thermal ? format_number(r.thermal->te_propagating) : "",
                                      r.thermal ? format_number(r.thermal->te_evanescent) : "",
                                      opt(r.zero_point_tm),
                                      opt(r.zero_point_te),
                                      opt(r.sphere_force),
                                      format_number(r.error),
                                      std::to_string(r.matsubara_terms)};
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

ResultTable parse_csv(std::istream& in) {
  ResultTable t;
  std::string line;
  bool header_seen = false;
  const auto& cols = result_columns();
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos || line.size() < 2) continue;
      t.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    auto cells = split_csv(line);
    if (!header_seen) {
      if (cells != cols) throw ValidationError("result CSV header does not match the expected columns");
      header_seen = true;
      continue;
    }
    if (cells.size() != cols.size()) {
      throw ValidationError(fmt::format("result CSV line {} has {} cells, expected {}", line_no, cells.size(), cols.size()));
    }
    ResultRow r;
    r.separation = to_double(cells[0], cols[0]);
    r.quantity = cells[1];
    r.route = cells[2];
    r.temperature = to_double(cells[3], cols[3]);
    r.saturation = cells[4];
    r.saturation_parameter = to_double(cells[5], cols[5]);
    r.scope = cells[6];
    r.value = to_double(cells[7], cols[7]);
    r.correction_factor = to_opt(cells[8], cols[8]);
    r.tm = to_double(cells[9], cols[9]);
    r.te = to_double(cells[10], cols[10]);
    if (!cells[11].empty()) {
      r.thermal = ModeDecomposition{to_double(cells[11], cols[11]), to_double(cells[12], cols[12]),
                                    to_double(cells[13], cols[13]), to_double(cells[14], cols[14])};
    }
    r.zero_point_tm = to_opt(cells[15], cols[15]);
    r.zero_point_te = to_opt(cells[16], cols[16]);
    r.sphere_force = to_opt(cells[17], cols[17]);
    r.error = to_double(cells[18], cols[18]);
    r.matsubara_terms = static_cast<std::size_t>(to_double(cells[19], cols[19]));
    t.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ValidationError("result CSV has no column header");
  return t;
}

std::string to_json(const ResultTable& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) meta[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json j;
    j["d_m"] = r.separation;
    j["quantity"] = r.quantity;
    j["route"] = r.route;
    j["temperature_K"] = r.temperature;
    j["saturation"] = r.saturation;
    j["saturation_parameter"] = r.saturation_parameter;
    j["scope"] = r.scope;
    j["value"] = r.value;
    j["correction_factor"] = opt_json(r.correction_factor);
    j["tm"] = r.tm;
    j["te"] = r.te;
    if (r.thermal) {
      j["thermal"] = {{"tm_propagating", r.thermal->tm_propagating},
                      {"tm_evanescent", r.thermal->tm_evanescent},
                      {"te_propagating", r.thermal->te_propagating},
                      {"te_evanescent", r.thermal->te_evanescent}};
    } else {
      j["thermal"] = nullptr;
    }
    j["zero_point_tm"] = opt_json(r.zero_point_tm);
    j["zero_point_te"] = opt_json(r.zero_point_te);
    j["sphere_force_N"] = opt_json(r.sphere_force);
    j["error"] = r.error;
    j["matsubara_terms"] = r.matsubara_terms;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

ResultTable parse_json(std::istream& in) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed result JSON: {}", e.what()));
  }
  ResultTable t;
  try {
    for (const auto& [k, v] : doc.at("metadata").items()) t.metadata.emplace_back(k, v.get<std::string>());
    for (const auto& j : doc.at("rows")) {
      ResultRow r;
      r.separation = j.at("d_m").get<double>();
      r.quantity = j.at("quantity").get<std::string>();
      r.route = j.at("route").get<std::string>();
      r.temperature = j.at("temperature_K").get<double>();
      r.saturation = j.at("saturation").get<std::string>();
      r.saturation_parameter = j.at("saturation_parameter").get<double>();
      r.scope = j.at("scope").get<std::string>();
      r.value = j.at("value").get<double>();
      r.correction_factor = json_opt(j, "correction_factor");
      r.tm = j.at("tm").get<double>();
      r.te = j.at("te").get<double>();
      if (j.contains("thermal") && !j.at("thermal").is_null()) {
        const auto& m = j.at("thermal");
        r.thermal = ModeDecomposition{m.at("tm_propagating").get<double>(), m.at("tm_evanescent").get<double>(),
                                      m.at("te_propagating").get<double>(), m.at("te_evanescent").get<double>()};
      }
      r.zero_point_tm = json_opt(j, "zero_point_tm");
      r.zero_point_te = json_opt(j, "zero_point_te");
      r.sphere_force = json_opt(j, "sphere_force_N");
      r.error = j.at("error").get<double>();
      r.matsubara_terms = j.at("matsubara_terms").get<std::size_t>();
      t.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("result JSON does not match the table layout: {}", e.what()));
  }
  return t;
}

void write_table(const ResultTable& t, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(fmt::format("cannot write {}", path.string()));
  out << (path.extension() == ".json" ? to_json(t) : to_csv(t));
  if (!out) throw ValidationError(fmt::format("failed writing {}", path.string()));
}

ResultTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open {}", path.string()));
  return path.extension() == ".json" ? parse_json(in) : parse_csv(in);
}

}  // namespace casimir
