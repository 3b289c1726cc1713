#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

// One computed point. Optional fields are written as empty CSV cells or JSON null.
struct ResultRow {
  double separation = 0.0;  // m
  std::string quantity;     // energy, pressure, potential, force, gamma_x
  std::string route;        // matsubara, real-axis
  double temperature = 0.0;
  std::string saturation = "none";
  double saturation_parameter = 0.0;  // D or M
  std::string scope;
  double value = 0.0;  // SI
  std::optional<double> correction_factor;
  double tm = 0.0;
  double te = 0.0;
  std::optional<ModeDecomposition> thermal;
  std::optional<double> zero_point_tm;
  std::optional<double> zero_point_te;
  std::optional<double> sphere_force;  // N, PFA
  double error = 0.0;
  std::size_t matsubara_terms = 0;

  bool operator==(const ResultRow& o) const;
};

// Ordered (key, value) metadata plus rows. Metadata keys are unique.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ResultRow> rows;

  const std::string* find(const std::string& key) const;
  void set(const std::string& key, std::string value);
  bool operator==(const ResultTable& o) const = default;
};

// CSV column order.
const std::vector<std::string>& result_columns();

std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t);
ResultTable parse_csv(std::istream& in);
ResultTable parse_json(std::istream& in);

// Format chosen from the extension (.json, otherwise CSV).
void write_table(const ResultTable& t, const std::filesystem::path& path);
ResultTable read_table(const std::filesystem::path& path);

// Shortest decimal form that round-trips exactly.
std::string format_number(double x);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t h);

// Physical constants, as written into every result header.
std::vector<std::pair<std::string, std::string>> constants_metadata();

}  // namespace casimir
