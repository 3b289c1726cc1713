#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/results.hpp"

using namespace casimir;

namespace {

ResultTable sample_table() {
  ResultTable t;
  t.set("format", "casimir-sat result table v1");
  t.set("note", "commas, and = signs survive");
  ResultRow a;
  a.separation = 1e-6;
  a.quantity = "energy";
  a.route = "real-axis";
  a.temperature = 300.0;
  a.saturation = "shifted";
  a.saturation_parameter = 0.01;
  a.scope = "te-evanescent";
  a.value = -3.9123456789012345e-10;
  a.correction_factor = 0.8334;
  a.tm = -1.0 / 3.0;
  a.te = 2.0 / 7.0;
  a.thermal = ModeDecomposition{1e-12, -2e-13, 3.5e-14, 7.25e-11};
  a.zero_point_tm = -2.1e-10;
  a.zero_point_te = -1.9e-10;
  a.sphere_force = 1.2345e-13;
  a.error = 4.4e-17;
  a.matsubara_terms = 0;
  ResultRow b;
  b.separation = 2e-6;
  b.quantity = "energy";
  b.route = "matsubara";
  b.temperature = 0.0;
  b.value = -4.1e-11;
  b.matsubara_terms = 1234;
  t.rows = {a, b};
  return t;
}

}  // namespace

TEST_CASE("format_number round-trips every double") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 20000) {
    const std::uint64_t u = bits(rng);
    double x = 0.0;
    std::memcpy(&x, &u, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
    ++checked;
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-6) == "1e-06");
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("CSV round trip") {
  const auto t = sample_table();
  const auto text = to_csv(t);
  std::istringstream in(text);
  const auto back = parse_csv(in);
  CHECK(back == t);
  CHECK(to_csv(back) == text);
  CHECK(text.find("# format = casimir-sat result table v1\n") == 0);
}

TEST_CASE("JSON round trip") {
  const auto t = sample_table();
  std::istringstream in(to_json(t));
  const auto back = parse_json(in);
  CHECK(back == t);
  CHECK(to_json(back) == to_json(t));
}

TEST_CASE("file round trip by extension") {
  const auto dir = std::filesystem::temp_directory_path() / "casimir_results_test";
  std::filesystem::create_directories(dir);
  const auto t = sample_table();
  for (const char* name : {"t.csv", "t.json"}) {
    write_table(t, dir / name);
    CHECK(read_table(dir / name) == t);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed tables") {
  std::istringstream wrong_header("d_m,value\n1,2\n");
  CHECK_THROWS_AS(parse_csv(wrong_header), ValidationError);
  auto text = to_csv(sample_table());
  text += "1,energy\n";
  std::istringstream short_row(text);
  CHECK_THROWS_AS(parse_csv(short_row), ValidationError);
  std::istringstream not_json("{\"rows\": 3}");
  CHECK_THROWS_AS(parse_json(not_json), ValidationError);
}

TEST_CASE("metadata keys stay unique and ordered") {
  ResultTable t;
  t.set("b", "1");
  t.set("a", "2");
  t.set("b", "3");
  REQUIRE(t.metadata.size() == 2);
  CHECK(t.metadata[0].first == "b");
  CHECK(*t.find("b") == "3");
  CHECK(t.find("zzz") == nullptr);
  CHECK(constants_metadata().size() == 5);
}
