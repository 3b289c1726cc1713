#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "casimir/results.hpp"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / "casimir_cli_test") {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int sat(const std::string& args) {
  const int status = std::system((std::string(CASIMIR_SAT) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string gold =
    "[run]\n"
    "name = gold\n"
    "temperature = 300\n"
    "separations = 0.5, 1, 2\n"
    "separation_unit = um\n"
    "[medium1]\n"
    "model = drude\n"
    "plasma_frequency = 1.37e16\n"
    "relaxation = 5.32e13\n"
    "[saturation]\n"
    "model = shifted\n"
    "scope = zero-term\n"
    "D = 0.01, 0.1\n"
    "include_unsaturated = true\n";

}  // namespace

TEST_CASE("run writes a table and is independent of -j") {
  Scratch s;
  const auto cfg = s.write("gold.ini", gold);
  REQUIRE(sat("run -q " + cfg.string() + " -j 1 -o " + (s.dir / "a.csv").string()) == 0);
  REQUIRE(sat("run -q " + cfg.string() + " -j 4 -o " + (s.dir / "b.csv").string()) == 0);
  CHECK(slurp(s.dir / "a.csv") == slurp(s.dir / "b.csv"));
  const auto t = casimir::read_table(s.dir / "a.csv");
  CHECK(t.rows.size() == 9);
  REQUIRE(sat("run -q " + cfg.string() + " -o " + (s.dir / "a.json").string()) == 0);
  CHECK(casimir::read_table(s.dir / "a.json") == t);
}

TEST_CASE("exit codes") {
  Scratch s;
  CHECK(sat("") == 2);
  CHECK(sat("frobnicate") == 2);
  CHECK(sat("run " + (s.dir / "missing.ini").string()) == 2);
  CHECK(sat("run -q " + s.write("bad.ini", "[run]\nseparations = 1e-6\n[medium1]\nmodel = jelly\n").string()) == 2);
  CHECK(sat("run -q " + s.write("cut.ini", gold + "[sweep]\nM = 3\n").string()) == 2);
  CHECK(sat("sweep -q " + s.write("nosweep.ini", gold).string()) == 2);
  CHECK(sat("--help >/dev/null") == 0);
}

TEST_CASE("sweep and dispersion") {
  Scratch s;
  const auto sweep = s.write("sweep.ini",
                             "[run]\ntemperature = 300\nseparations = 1, 2\nseparation_unit = um\n"
                             "[medium1]\nmodel = drude\nplasma_frequency = 1.37e16\nrelaxation = 5.32e13\n"
                             "[sweep]\nD = 0.1\nscopes = zero-term\ntemperatures = 0, 300\n");
  REQUIRE(sat("sweep -q " + sweep.string() + " -o " + (s.dir / "sweep.csv").string()) == 0);
  CHECK(casimir::read_table(s.dir / "sweep.csv").rows.size() == 2 + 4);
  const auto disp = s.write("disp.ini",
                            "[run]\nseparations = 1e-6\n[medium1]\nmodel = plasma\nplasma_frequency = 1.37e16\n"
                            "[dispersion]\nk_min = 0.5\nk_max = 5\nk_count = 4\nk_unit = surface\n");
  REQUIRE(sat("dispersion -q " + disp.string() + " -o " + (s.dir / "disp.csv").string()) == 0);
  CHECK(slurp(s.dir / "disp.csv").find("omega_rad_per_s") != std::string::npos);
}

TEST_CASE("compare against a dataset") {
  Scratch s;
  const auto cfg = s.write("gold.ini", gold);
  REQUIRE(sat("run -q " + cfg.string() + " -o " + (s.dir / "r.csv").string()) == 0);
  const auto ds = s.write("data.txt",
                          "#! quantity: energy\n#! normalization: correction-factor\n#! source: bench\n"
                          "#! separation_unit: m\n#! value_unit: 1\n"
                          "0.7e-6 0.6 0.05\n1.5e-6 0.5 0.05\n");
  REQUIRE(sat("compare -q " + (s.dir / "r.csv").string() + " " + ds.string() + " -o " + (s.dir / "rep.csv").string()) ==
          0);
  const auto rep = slurp(s.dir / "rep.csv");
  CHECK(rep.find("label,d_m,measured") == 0);
  CHECK(rep.find("none T=300K") != std::string::npos);
  CHECK(rep.find("shifted") != std::string::npos);
  // Points outside the computed range are a validation error.
  const auto far = s.write("far.txt", "#! quantity: energy\n#! normalization: correction-factor\n#! separation_unit: m\n#! value_unit: 1\n9e-6 0.6 0.05\n");
  CHECK(sat("compare -q " + (s.dir / "r.csv").string() + " " + far.string()) == 2);
}
