#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/atomwall.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/modecond.hpp"
#include "casimir/saturation.hpp"

namespace casimir {

enum class Geometry { PlatePlate, AtomWall };

// What a run tabulates. Plate-plate: energy or pressure. Atom-wall: potential,
// force or gamma_x.
enum class Observable { Energy, Pressure, Potential, Force, GammaX };
std::string to_string(Observable o);
Observable parse_observable(const std::string& name);
std::string to_string(Geometry g);
std::string to_string(Route r);

struct DispersionConfig {
  std::vector<Polarization> polarizations{Polarization::TM, Polarization::TE};
  std::vector<double> wavenumbers;  // rad/m
  DispersionOptions options;
};

// A parsed run file. Every key that influences results is echoed, in a
// canonical order, into `echo`; the config hash is FNV-1a over that echo.
struct RunConfig {
  std::string name = "run";
  Geometry geometry = Geometry::PlatePlate;
  Observable observable = Observable::Energy;
  Route route = Route::Matsubara;
  std::vector<double> temperatures{0.0};  // K; `run` uses the first, `sweep` all of them
  std::vector<double> separations;        // m, strictly increasing

  DielectricModel medium1 = vacuum();
  DielectricModel medium2 = vacuum();
  DielectricModel wall = vacuum();
  AtomModel atom;
  std::optional<TrapConfig> trap;

  // Saturation settings for `run`, one table block each. An empty list means a
  // single unsaturated block.
  std::vector<SaturationModel> saturations;
  // `sweep`: cartesian product of these with the temperatures (baseline included).
  std::vector<SaturationModel> sweep;

  QuadratureSpec quadrature;
  std::optional<double> sphere_radius;  // m, PFA
  DispersionConfig dispersion;

  std::filesystem::path output;  // .csv or .json; empty = stdout CSV
  std::optional<std::filesystem::path> dataset;
  unsigned workers = 1;

  std::vector<std::pair<std::string, std::string>> echo;
  std::uint64_t hash = 0;
};

// INI text: sections [run], [medium1], [medium2], [wall], [atom], [trap],
// [saturation], [sweep], [quadrature], [dispersion]. Relative file references
// resolve against `base_dir`.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Material section keys:
//   model = drude | plasma | oscillators | tabulated | perfect | vacuum
//   plasma_frequency, relaxation (rad/s); oscillators = s:w0:g, s:w0:g, ...
//   table, low_tail, high_tail, tail_plasma_frequency, tail_relaxation, kk_tolerance
//   carrier_plasma_frequency, carrier_relaxation, conductivity (s^-1)
// Exposed for tests and tools that build models from key/value lists.
DielectricModel make_material(const std::vector<std::pair<std::string, std::string>>& keys,
                              const std::filesystem::path& base_dir = {});

}  // namespace casimir
