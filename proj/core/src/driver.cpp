#include "casimir/driver.hpp"

#include <exception>
#include <vector>

#include <fmt/format.h>

#include "casimir/atomwall.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/modecond.hpp"

namespace casimir {

namespace {

struct Cell {
  double temperature = 0.0;
  SaturationModel sat;
  double separation = 0.0;
};

// Re-raise with the cell's coordinates, keeping the error category.
[[noreturn]] void rethrow_with_context(std::exception_ptr e, const std::string& where) {
  try {
    std::rethrow_exception(e);
  } catch (const ConvergenceError& x) {
    throw ConvergenceError(where + ": " + x.what(), x.achieved());
  } catch (const ValidationError& x) {
    throw ValidationError(where + ": " + x.what());
  } catch (const Error& x) {
    throw Error(where + ": " + x.what());
  }
}

ResultRow compute_cell(const RunConfig& cfg, const Cell& cell) {
  ResultRow row;
  row.separation = cell.separation;
  row.quantity = to_string(cfg.observable);
  row.route = to_string(cfg.route);
  row.temperature = cell.temperature;
  row.saturation = to_string(cell.sat.kind);
  row.saturation_parameter = cell.sat.kind == SaturationKind::Shifted  ? cell.sat.D
                             : cell.sat.kind == SaturationKind::Cutoff ? cell.sat.M
                                                                       : 0.0;
  row.scope = cell.sat.kind == SaturationKind::None ? "" : to_string(cell.sat.scope);
  const ThermalState thermal{cell.temperature};

  if (cfg.geometry == Geometry::PlatePlate) {
    const HalfSpacePair pair{cfg.medium1, cfg.medium2, cell.separation};
    const auto q = cfg.observable == Observable::Energy ? Quantity::Energy : Quantity::Pressure;
    const auto r = compute(q, cfg.route, pair, thermal, cell.sat, cfg.quadrature);
    row.value = r.value;
    row.correction_factor = correction_factor(q, r.value, cell.separation);
    row.tm = r.tm;
    row.te = r.te;
    row.thermal = r.thermal;
    if (cfg.route == Route::RealAxis) {
      row.zero_point_tm = r.zero_point_tm;
      row.zero_point_te = r.zero_point_te;
    }
    if (cfg.sphere_radius) row.sphere_force = pfa_sphere(r.value, *cfg.sphere_radius);
    row.error = r.error;
    row.matsubara_terms = r.matsubara_terms;
    return row;
  }

  AtomWallResult r;
  switch (cfg.observable) {
    case Observable::Potential:
      r = atom_wall_potential(cell.separation, cfg.wall, cfg.atom, thermal, cell.sat, cfg.quadrature);
      break;
    case Observable::Force:
      r = atom_wall_force(cell.separation, cfg.wall, cfg.atom, thermal, cell.sat, cfg.quadrature);
      break;
    case Observable::GammaX:
      r = gamma_x(cell.separation, cfg.wall, cfg.atom, *cfg.trap, thermal, cell.sat, cfg.quadrature);
      break;
    default:
      throw ValidationError("quantity does not apply to the atom-wall geometry");
  }
  row.value = r.value;
  row.tm = r.tm;
  row.te = r.te;
  row.error = r.error;
  row.matsubara_terms = r.matsubara_terms;
  return row;
}

std::vector<ResultRow> compute_cells(const RunConfig& cfg, const std::vector<Cell>& cells, Executor* executor) {
  std::vector<ResultRow> rows(cells.size());
  std::vector<std::exception_ptr> failures(cells.size());
  for_each_index(executor, cells.size(), [&](std::size_t i) {
    try {
      rows[i] = compute_cell(cfg, cells[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  // The first failing cell in table order is reported, whatever the schedule was.
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (failures[i]) {
      rethrow_with_context(failures[i], fmt::format("d={} m, T={} K, saturation={}", format_number(cells[i].separation),
                                                    format_number(cells[i].temperature), describe(cells[i].sat)));
    }
  }
  return rows;
}

}  // namespace

ResultTable table_header(const RunConfig& cfg, const std::string& command) {
  ResultTable t;
  t.set("format", "casimir-sat result table v1");
  t.set("command", command);
  t.set("config_hash", hex64(cfg.hash));
  for (const auto& [k, v] : constants_metadata()) t.set(k, v);
  for (const auto& [k, v] : cfg.echo) t.set(k, v);
  if (cfg.geometry == Geometry::PlatePlate) {
    t.set("sign.energy", "negative is binding; correction_factor = value / (-pi^2 hbar c / (720 d^3))");
    if (cfg.observable == Observable::Pressure) {
      t.set("sign.pressure", "positive is attraction; correction_factor = value / (pi^2 hbar c / (240 d^4))");
      t.set("note.pressure",
            "plate-plate pressure from the differentiated integrand; equals the sphere-plate 'Casimir pressure' of "
            "dynamic PFA measurements");
    }
    if (cfg.sphere_radius) t.set("note.sphere_force_N", "PFA: F = -2 pi R V_pp, positive is attraction");
    if (cfg.route == Route::RealAxis) {
      t.set("note.decomposition",
            "tm_*/te_* columns hold the occupation-weighted (thermal) part; zero_point_* the [1/2] part");
    }
  } else {
    t.set("sign.atom_wall", "potential negative is binding; force negative points toward the wall; gamma_x >= 0");
  }
  return t;
}

ResultTable run(const RunConfig& cfg, Executor* executor) {
  auto table = table_header(cfg, "run");
  std::vector<SaturationModel> settings = cfg.saturations;
  if (settings.empty()) settings.push_back(no_saturation());
  std::vector<Cell> cells;
  for (const auto& s : settings) {
    for (double d : cfg.separations) cells.push_back({cfg.temperatures.front(), s, d});
  }
  table.rows = compute_cells(cfg, cells, executor);
  return table;
}

ResultTable sweep(const RunConfig& cfg, Executor* executor) {
  if (cfg.sweep.empty()) throw ValidationError("sweep needs a [sweep] section");
  auto table = table_header(cfg, "sweep");
  std::vector<Cell> cells;
  for (double T : cfg.temperatures) {
    for (const auto& s : cfg.sweep) {
      if (T == 0.0 && is_active(s)) continue;  // saturation is a thermal effect
      for (double d : cfg.separations) cells.push_back({T, s, d});
    }
  }
  table.rows = compute_cells(cfg, cells, executor);
  return table;
}

std::string dispersion(const RunConfig& cfg, Executor* executor) {
  if (cfg.geometry != Geometry::PlatePlate) throw ValidationError("dispersion applies to plate-plate configs");
  if (cfg.dispersion.wavenumbers.empty()) throw ValidationError("dispersion needs a [dispersion] section with k values");
  struct Job {
    double d;
    double k;
    Polarization pol;
  };
  std::vector<Job> jobs;
  for (double d : cfg.separations) {
    for (double k : cfg.dispersion.wavenumbers) {
      for (auto pol : cfg.dispersion.polarizations) jobs.push_back({d, k, pol});
    }
  }
  std::vector<std::vector<DispersionRoot>> roots(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  for_each_index(executor, jobs.size(), [&](std::size_t i) {
    try {
      const HalfSpacePair pair{cfg.medium1, cfg.medium2, jobs[i].d};
      roots[i] = dispersion_solve(pair, jobs[i].pol, jobs[i].k, cfg.dispersion.options);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (failures[i]) {
      rethrow_with_context(failures[i], fmt::format("d={} m, k={} rad/m, {}", format_number(jobs[i].d),
                                                    format_number(jobs[i].k), to_string(jobs[i].pol)));
    }
  }
  const auto header = table_header(cfg, "dispersion");
  std::string out;
  for (const auto& [k, v] : header.metadata) out += fmt::format("# {} = {}\n", k, v);
  out += "d_m,k_rad_per_m,omega_rad_per_s,polarization,mode_class\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (const auto& r : roots[i]) {
      out += fmt::format("{},{},{},{},{}\n", format_number(jobs[i].d), format_number(r.k), format_number(r.omega),
                         to_string(r.pol), to_string(r.mode));
    }
  }
  return out;
}

}  // namespace casimir
