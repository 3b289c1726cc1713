#include "casimir/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/results.hpp"

namespace casimir {

namespace pt = boost::property_tree;

namespace {

using Keys = std::vector<std::pair<std::string, std::string>>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double number(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (trim(s.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(fmt::format("{}: '{}' is not a number", key, s));
}

std::vector<double> numbers(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(s)) out.push_back(number(item, key));
  return out;
}

class Section {
 public:
  Section(std::string name, Keys keys) : name_(std::move(name)), keys_(std::move(keys)) {}

  bool has(const std::string& key) const { return raw(key) != nullptr; }
  std::string str(const std::string& key, const std::string& fallback = {}) const {
    const auto* v = raw(key);
    return v ? *v : fallback;
  }
  std::string required(const std::string& key) const {
    const auto* v = raw(key);
    if (!v) throw ValidationError(fmt::format("[{}] is missing '{}'", name_, key));
    return *v;
  }
  double num(const std::string& key, double fallback) const {
    const auto* v = raw(key);
    return v ? number(*v, qualified(key)) : fallback;
  }
  double num(const std::string& key) const { return number(required(key), qualified(key)); }
  std::vector<double> list(const std::string& key) const {
    const auto* v = raw(key);
    return v ? numbers(*v, qualified(key)) : std::vector<double>{};
  }
  bool flag(const std::string& key, bool fallback) const {
    const auto* v = raw(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    throw ValidationError(fmt::format("{}: '{}' is not a boolean", qualified(key), *v));
  }
  // Unknown keys are errors, so misspellings do not silently fall back to defaults.
  void allow(std::initializer_list<const char*> known) const {
    std::set<std::string> k(known.begin(), known.end());
    for (const auto& [key, v] : keys_) {
      if (!k.count(key)) throw ValidationError(fmt::format("[{}] has unknown key '{}'", name_, key));
    }
  }
  const Keys& keys() const { return keys_; }

 private:
  const std::string* raw(const std::string& key) const {
    for (const auto& [k, v] : keys_) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  std::string name_;
  Keys keys_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path;
}

std::string file_hash(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open {}", p.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(ss.str()));
}

Observable observable_for(Geometry g, const std::string& name) {
  const auto o = parse_observable(name);
  const bool plate = o == Observable::Energy || o == Observable::Pressure;
  if ((g == Geometry::PlatePlate) != plate) {
    throw ValidationError(fmt::format("quantity '{}' does not apply to geometry '{}'", name, to_string(g)));
  }
  return o;
}

std::vector<double> separation_grid(const Section& run) {
  const double unit = [&] {
    const auto u = run.str("separation_unit", "m");
    if (u == "m") return 1.0;
    if (u == "um") return 1e-6;
    if (u == "nm") return 1e-9;
    throw ValidationError(fmt::format("run.separation_unit: unknown unit '{}'", u));
  }();
  std::vector<double> d;
  if (run.has("separations")) {
    d = run.list("separations");
  } else if (run.has("separation_min")) {
    const double lo = run.num("separation_min");
    const double hi = run.num("separation_max");
    const double n = run.num("separation_count");
    if (!(n >= 1.0) || n != std::floor(n)) throw ValidationError("run.separation_count must be a positive integer");
    const auto count = static_cast<std::size_t>(n);
    const bool log = run.str("separation_spacing", "linear") == "log";
    if (log && !(lo > 0.0)) throw ValidationError("log spacing needs separation_min > 0");
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      d.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
  }
  if (d.empty()) throw ValidationError("run needs 'separations' or 'separation_min/max/count'");
  for (auto& x : d) x *= unit;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) throw ValidationError("separations must be positive");
    if (i > 0 && !(d[i] > d[i - 1])) throw ValidationError("separations must be strictly increasing");
  }
  return d;
}

QuadratureSpec quadrature(const Section& s) {
  s.allow({"rel_tol", "abs_tol", "max_subdivisions", "matsubara_tol", "max_matsubara_terms", "k_cutoff_multiplier",
           "omega_cutoff_multiplier", "thermal_cutoff", "real_axis_rel_tol", "zero_term_weight"});
  QuadratureSpec q;
  q.rel_tol = s.num("rel_tol", q.rel_tol);
  q.abs_tol = s.num("abs_tol", q.abs_tol);
  q.max_subdivisions = static_cast<std::size_t>(s.num("max_subdivisions", static_cast<double>(q.max_subdivisions)));
  q.matsubara_tol = s.num("matsubara_tol", q.matsubara_tol);
  q.max_matsubara_terms =
      static_cast<std::size_t>(s.num("max_matsubara_terms", static_cast<double>(q.max_matsubara_terms)));
  q.k_cutoff_multiplier = s.num("k_cutoff_multiplier", q.k_cutoff_multiplier);
  q.omega_cutoff_multiplier = s.num("omega_cutoff_multiplier", q.omega_cutoff_multiplier);
  q.thermal_cutoff = s.num("thermal_cutoff", q.thermal_cutoff);
  q.real_axis_rel_tol = s.num("real_axis_rel_tol", q.real_axis_rel_tol);
  q.zero_term_weight = s.num("zero_term_weight", q.zero_term_weight);
  validate(q);
  return q;
}

std::vector<SaturationModel> saturation_list(const Section& s) {
  s.allow({"model", "scope", "D", "M", "zero_term_threshold", "include_unsaturated"});
  std::vector<SaturationModel> out;
  const auto kind = parse_saturation_kind(s.str("model", "none"));
  if (s.flag("include_unsaturated", false) && kind != SaturationKind::None) out.push_back(no_saturation());
  if (kind == SaturationKind::None) return out;
  const auto scope = parse_saturation_scope(s.str("scope", "all-modes"));
  const double threshold = s.num("zero_term_threshold", 1.0);
  const auto values = s.list(kind == SaturationKind::Shifted ? "D" : "M");
  if (values.empty()) throw ValidationError(fmt::format("[saturation] model {} needs {}", to_string(kind),
                                                        kind == SaturationKind::Shifted ? "D" : "M"));
  for (double v : values) {
    SaturationModel m = kind == SaturationKind::Shifted ? shifted(v, scope) : cutoff(v, scope);
    m.zero_term_threshold = threshold;
    validate(m);
    out.push_back(m);
  }
  return out;
}

std::vector<SaturationModel> sweep_list(const Section& s) {
  s.allow({"D", "M", "scopes", "cutoff_scopes", "temperatures", "zero_term_threshold"});
  std::vector<SaturationModel> out{no_saturation()};
  std::vector<SaturationScope> scopes;
  for (const auto& name : split(s.str("scopes", "all-modes"))) scopes.push_back(parse_saturation_scope(name));
  std::vector<SaturationScope> cut_scopes;
  for (const auto& name : split(s.str("cutoff_scopes", "all-modes"))) cut_scopes.push_back(parse_saturation_scope(name));
  const double threshold = s.num("zero_term_threshold", 1.0);
  for (auto scope : scopes) {
    for (double D : s.list("D")) {
      auto m = shifted(D, scope);
      m.zero_term_threshold = threshold;
      validate(m);
      out.push_back(m);
    }
  }
  for (auto scope : cut_scopes) {
    for (double M : s.list("M")) {
      auto m = cutoff(M, scope);
      validate(m);
      out.push_back(m);
    }
  }
  return out;
}

Polarization parse_polarization(const std::string& s) {
  if (s == "tm" || s == "TM") return Polarization::TM;
  if (s == "te" || s == "TE") return Polarization::TE;
  throw ValidationError(fmt::format("unknown polarization '{}'", s));
}

double plasma_frequency_of(const DielectricModel& m) {
  if (const auto* p = std::get_if<Plasma>(&m)) return p->plasma_frequency;
  if (const auto* p = std::get_if<Drude>(&m)) return p->plasma_frequency;
  return 0.0;
}

DispersionConfig dispersion(const Section& s, const DielectricModel& medium1) {
  s.allow({"polarizations", "k", "k_min", "k_max", "k_count", "k_unit", "brackets_per_decade", "decades", "rel_tol"});
  DispersionConfig out;
  if (s.has("polarizations")) {
    out.polarizations.clear();
    for (const auto& p : split(s.str("polarizations"))) out.polarizations.push_back(parse_polarization(p));
  }
  std::vector<double> k = s.list("k");
  if (k.empty() && s.has("k_min")) {
    const double lo = s.num("k_min");
    const double hi = s.num("k_max");
    const auto n = static_cast<std::size_t>(s.num("k_count", 50));
    if (!(lo > 0.0 && hi > lo && n >= 2)) throw ValidationError("dispersion needs 0 < k_min < k_max and k_count >= 2");
    for (std::size_t i = 0; i < n; ++i) k.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  const auto unit = s.str("k_unit", "per_m");
  double scale = 1.0;
  if (unit == "surface") {
    // multiples of omega_s / c with omega_s = omega_p / sqrt(2) of medium 1
    const double wp = plasma_frequency_of(medium1);
    if (!(wp > 0.0)) throw ValidationError("k_unit = surface needs a plasma or Drude medium1");
    scale = wp / std::sqrt(2.0) / constants::c;
  } else if (unit != "per_m") {
    throw ValidationError(fmt::format("dispersion.k_unit: unknown unit '{}'", unit));
  }
  for (auto& x : k) x *= scale;
  out.wavenumbers = k;
  out.options.brackets_per_decade = static_cast<int>(s.num("brackets_per_decade", out.options.brackets_per_decade));
  out.options.decades = s.num("decades", out.options.decades);
  out.options.rel_tol = s.num("rel_tol", out.options.rel_tol);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out;
}

void echo_material(RunConfig& cfg, const std::string& prefix, const DielectricModel& m, const Section& s,
                   const std::filesystem::path& base) {
  cfg.echo.emplace_back(prefix + ".model", describe(m));
  if (s.has("table")) {
    const auto path = resolve(base, s.str("table"));
    cfg.echo.emplace_back(prefix + ".table", path.filename().string());
    cfg.echo.emplace_back(prefix + ".table_fnv1a", file_hash(path));
  }
}

void echo_quadrature(RunConfig& cfg) {
  const auto& q = cfg.quadrature;
  cfg.echo.emplace_back("quadrature.rel_tol", format_number(q.rel_tol));
  cfg.echo.emplace_back("quadrature.abs_tol", format_number(q.abs_tol));
  cfg.echo.emplace_back("quadrature.max_subdivisions", std::to_string(q.max_subdivisions));
  cfg.echo.emplace_back("quadrature.matsubara_tol", format_number(q.matsubara_tol));
  cfg.echo.emplace_back("quadrature.max_matsubara_terms", std::to_string(q.max_matsubara_terms));
  cfg.echo.emplace_back("quadrature.k_cutoff_multiplier", format_number(q.k_cutoff_multiplier));
  cfg.echo.emplace_back("quadrature.omega_cutoff_multiplier", format_number(q.omega_cutoff_multiplier));
  cfg.echo.emplace_back("quadrature.thermal_cutoff", format_number(q.thermal_cutoff));
  cfg.echo.emplace_back("quadrature.real_axis_rel_tol", format_number(q.real_axis_rel_tol));
  cfg.echo.emplace_back("quadrature.zero_term_weight", format_number(q.zero_term_weight));
}

}  // namespace

std::string to_string(Observable o) {
  switch (o) {
    case Observable::Energy: return "energy";
    case Observable::Pressure: return "pressure";
    case Observable::Potential: return "potential";
    case Observable::Force: return "force";
    case Observable::GammaX: return "gamma_x";
  }
  return "?";
}

Observable parse_observable(const std::string& name) {
  if (name == "energy") return Observable::Energy;
  if (name == "pressure") return Observable::Pressure;
  if (name == "potential") return Observable::Potential;
  if (name == "force") return Observable::Force;
  if (name == "gamma_x") return Observable::GammaX;
  throw ValidationError(fmt::format("unknown quantity '{}' (energy | pressure | potential | force | gamma_x)", name));
}

std::string to_string(Geometry g) { return g == Geometry::PlatePlate ? "plate-plate" : "atom-wall"; }

std::string to_string(Route r) { return r == Route::Matsubara ? "matsubara" : "real-axis"; }

DielectricModel make_material(const Keys& keys, const std::filesystem::path& base_dir) {
  const Section s("material", keys);
  s.allow({"model", "plasma_frequency", "relaxation", "oscillators", "table", "low_tail", "high_tail",
           "tail_plasma_frequency", "tail_relaxation", "kk_tolerance", "carrier_plasma_frequency",
           "carrier_relaxation", "conductivity"});
  const auto model = s.required("model");
  BaseModel base;
  if (model == "vacuum") {
    if (s.has("carrier_plasma_frequency") || s.has("conductivity")) {
      throw ValidationError("a vacuum medium cannot carry carriers or conductivity");
    }
    return vacuum();
  } else if (model == "drude") {
    base = Drude{s.num("plasma_frequency"), s.num("relaxation")};
  } else if (model == "plasma") {
    base = Plasma{s.num("plasma_frequency")};
  } else if (model == "oscillators") {
    OscillatorSet set;
    for (const auto& term : split(s.required("oscillators"))) {
      const auto parts = split(term, ':');
      if (parts.size() != 3) throw ValidationError(fmt::format("oscillator '{}' must be strength:resonance:damping", term));
      set.terms.push_back({number(parts[0], "oscillators"), number(parts[1], "oscillators"),
                           number(parts[2], "oscillators")});
    }
    base = set;
  } else if (model == "tabulated") {
    TailPolicy tails;
    tails.low = parse_low_tail(s.str("low_tail", "auto"));
    tails.high = parse_high_tail(s.str("high_tail", "inverse-cube"));
    tails.drude_plasma_frequency = s.num("tail_plasma_frequency", 0.0);
    tails.drude_relaxation = s.num("tail_relaxation", 0.0);
    auto table = std::make_shared<const OpticalDataTable>(OpticalDataTable::read(resolve(base_dir, s.required("table")), tails));
    base = Tabulated{table, s.num("kk_tolerance", 0.0)};
  } else if (model == "perfect") {
    base = PerfectReflector{};
  } else {
    throw ValidationError(
        fmt::format("unknown material model '{}' (drude | plasma | oscillators | tabulated | perfect | vacuum)", model));
  }
  const bool carriers = s.has("carrier_plasma_frequency");
  const double sigma = s.num("conductivity", 0.0);
  DielectricModel out;
  if (carriers || sigma != 0.0) {
    Composite comp{base, std::nullopt, sigma};
    if (carriers) comp.carriers = Drude{s.num("carrier_plasma_frequency"), s.num("carrier_relaxation", 0.0)};
    out = comp;
  } else {
    out = std::visit([](const auto& b) -> DielectricModel { return b; }, base);
  }
  validate(out);
  return out;
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(fmt::format("config: {}", e.what()));
  }
  static const std::set<std::string> known = {"run",        "medium1", "medium2",    "wall",      "atom",
                                              "trap",       "saturation", "sweep",   "quadrature", "dispersion"};
  std::map<std::string, Keys> sections;
  for (const auto& [name, sub] : tree) {
    if (!known.count(name)) throw ValidationError(fmt::format("config: unknown section [{}]", name));
    Keys keys;
    for (const auto& [k, v] : sub) keys.emplace_back(k, trim(v.data()));
    sections[name] = std::move(keys);
  }
  auto section = [&](const std::string& name) { return Section(name, sections.count(name) ? sections[name] : Keys{}); };

  RunConfig cfg;
  const Section run = section("run");
  run.allow({"name", "geometry", "quantity", "route", "temperature", "separations", "separation_min", "separation_max",
             "separation_count", "separation_spacing", "separation_unit", "sphere_radius", "output", "dataset",
             "workers"});
  cfg.name = run.str("name", "run");
  const auto geometry = run.str("geometry", "plate-plate");
  if (geometry == "plate-plate") cfg.geometry = Geometry::PlatePlate;
  else if (geometry == "atom-wall") cfg.geometry = Geometry::AtomWall;
  else throw ValidationError(fmt::format("run.geometry: unknown geometry '{}' (plate-plate | atom-wall)", geometry));
  cfg.observable = observable_for(cfg.geometry, run.str("quantity", cfg.geometry == Geometry::PlatePlate ? "energy" : "potential"));
  const auto route = run.str("route", "matsubara");
  if (route == "matsubara") cfg.route = Route::Matsubara;
  else if (route == "real-axis") cfg.route = Route::RealAxis;
  else throw ValidationError(fmt::format("run.route: unknown route '{}' (matsubara | real-axis)", route));
  if (cfg.geometry == Geometry::AtomWall && cfg.route != Route::Matsubara) {
    throw ValidationError("the atom-wall geometry is computed on the Matsubara route only");
  }
  cfg.temperatures = {run.num("temperature", cfg.geometry == Geometry::AtomWall ? 310.0 : 0.0)};
  if (!(cfg.temperatures[0] >= 0.0)) throw ValidationError("run.temperature must be non-negative");
  cfg.separations = separation_grid(run);
  if (run.has("sphere_radius")) {
    cfg.sphere_radius = run.num("sphere_radius");
    if (!(*cfg.sphere_radius > 0.0)) throw ValidationError("run.sphere_radius must be positive");
    if (cfg.geometry != Geometry::PlatePlate || cfg.observable != Observable::Energy) {
      throw ValidationError("sphere_radius applies to plate-plate energy runs (PFA force from the plate energy)");
    }
  }
  if (run.has("output")) cfg.output = run.str("output");
  if (run.has("dataset")) cfg.dataset = resolve(base_dir, run.str("dataset"));
  const double workers = run.num("workers", 1.0);
  if (!(workers >= 1.0) || workers != std::floor(workers)) throw ValidationError("run.workers must be a positive integer");
  cfg.workers = static_cast<unsigned>(workers);

  cfg.echo.emplace_back("run.name", cfg.name);
  cfg.echo.emplace_back("run.geometry", to_string(cfg.geometry));
  cfg.echo.emplace_back("run.quantity", to_string(cfg.observable));
  cfg.echo.emplace_back("run.route", to_string(cfg.route));
  cfg.echo.emplace_back("run.temperature_K", format_number(cfg.temperatures[0]));
  cfg.echo.emplace_back("run.separations_m", join(cfg.separations));
  if (cfg.sphere_radius) cfg.echo.emplace_back("run.sphere_radius_m", format_number(*cfg.sphere_radius));

  if (cfg.geometry == Geometry::PlatePlate) {
    for (const char* name : {"wall", "atom", "trap"}) {
      if (sections.count(name)) throw ValidationError(fmt::format("[{}] does not apply to plate-plate runs", name));
    }
    if (!sections.count("medium1")) throw ValidationError("plate-plate runs need a [medium1] section");
    cfg.medium1 = make_material(sections["medium1"], base_dir);
    cfg.medium2 = sections.count("medium2") ? make_material(sections["medium2"], base_dir) : cfg.medium1;
    echo_material(cfg, "medium1", cfg.medium1, section("medium1"), base_dir);
    echo_material(cfg, "medium2", cfg.medium2, sections.count("medium2") ? section("medium2") : section("medium1"),
                  base_dir);
  } else {
    for (const char* name : {"medium1", "medium2"}) {
      if (sections.count(name)) throw ValidationError(fmt::format("[{}] does not apply to atom-wall runs", name));
    }
    if (!sections.count("wall")) throw ValidationError("atom-wall runs need a [wall] section");
    cfg.wall = make_material(sections["wall"], base_dir);
    echo_material(cfg, "wall", cfg.wall, section("wall"), base_dir);
    const Section atom = section("atom");
    atom.allow({"static_polarizability", "resonance"});
    const auto rb = rubidium();
    cfg.atom = {atom.num("static_polarizability", rb.static_polarizability), atom.num("resonance", rb.resonance)};
    validate(cfg.atom);
    cfg.echo.emplace_back("atom.static_polarizability_m3", format_number(cfg.atom.static_polarizability));
    cfg.echo.emplace_back("atom.resonance_rad_per_s", format_number(cfg.atom.resonance));
    if (cfg.observable == Observable::GammaX) {
      const Section trap = section("trap");
      trap.allow({"amplitude", "tf_radius", "mass", "trap_frequency"});
      const auto t0 = rubidium_trap();
      TrapConfig t{trap.num("amplitude", t0.amplitude), trap.num("tf_radius", t0.tf_radius), trap.num("mass", t0.mass),
                   trap.num("trap_frequency", t0.trap_frequency)};
      validate(t);
      cfg.trap = t;
      cfg.echo.emplace_back("trap.amplitude_m", format_number(t.amplitude));
      cfg.echo.emplace_back("trap.tf_radius_m", format_number(t.tf_radius));
      cfg.echo.emplace_back("trap.mass_kg", format_number(t.mass));
      cfg.echo.emplace_back("trap.trap_frequency_rad_per_s", format_number(t.trap_frequency));
    } else if (sections.count("trap")) {
      throw ValidationError("[trap] applies only to quantity = gamma_x");
    }
  }

  cfg.quadrature = quadrature(section("quadrature"));
  echo_quadrature(cfg);

  cfg.saturations = saturation_list(section("saturation"));
  for (std::size_t i = 0; i < cfg.saturations.size(); ++i) {
    check_route(cfg.saturations[i], cfg.route);
    cfg.echo.emplace_back(fmt::format("saturation.{}", i), describe(cfg.saturations[i]));
  }
  if (sections.count("sweep")) {
    const Section sw = section("sweep");
    cfg.sweep = sweep_list(sw);
    for (const auto& m : cfg.sweep) check_route(m, cfg.route);
    if (sw.has("temperatures")) {
      cfg.temperatures = sw.list("temperatures");
      for (double t : cfg.temperatures) {
        if (!(t >= 0.0)) throw ValidationError("sweep.temperatures must be non-negative");
      }
    }
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
      cfg.echo.emplace_back(fmt::format("sweep.{}", i), describe(cfg.sweep[i]));
    }
    cfg.echo.emplace_back("sweep.temperatures_K", join(cfg.temperatures));
  }
  if (sections.count("dispersion")) {
    cfg.dispersion = dispersion(section("dispersion"), cfg.medium1);
    std::string pols;
    for (auto p : cfg.dispersion.polarizations) pols += (pols.empty() ? "" : ", ") + to_string(p);
    cfg.echo.emplace_back("dispersion.polarizations", pols);
    cfg.echo.emplace_back("dispersion.k_rad_per_m", join(cfg.dispersion.wavenumbers));
    cfg.echo.emplace_back("dispersion.brackets_per_decade", std::to_string(cfg.dispersion.options.brackets_per_decade));
    cfg.echo.emplace_back("dispersion.decades", format_number(cfg.dispersion.options.decades));
    cfg.echo.emplace_back("dispersion.rel_tol", format_number(cfg.dispersion.options.rel_tol));
  }

  std::string canonical;
  for (const auto& [k, v] : cfg.echo) canonical += k + "=" + v + "\n";
  cfg.hash = fnv1a(canonical);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open config {}", path.string()));
  return parse_config(in, path.parent_path());
}

}  // namespace casimir
