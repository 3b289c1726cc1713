#include "casimir/optical_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// atan(W/s)/s, the building block of the Drude-tail integral.
double atan_ratio(double w, double s) { return std::atan2(w, s) / s; }

}  // namespace

LowTail parse_low_tail(const std::string& name) {
  const auto n = lower(trim(name));
  if (n == "auto") return LowTail::Auto;
  if (n == "drude-fit" || n == "drude_fit") return LowTail::DrudeFit;
  if (n == "drude") return LowTail::Drude;
  if (n == "constant") return LowTail::Constant;
  if (n == "zero") return LowTail::Zero;
  if (n == "none" || n == "strict") return LowTail::None;
  throw ValidationError("unknown low-frequency tail policy '" + name + "'");
}

HighTail parse_high_tail(const std::string& name) {
  const auto n = lower(trim(name));
  if (n == "inverse-cube" || n == "inverse_cube" || n == "auto") return HighTail::InverseCube;
  if (n == "none" || n == "strict") return HighTail::None;
  throw ValidationError("unknown high-frequency tail policy '" + name + "'");
}

std::string to_string(LowTail t) {
  switch (t) {
    case LowTail::Auto: return "auto";
    case LowTail::DrudeFit: return "drude-fit";
    case LowTail::Drude: return "drude";
    case LowTail::Constant: return "constant";
    case LowTail::Zero: return "zero";
    case LowTail::None: return "none";
  }
  return "?";
}

std::string to_string(HighTail t) { return t == HighTail::InverseCube ? "inverse-cube" : "none"; }

OpticalDataTable OpticalDataTable::from_eps2(std::vector<double> omega, std::vector<double> eps2,
                                             OpticalMetadata meta, TailPolicy tails) {
  if (omega.size() != eps2.size()) throw ValidationError("optical table columns differ in length");
  OpticalDataTable t;
  t.meta_ = std::move(meta);
  t.tails_ = tails;
  t.omega_ = std::move(omega);
  t.eps2_ = std::move(eps2);
  t.finalize();
  return t;
}

OpticalDataTable OpticalDataTable::from_nk(std::vector<double> omega, std::vector<double> n, std::vector<double> k,
                                           OpticalMetadata meta, TailPolicy tails) {
  if (omega.size() != n.size() || omega.size() != k.size()) throw ValidationError("optical table columns differ in length");
  OpticalDataTable t;
  t.meta_ = std::move(meta);
  t.tails_ = tails;
  t.omega_ = std::move(omega);
  t.n_ = std::move(n);
  t.k_ = std::move(k);
  t.has_nk_ = true;
  t.eps2_.resize(t.omega_.size());
  for (std::size_t i = 0; i < t.omega_.size(); ++i) {
    if (t.n_[i] < 0.0 || t.k_[i] < 0.0) throw ValidationError("optical table has negative n or k");
    t.eps2_[i] = 2.0 * t.n_[i] * t.k_[i];
  }
  t.finalize();
  return t;
}

void OpticalDataTable::finalize() {
  if (omega_.empty()) throw ValidationError("optical table is empty");
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (!(omega_[i] > 0.0) || !std::isfinite(omega_[i])) throw ValidationError("optical table frequencies must be positive");
    if (i > 0 && !(omega_[i] > omega_[i - 1])) throw ValidationError("optical table frequencies must be strictly increasing");
    if (!(eps2_[i] >= 0.0) || !std::isfinite(eps2_[i])) throw ValidationError("optical table violates passivity (Im eps < 0)");
  }
  if (omega_.size() < 2) throw ValidationError("optical table needs at least two rows");

  std::vector<double> u(omega_.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::log(omega_[i]);

  auto build = [](const std::vector<double>& x, const std::vector<double>& y, bool& log_values) {
    log_values = std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
    if (!log_values) return MonotoneCubic(x, y);
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) ly[i] = std::log(y[i]);
    return MonotoneCubic(x, ly);
  };
  im_interp_ = build(u, eps2_, log_values_);
  {
    std::vector<double> cu;
    std::vector<double> ce;
    for (std::size_t i = 0; i < u.size(); i += 2) {
      cu.push_back(u[i]);
      ce.push_back(eps2_[i]);
    }
    if (cu.back() != u.back()) {
      cu.push_back(u.back());
      ce.push_back(eps2_.back());
    }
    im_coarse_ = build(cu, ce, coarse_log_values_);
  }

  if (tails_.low == LowTail::Auto) tails_.low = meta_.metal ? LowTail::DrudeFit : LowTail::Zero;
  if (tails_.low == LowTail::DrudeFit) {
    const double w1 = omega_[0];
    const double w2 = omega_[1];
    const double i1 = eps2_[0];
    const double i2 = eps2_[1];
    if (!(i1 > 0.0 && i2 > 0.0)) throw ValidationError("Drude tail fit needs positive Im eps in the two lowest rows");
    const double r = i1 / i2;
    const double g2 = (w2 * w2 * w2 - r * w1 * w1 * w1) / (r * w1 - w2);
    if (!(g2 > 0.0) || !std::isfinite(g2)) {
      throw ValidationError("lowest table rows are not Drude-like; configure explicit drude tail parameters");
    }
    tail_gamma_ = std::sqrt(g2);
    tail_wp_ = std::sqrt(i1 * w1 * (w1 * w1 + g2) / tail_gamma_);
  } else if (tails_.low == LowTail::Drude) {
    if (!(tails_.drude_plasma_frequency > 0.0 && tails_.drude_relaxation > 0.0)) {
      throw ValidationError("drude tail needs positive plasma frequency and relaxation rate");
    }
    tail_wp_ = tails_.drude_plasma_frequency;
    tail_gamma_ = tails_.drude_relaxation;
  }

  if (has_nk_) {
    n_interp_ = MonotoneCubic(u, n_);
    k_interp_ = MonotoneCubic(u, k_);
  } else {
    std::vector<double> re(omega_.size());
    for (std::size_t i = 0; i < omega_.size(); ++i) re[i] = kk_real_part(omega_[i]);
    re_interp_ = MonotoneCubic(u, re);
  }
}

double OpticalDataTable::interp_im(double omega) const {
  const double v = im_interp_(std::log(omega));
  return log_values_ ? std::exp(v) : std::max(v, 0.0);
}

double OpticalDataTable::im_eps(double omega) const {
  if (!(omega > 0.0)) throw ValidationError("frequency must be positive");
  if (omega < omega_.front()) {
    switch (tails_.low) {
      case LowTail::DrudeFit:
      case LowTail::Drude: {
        const double g = tail_gamma_;
        return tail_wp_ * tail_wp_ * g / (omega * (omega * omega + g * g));
      }
      case LowTail::Constant: return eps2_.front();
      case LowTail::Zero: return 0.0;
      default: throw ExtrapolationError("frequency below the optical table and no low-frequency tail configured");
    }
  }
  if (omega > omega_.back()) {
    if (tails_.high == HighTail::None) {
      throw ExtrapolationError("frequency above the optical table and no high-frequency tail configured");
    }
    const double r = omega_.back() / omega;
    return eps2_.back() * r * r * r;
  }
  return interp_im(omega);
}

double OpticalDataTable::re_eps_in_range(double omega) const {
  const double u = std::log(omega);
  if (has_nk_) {
    const double n = n_interp_(u);
    const double k = k_interp_(u);
    return n * n - k * k;
  }
  return re_interp_(u);
}

std::complex<double> OpticalDataTable::eps_real_axis(double omega) const {
  if (!(omega > 0.0)) throw ValidationError("frequency must be positive");
  const double im = im_eps(omega);
  if (omega < omega_.front()) {
    const double re0 = re_eps_in_range(omega_.front());
    if (tails_.low == LowTail::DrudeFit || tails_.low == LowTail::Drude) {
      const double wp2 = tail_wp_ * tail_wp_;
      const double g2 = tail_gamma_ * tail_gamma_;
      const double w0 = omega_.front();
      const double shift = -wp2 / (omega * omega + g2) + wp2 / (w0 * w0 + g2);
      return {re0 + shift, im};
    }
    return {re0, im};
  }
  if (omega > omega_.back()) {
    const double r = omega_.back() / omega;
    return {1.0 + (re_eps_in_range(omega_.back()) - 1.0) * r * r, im};
  }
  return {re_eps_in_range(omega), im};
}

// Principal-value KK for Re eps with the singular point subtracted, in ln(omega').
double OpticalDataTable::kk_real_part(double omega) const {
  const double g0 = omega * im_eps(omega);
  auto f = [&](double u) {
    const double w = std::exp(u);
    const double d = w * w - omega * omega;
    if (d == 0.0) return 0.0;
    return w * (w * im_eps(w) - g0) / d;
  };
  const double lo = std::log(omega_.front()) - 30.0;
  const double hi = std::log(omega_.back()) + 30.0;
  std::vector<double> bp{lo, std::log(omega_.front()), std::log(omega), std::log(omega_.back()), hi};
  std::sort(bp.begin(), bp.end());
  quad::Tolerance tol;
  tol.rel = 1e-9;
  tol.abs = 1e-12;
  tol.max_panels = 4000;
  const auto r = quad::integrate_scalar(f, std::span<const double>(bp), tol);
  // Truncated pieces of the subtracted term, -g0 * int dw'/(w'^2 - w^2), outside [e^lo, e^hi].
  const double a = std::exp(lo);
  const double b = std::exp(hi);
  const double outside = -g0 * (std::log((b + omega) / (b - omega)) - std::log((omega + a) / (omega - a))) / (2.0 * omega);
  return 1.0 + (2.0 / kPi) * (r.value[0] + outside);
}

double OpticalDataTable::table_integral(const MonotoneCubic& f, bool log_values, double xi) const {
  const double xi2 = xi * xi;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < omega_.size(); ++i) {
    const double a = std::log(omega_[i]);
    const double b = std::log(omega_[i + 1]);
    const auto x = quad::detail::kronrod_abscissae(a, b);
    double s = 0.0;
    for (std::size_t j = 0; j < 21; ++j) {
      const double w2 = std::exp(2.0 * x[j]);
      double im = f(x[j]);
      im = log_values ? std::exp(im) : std::max(im, 0.0);
      s += quad::detail::kronrod_weight(j) * im * w2 / (w2 + xi2);
    }
    total += 0.5 * (b - a) * s;
  }
  return total;
}

double OpticalDataTable::tail_integral(double xi) const {
  double low = 0.0;
  const double w = omega_.front();
  switch (tails_.low) {
    case LowTail::DrudeFit:
    case LowTail::Drude: {
      const double g = tail_gamma_;
      if (!(xi > 0.0)) return INFINITY;
      double j = 0.0;
      if (std::abs(xi - g) < 1e-4 * g) {
        // Coincident-rate limit: -H'(s) / (2 s) with H(s) = atan(W/s)/s.
        const double s = 0.5 * (xi + g);
        const double dh = -w / (s * (s * s + w * w)) - atan_ratio(w, s) / s;
        j = -dh / (2.0 * s);
      } else {
        j = (atan_ratio(w, g) - atan_ratio(w, xi)) / (xi * xi - g * g);
      }
      low = tail_wp_ * tail_wp_ * g * j;
      break;
    }
    case LowTail::Constant:
      if (!(xi > 0.0)) return INFINITY;
      low = 0.5 * eps2_.front() * std::log1p(w * w / (xi * xi));
      break;
    default: break;
  }
  double high = 0.0;
  if (tails_.high == HighTail::InverseCube) {
    const double t = xi / omega_.back();
    double bracket = 0.0;
    if (t < 1e-3) {
      const double t2 = t * t;
      bracket = 1.0 / 3.0 - t2 / 5.0 + t2 * t2 / 7.0;
    } else {
      bracket = (1.0 - std::atan(t) / t) / (t * t);
    }
    high = eps2_.back() * bracket;
  }
  return low + high;
}

double OpticalDataTable::eps_imag_axis(double xi) const {
  if (!(xi >= 0.0)) throw ValidationError("imaginary frequency must be non-negative");
  return 1.0 + (2.0 / kPi) * (table_integral(im_interp_, log_values_, xi) + tail_integral(xi));
}

double OpticalDataTable::eps_imag_axis_coarse(double xi) const {
  if (!(xi >= 0.0)) throw ValidationError("imaginary frequency must be non-negative");
  return 1.0 + (2.0 / kPi) * (table_integral(im_coarse_, coarse_log_values_, xi) + tail_integral(xi));
}

bool OpticalDataTable::conducting_low_tail() const {
  return tails_.low == LowTail::DrudeFit || tails_.low == LowTail::Drude;
}

double OpticalDataTable::static_eps() const {
  if (conducting_low_tail()) throw ValidationError("table with a Drude low tail has no finite static permittivity");
  if (tails_.low == LowTail::Constant) {
    throw ValidationError("constant low tail makes the static permittivity diverge; use the zero tail");
  }
  return eps_imag_axis(0.0);
}

OpticalDataTable OpticalDataTable::parse(std::istream& in, TailPolicy tails) {
  OpticalMetadata meta;
  std::string columns = "ev eps2";
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("#!", 0) == 0) {
      const std::string body = trim(t.substr(2));
      const auto sep = body.find_first_of(":=");
      if (sep == std::string::npos) throw ValidationError("line " + std::to_string(lineno) + ": malformed directive");
      const std::string key = lower(trim(body.substr(0, sep)));
      const std::string value = trim(body.substr(sep + 1));
      if (key == "columns") {
        std::string v = lower(value);
        std::replace(v.begin(), v.end(), ',', ' ');
        std::istringstream ss(v);
        std::string a;
        std::string joined;
        while (ss >> a) joined += (joined.empty() ? "" : " ") + a;
        columns = joined;
      } else if (key == "material") {
        meta.material = value;
      } else if (key == "source") {
        meta.source = value;
      } else if (key == "kind") {
        const auto v = lower(value);
        if (v == "metal") meta.metal = true;
        else if (v == "insulator" || v == "dielectric") meta.metal = false;
        else throw ValidationError("line " + std::to_string(lineno) + ": unknown material kind '" + value + "'");
      }
      continue;
    }
    if (t[0] == '#') continue;
    std::string v = t;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream ss(v);
    std::vector<double> row;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ValidationError("line " + std::to_string(lineno) + ": not a number '" + tok + "'");
      }
    }
    rows.push_back(std::move(row));
  }

  std::size_t ncol = 0;
  if (columns == "ev eps2") ncol = 2;
  else if (columns == "ev n k") ncol = 3;
  else throw ValidationError("unsupported columns directive '" + columns + "' (use 'eV eps2' or 'eV n k')");

  std::vector<double> w;
  std::vector<double> c1;
  std::vector<double> c2;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncol) {
      throw ValidationError("optical row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                            " columns, expected " + std::to_string(ncol));
    }
    w.push_back(rows[i][0] * constants::ev_to_rad_per_s);
    c1.push_back(rows[i][1]);
    if (ncol == 3) c2.push_back(rows[i][2]);
  }
  if (ncol == 2) return from_eps2(std::move(w), std::move(c1), std::move(meta), tails);
  return from_nk(std::move(w), std::move(c1), std::move(c2), std::move(meta), tails);
}

OpticalDataTable OpticalDataTable::read(const std::filesystem::path& path, TailPolicy tails) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open optical data file " + path.string());
  try {
    return parse(in, tails);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace casimir
