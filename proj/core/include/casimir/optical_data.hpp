#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/interpolation.hpp"

namespace casimir {

// How the table is continued below its lowest and above its highest frequency.
enum class LowTail {
  Auto,      // DrudeFit for metals, Zero for insulators
  DrudeFit,  // Drude form through the two lowest rows
  Drude,     // Drude form with the parameters given in TailPolicy
  Constant,  // Im eps frozen at the lowest row down to zero frequency
  Zero,      // no absorption below the table
  None,      // evaluation below the table is an error
};
enum class HighTail {
  InverseCube,  // Im eps proportional to omega^-3
  None,
};

struct TailPolicy {
  LowTail low = LowTail::Auto;
  HighTail high = HighTail::InverseCube;
  double drude_plasma_frequency = 0.0;  // rad/s, used by LowTail::Drude
  double drude_relaxation = 0.0;        // rad/s, used by LowTail::Drude
};

LowTail parse_low_tail(const std::string& name);
HighTail parse_high_tail(const std::string& name);
std::string to_string(LowTail t);
std::string to_string(HighTail t);

struct OpticalMetadata {
  std::string material;
  std::string source;
  bool metal = true;
};

// Tabulated optical response: strictly increasing frequencies (rad/s) with
// Im eps >= 0. Interpolation is monotone cubic in ln(omega); Im eps itself is
// interpolated in log space when every row is strictly positive.
class OpticalDataTable {
 public:
  static OpticalDataTable from_eps2(std::vector<double> omega, std::vector<double> eps2, OpticalMetadata meta,
                                    TailPolicy tails = {});
  static OpticalDataTable from_nk(std::vector<double> omega, std::vector<double> n, std::vector<double> k,
                                  OpticalMetadata meta, TailPolicy tails = {});

  // Plain-text reader: '#' comments, '#!' directives (columns, material, source,
  // kind), first column photon energy in eV.
  static OpticalDataTable parse(std::istream& in, TailPolicy tails = {});
  static OpticalDataTable read(const std::filesystem::path& path, TailPolicy tails = {});

  const OpticalMetadata& metadata() const { return meta_; }
  const TailPolicy& tails() const { return tails_; }
  const std::vector<double>& omega() const { return omega_; }
  const std::vector<double>& eps2() const { return eps2_; }
  bool has_nk() const { return has_nk_; }
  double omega_min() const { return omega_.front(); }
  double omega_max() const { return omega_.back(); }
  std::size_t size() const { return omega_.size(); }

  // Fitted or configured Drude tail parameters (zero when the tail is not Drude).
  double tail_plasma_frequency() const { return tail_wp_; }
  double tail_relaxation() const { return tail_gamma_; }

  double im_eps(double omega) const;
  std::complex<double> eps_real_axis(double omega) const;

  // 1 + (2/pi) int_0^inf w Im eps(w) / (w^2 + xi^2) dw including tails.
  double eps_imag_axis(double xi) const;

  // Same value computed from every other row; the difference to eps_imag_axis
  // is the achieved-accuracy estimate for this table.
  double eps_imag_axis_coarse(double xi) const;

  // Static permittivity for tables without a conducting low tail.
  double static_eps() const;
  bool conducting_low_tail() const;

 private:
  OpticalDataTable() = default;
  void finalize();
  double table_integral(const MonotoneCubic& f, bool log_values, double xi) const;
  double tail_integral(double xi) const;
  double interp_im(double omega) const;
  double re_eps_in_range(double omega) const;
  double kk_real_part(double omega) const;

  OpticalMetadata meta_;
  TailPolicy tails_;
  std::vector<double> omega_;
  std::vector<double> eps2_;
  std::vector<double> n_;
  std::vector<double> k_;
  bool has_nk_ = false;
  bool log_values_ = false;
  MonotoneCubic im_interp_;
  MonotoneCubic im_coarse_;
  bool coarse_log_values_ = false;
  MonotoneCubic n_interp_;
  MonotoneCubic k_interp_;
  MonotoneCubic re_interp_;
  double tail_wp_ = 0.0;
  double tail_gamma_ = 0.0;
};

}  // namespace casimir
