#include "casimir/saturation.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

namespace casimir {

SaturationModel no_saturation() { return {}; }

SaturationModel shifted(double D, SaturationScope scope) {
  SaturationModel s;
  s.kind = SaturationKind::Shifted;
  s.D = D;
  s.scope = scope;
  return s;
}

SaturationModel cutoff(double M, SaturationScope scope) {
  SaturationModel s;
  s.kind = SaturationKind::Cutoff;
  s.M = M;
  s.scope = scope;
  return s;
}

void validate(const SaturationModel& s) {
  if (s.kind == SaturationKind::Shifted && !(s.D >= 0.0)) throw ValidationError("saturation D must be >= 0");
  if (s.kind == SaturationKind::Cutoff && !(s.M > 0.0)) throw ValidationError("saturation M must be > 0");
  if (!(s.zero_term_threshold >= 0.0)) throw ValidationError("zero-term threshold must be >= 0");
}

bool is_active(const SaturationModel& s) {
  if (s.kind == SaturationKind::Shifted) return s.D > 0.0;
  return s.kind == SaturationKind::Cutoff;
}

std::string to_string(SaturationKind k) {
  switch (k) {
    case SaturationKind::None: return "none";
    case SaturationKind::Shifted: return "shifted";
    case SaturationKind::Cutoff: return "cutoff";
  }
  return "?";
}

std::string to_string(SaturationScope s) {
  switch (s) {
    case SaturationScope::AllModes: return "all-modes";
    case SaturationScope::TEEvanescent: return "te-evanescent";
    case SaturationScope::ZeroTerm: return "zero-term";
  }
  return "?";
}

SaturationKind parse_saturation_kind(const std::string& name) {
  if (name == "none") return SaturationKind::None;
  if (name == "shifted") return SaturationKind::Shifted;
  if (name == "cutoff") return SaturationKind::Cutoff;
  throw ValidationError("unknown saturation model '" + name + "' (none | shifted | cutoff)");
}

SaturationScope parse_saturation_scope(const std::string& name) {
  if (name == "all-modes" || name == "all") return SaturationScope::AllModes;
  if (name == "te-evanescent") return SaturationScope::TEEvanescent;
  if (name == "zero-term") return SaturationScope::ZeroTerm;
  throw ValidationError("unknown saturation scope '" + name + "' (all-modes | te-evanescent | zero-term)");
}

std::string describe(const SaturationModel& s) {
  switch (s.kind) {
    case SaturationKind::None: return "none";
    case SaturationKind::Shifted:
      return fmt::format("shifted(D={:.10g},scope={},threshold={:.10g})", s.D, to_string(s.scope), s.zero_term_threshold);
    case SaturationKind::Cutoff: return fmt::format("cutoff(M={:.10g},scope={})", s.M, to_string(s.scope));
  }
  return "?";
}

double bose(double omega, double beta) {
  const double x = constants::hbar * beta * omega;
  if (!(x > 0.0)) throw DivergenceError("Bose occupation diverges at zero frequency");
  return 1.0 / std::expm1(x);
}

double shifted_distribution(double omega, double beta, double D) {
  if (!(omega >= 0.0) || !(D >= 0.0)) throw ValidationError("shifted distribution needs omega >= 0 and D >= 0");
  const double x = constants::hbar * beta * omega + D;
  if (!(x > 0.0)) throw DivergenceError("shifted distribution diverges at omega = 0 with D = 0");
  return 1.0 / std::expm1(x);
}

double cutoff_distribution(double omega, double beta, double M) {
  if (!(M > 0.0)) throw ValidationError("cutoff M must be positive");
  const double x = constants::hbar * beta * omega;
  if (!(x > 0.0)) return M;
  return std::min(1.0 / std::expm1(x), M);
}

void check_route(const SaturationModel& s, Route route) {
  validate(s);
  if (s.kind == SaturationKind::None) return;
  if (route == Route::Matsubara) {
    if (s.kind == SaturationKind::Cutoff) {
      throw IncompatibleScopeError("the occupation cutoff only exists on the real-frequency route");
    }
    if (s.scope == SaturationScope::TEEvanescent) {
      throw IncompatibleScopeError("mode-class scopes need the real-frequency route");
    }
  } else if (s.scope == SaturationScope::ZeroTerm) {
    throw IncompatibleScopeError("zero-term scope needs the Matsubara route");
  }
}

Weight apply_scope(const SaturationModel& s, Polarization pol, ModeClass mode) {
  if (s.kind == SaturationKind::None) return Weight::Bose;
  if (s.scope == SaturationScope::ZeroTerm) {
    throw IncompatibleScopeError("zero-term scope has no real-frequency slots");
  }
  const bool hit =
      s.scope == SaturationScope::AllModes || (pol == Polarization::TE && mode == ModeClass::Evanescent);
  if (!hit) return Weight::Bose;
  return s.kind == SaturationKind::Shifted ? Weight::Shifted : Weight::Capped;
}

double occupation(Weight w, const SaturationModel& s, double omega, double beta) {
  switch (w) {
    case Weight::Bose: return bose(omega, beta);
    case Weight::Shifted: return shifted_distribution(omega, beta, s.D);
    case Weight::Capped: return cutoff_distribution(omega, beta, s.M);
  }
  return 0.0;
}

long last_smeared_term(const SaturationModel& s) {
  if (s.kind != SaturationKind::Shifted || !(s.D > 0.0)) return -1;
  if (s.scope == SaturationScope::AllModes) return std::numeric_limits<long>::max();
  if (s.scope != SaturationScope::ZeroTerm) return -1;
  if (s.D <= s.zero_term_threshold) return 0;
  return static_cast<long>(std::ceil(s.D));
}

bool smears_term(const SaturationModel& s, long n) { return n >= 0 && n <= last_smeared_term(s); }

}  // namespace casimir
