#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double drude_imag(const Drude& d, double xi) {
  return d.plasma_frequency * d.plasma_frequency / (xi * (xi + d.relaxation));
}

std::complex<double> drude_real(const Drude& d, double w) {
  const std::complex<double> den(w * w, d.relaxation * w);
  return 1.0 - d.plasma_frequency * d.plasma_frequency / den;
}

double oscillators_imag(const OscillatorSet& s, double xi) {
  double e = 1.0;
  for (const auto& o : s.terms) {
    const double w2 = o.resonance * o.resonance;
    e += o.strength * w2 / (w2 + xi * xi + o.damping * xi);
  }
  return e;
}

std::complex<double> oscillators_real(const OscillatorSet& s, double w) {
  std::complex<double> e = 1.0;
  for (const auto& o : s.terms) {
    const double w2 = o.resonance * o.resonance;
    e += o.strength * w2 / std::complex<double>(w2 - w * w, -o.damping * w);
  }
  return e;
}

double tabulated_imag(const Tabulated& t, double xi) {
  if (!t.table) throw ValidationError("tabulated model without a table");
  return kk_to_imag_axis(*t.table, xi, t.kk_tolerance);
}

double base_imag(const BaseModel& b, double xi) {
  return std::visit(Overload{[&](const Drude& d) { return 1.0 + drude_imag(d, xi); },
                             [&](const Plasma& p) { return 1.0 + p.plasma_frequency * p.plasma_frequency / (xi * xi); },
                             [&](const OscillatorSet& s) { return oscillators_imag(s, xi); },
                             [&](const Tabulated& t) { return tabulated_imag(t, xi); },
                             [&](const PerfectReflector&) { return kInf; }},
                    b);
}

std::complex<double> base_real(const BaseModel& b, double w) {
  return std::visit(
      Overload{[&](const Drude& d) { return drude_real(d, w); },
               [&](const Plasma& p) { return std::complex<double>(1.0 - p.plasma_frequency * p.plasma_frequency / (w * w)); },
               [&](const OscillatorSet& s) { return oscillators_real(s, w); },
               [&](const Tabulated& t) -> std::complex<double> {
                 if (!t.table) throw ValidationError("tabulated model without a table");
                 return t.table->eps_real_axis(w);
               },
               [&](const PerfectReflector&) -> std::complex<double> {
                 throw ValidationError("a perfect reflector has no finite permittivity");
               }},
      b);
}

BaseModel as_base(const DielectricModel& m) {
  return std::visit(Overload{[](const Drude& d) -> BaseModel { return d; },
                             [](const Plasma& p) -> BaseModel { return p; },
                             [](const OscillatorSet& s) -> BaseModel { return s; },
                             [](const Tabulated& t) -> BaseModel { return t; },
                             [](const PerfectReflector& p) -> BaseModel { return p; },
                             [](const Composite&) -> BaseModel { throw ValidationError("nested composite"); }},
                    m);
}

// Accumulates the xi -> 0 asymptotics of each additive piece.
struct StaticAccumulator {
  double plasma_w2 = 0.0;
  bool conductor = false;
  bool perfect = false;
  double eps0 = 1.0;

  void add_drude(const Drude& d) {
    if (d.relaxation > 0.0) conductor = true;
    else plasma_w2 += d.plasma_frequency * d.plasma_frequency;
  }
  void add_base(const BaseModel& b) {
    std::visit(Overload{[&](const Drude& d) { add_drude(d); },
                        [&](const Plasma& p) { plasma_w2 += p.plasma_frequency * p.plasma_frequency; },
                        [&](const OscillatorSet& s) {
                          for (const auto& o : s.terms) eps0 += o.strength;
                        },
                        [&](const Tabulated& t) {
                          if (!t.table) throw ValidationError("tabulated model without a table");
                          if (t.table->conducting_low_tail()) conductor = true;
                          else eps0 += t.table->static_eps() - 1.0;
                        },
                        [&](const PerfectReflector&) { perfect = true; }},
               b);
  }
  StaticResponse result() const {
    StaticResponse r;
    r.eps0 = eps0;
    if (perfect) r.kind = StaticResponse::Kind::Perfect;
    else if (plasma_w2 > 0.0) {
      r.kind = StaticResponse::Kind::Plasma;
      r.plasma_frequency = std::sqrt(plasma_w2);
    } else if (conductor) r.kind = StaticResponse::Kind::Conductor;
    else r.kind = StaticResponse::Kind::Dielectric;
    return r;
  }
};

std::string describe_base(const BaseModel& b) {
  return std::visit(
      Overload{[](const Drude& d) { return fmt::format("drude(wp={:.10g},gamma={:.10g})", d.plasma_frequency, d.relaxation); },
               [](const Plasma& p) { return fmt::format("plasma(wp={:.10g})", p.plasma_frequency); },
               [](const OscillatorSet& s) {
                 if (s.terms.empty()) return std::string("vacuum");
                 std::string out = "oscillators(";
                 for (std::size_t i = 0; i < s.terms.size(); ++i) {
                   const auto& o = s.terms[i];
                   out += fmt::format("{}{:.10g}/{:.10g}/{:.10g}", i ? ";" : "", o.strength, o.resonance, o.damping);
                 }
                 return out + ")";
               },
               [](const Tabulated& t) {
                 if (!t.table) return std::string("table(null)");
                 const auto& tb = *t.table;
                 return fmt::format("table(material={},rows={},range={:.10g}..{:.10g},low={},high={},tail_wp={:.10g},"
                                    "tail_gamma={:.10g})",
                                    tb.metadata().material.empty() ? "?" : tb.metadata().material, tb.size(),
                                    tb.omega_min(), tb.omega_max(), to_string(tb.tails().low),
                                    to_string(tb.tails().high), tb.tail_plasma_frequency(), tb.tail_relaxation());
               },
               [](const PerfectReflector&) { return std::string("perfect-reflector"); }},
      b);
}

}  // namespace

bool is_perfect_reflector(const DielectricModel& m) {
  if (std::holds_alternative<PerfectReflector>(m)) return true;
  if (const auto* c = std::get_if<Composite>(&m)) return std::holds_alternative<PerfectReflector>(c->base);
  return false;
}

bool is_vacuum(const DielectricModel& m) {
  const auto* s = std::get_if<OscillatorSet>(&m);
  if (s == nullptr) return false;
  for (const auto& o : s->terms) {
    if (o.strength != 0.0) return false;
  }
  return true;
}

bool is_lossless(const DielectricModel& m) {
  return std::visit(Overload{[](const Drude& d) { return d.relaxation == 0.0; },
                             [](const Plasma&) { return true; },
                             [](const OscillatorSet& s) {
                               for (const auto& o : s.terms) {
                                 if (o.damping != 0.0) return false;
                               }
                               return true;
                             },
                             [](const Tabulated&) { return false; },
                             [](const Composite& c) {
                               if (c.conductivity != 0.0) return false;
                               if (c.carriers && c.carriers->relaxation != 0.0) return false;
                               return std::visit(
                                   Overload{[](const Drude& d) { return d.relaxation == 0.0; },
                                            [](const Plasma&) { return true; },
                                            [](const OscillatorSet& s) {
                                              for (const auto& o : s.terms) {
                                                if (o.damping != 0.0) return false;
                                              }
                                              return true;
                                            },
                                            [](const Tabulated&) { return false; },
                                            [](const PerfectReflector&) { return true; }},
                                   c.base);
                             },
                             [](const PerfectReflector&) { return true; }},
                    m);
}

void validate(const DielectricModel& m) {
  auto check_drude = [](const Drude& d) {
    if (!(d.plasma_frequency >= 0.0) || !(d.relaxation >= 0.0)) {
      throw ValidationError("Drude parameters must be non-negative");
    }
  };
  auto check_base = [&](const BaseModel& b) {
    std::visit(Overload{[&](const Drude& d) { check_drude(d); },
                        [](const Plasma& p) {
                          if (!(p.plasma_frequency > 0.0)) throw ValidationError("plasma frequency must be positive");
                        },
                        [](const OscillatorSet& s) {
                          for (const auto& o : s.terms) {
                            if (!(o.strength >= 0.0) || !(o.resonance > 0.0) || !(o.damping >= 0.0)) {
                              throw ValidationError("oscillator needs strength >= 0, resonance > 0, damping >= 0");
                            }
                          }
                        },
                        [](const Tabulated& t) {
                          if (!t.table) throw ValidationError("tabulated model without a table");
                        },
                        [](const PerfectReflector&) {}},
               b);
  };
  if (const auto* c = std::get_if<Composite>(&m)) {
    check_base(c->base);
    if (c->carriers) check_drude(*c->carriers);
    if (!(c->conductivity >= 0.0)) throw ValidationError("conductivity must be non-negative");
    return;
  }
  check_base(as_base(m));
}

double eval_eps_imag_axis(const DielectricModel& m, double xi) {
  if (!(xi > 0.0)) throw ValidationError("eps(i xi) requires xi > 0; use static_response for the limit");
  if (const auto* c = std::get_if<Composite>(&m)) {
    double e = base_imag(c->base, xi);
    if (c->carriers) e += drude_imag(*c->carriers, xi);
    if (c->conductivity > 0.0) e += 4.0 * std::numbers::pi * c->conductivity / xi;
    return e;
  }
  return base_imag(as_base(m), xi);
}

std::complex<double> eval_eps_real_axis(const DielectricModel& m, double omega) {
  if (!(omega > 0.0)) throw ValidationError("eps(omega) requires omega > 0");
  if (const auto* c = std::get_if<Composite>(&m)) {
    std::complex<double> e = base_real(c->base, omega);
    if (c->carriers) e += drude_real(*c->carriers, omega) - 1.0;
    if (c->conductivity > 0.0) e += std::complex<double>(0.0, 4.0 * std::numbers::pi * c->conductivity / omega);
    return e;
  }
  return base_real(as_base(m), omega);
}

double kk_to_imag_axis(const OpticalDataTable& table, double xi, double tol) {
  const double v = table.eps_imag_axis(xi);
  if (tol > 0.0 && table.size() >= 8) {
    const double coarse = table.eps_imag_axis_coarse(xi);
    const double achieved = std::abs(v - coarse) / v;
    if (achieved > tol) {
      throw AccuracyError(fmt::format("optical table too sparse at xi={:.6g} rad/s: achieved {:.3g}, requested {:.3g}",
                                      xi, achieved, tol),
                          achieved);
    }
  }
  return v;
}

StaticResponse static_response(const DielectricModel& m) {
  StaticAccumulator acc;
  if (const auto* c = std::get_if<Composite>(&m)) {
    acc.add_base(c->base);
    if (c->carriers) acc.add_drude(*c->carriers);
    if (c->conductivity > 0.0) acc.conductor = true;
  } else {
    acc.add_base(as_base(m));
  }
  return acc.result();
}

std::string describe(const DielectricModel& m) {
  if (const auto* c = std::get_if<Composite>(&m)) {
    std::string out = "composite(" + describe_base(c->base);
    if (c->carriers) {
      out += fmt::format(",carriers=drude(wp={:.10g},gamma={:.10g})", c->carriers->plasma_frequency,
                         c->carriers->relaxation);
    }
    out += fmt::format(",sigma={:.10g})", c->conductivity);
    return out;
  }
  return describe_base(as_base(m));
}

std::vector<double> characteristic_frequencies(const DielectricModel& m) {
  std::vector<double> out;
  auto drude = [&](const Drude& d) {
    if (d.plasma_frequency > 0.0) {
      out.push_back(d.plasma_frequency);
      out.push_back(d.plasma_frequency / std::sqrt(2.0));
    }
    if (d.relaxation > 0.0) out.push_back(d.relaxation);
  };
  auto base = [&](const BaseModel& b) {
    std::visit(Overload{[&](const Drude& d) { drude(d); },
                        [&](const Plasma& p) { drude(Drude{p.plasma_frequency, 0.0}); },
                        [&](const OscillatorSet& s) {
                          for (const auto& o : s.terms) {
                            out.push_back(o.resonance);
                            if (o.damping > 0.0) out.push_back(o.damping);
                          }
                        },
                        [&](const Tabulated& t) {
                          if (!t.table) return;
                          out.push_back(t.table->omega_min());
                          out.push_back(t.table->omega_max());
                          if (t.table->tail_plasma_frequency() > 0.0) {
                            drude(Drude{t.table->tail_plasma_frequency(), t.table->tail_relaxation()});
                          }
                        },
                        [](const PerfectReflector&) {}},
               b);
  };
  if (const auto* c = std::get_if<Composite>(&m)) {
    base(c->base);
    if (c->carriers) drude(*c->carriers);
    if (c->conductivity > 0.0) out.push_back(4.0 * std::numbers::pi * c->conductivity);
  } else {
    base(as_base(m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace casimir
