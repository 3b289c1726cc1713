#include <benchmark/benchmark.h>

#include "casimir/atomwall.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/modecond.hpp"

using namespace casimir;

namespace {

const DielectricModel gold = Drude{1.37e16, 5.32e13};
const OscillatorSet silica{{{1.703, 1.88e14, 0.0}, {1.098, 2.035e16, 0.0}}};

void BM_MatsubaraTerm(benchmark::State& state) {
  const HalfSpacePair p{gold, gold, 1e-6};
  const double xi = 2.5e14 * static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matsubara_term(p, xi, Quantity::Energy, {}));
}
BENCHMARK(BM_MatsubaraTerm)->Arg(0)->Arg(1)->Arg(100);

void BM_EnergyT0(benchmark::State& state) {
  const HalfSpacePair p{gold, gold, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(energy_T0(p, {}));
}
BENCHMARK(BM_EnergyT0)->Unit(benchmark::kMillisecond);

void BM_FreeEnergyMatsubara(benchmark::State& state) {
  const HalfSpacePair p{gold, gold, 1e-6};
  const auto sat = state.range(0) ? shifted(0.1, SaturationScope::ZeroTerm) : no_saturation();
  for (auto _ : state) benchmark::DoNotOptimize(free_energy_matsubara(p, {300.0}, sat, {}));
}
BENCHMARK(BM_FreeEnergyMatsubara)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RealAxisCoarse(benchmark::State& state) {
  const HalfSpacePair p{gold, gold, 2e-6};
  QuadratureSpec q;
  q.real_axis_rel_tol = 1e-2;
  for (auto _ : state) benchmark::DoNotOptimize(energy_real_axis(p, {300.0}, no_saturation(), q));
}
BENCHMARK(BM_RealAxisCoarse)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_GammaX(benchmark::State& state) {
  const auto atom = rubidium();
  const auto trap = rubidium_trap();
  const DielectricModel wall = Composite{silica, std::nullopt, 100.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_x(8e-6, wall, atom, trap, {310.0}, shifted(1e-10, SaturationScope::ZeroTerm), {}));
  }
}
BENCHMARK(BM_GammaX)->Unit(benchmark::kMillisecond);

void BM_DispersionSolve(benchmark::State& state) {
  const HalfSpacePair p{Plasma{1.37e16}, Plasma{1.37e16}, 1e-6};
  const double k = 50.0 * 1.37e16 / 299792458.0;
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_solve(p, Polarization::TM, k));
}
BENCHMARK(BM_DispersionSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
