#include <benchmark/benchmark.h>

#include "bosonstar/coulomb_kernel.hpp"
#include "bosonstar/hartree_evolve.hpp"
#include "bosonstar/spectral_ops.hpp"
#include "bosonstar/trial_fields.hpp"

namespace {

using namespace bosonstar;

void BM_ForwardTransform(benchmark::State& state) {
    Grid3 grid(static_cast<int>(state.range(0)), 16.0);
    const SpectralField phi = make_centered_gaussian(grid, 1.0);
    const std::vector<cd> vals = phi.values();
    for (auto _ : state) {
        SpectralField f = SpectralField::from_values(grid, vals);
        benchmark::DoNotOptimize(f.spectrum().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardTransform)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void BM_HartreePotential(benchmark::State& state) {
    Grid3 grid(static_cast<int>(state.range(0)), 16.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(grid);
    const SpectralField phi = make_centered_gaussian(grid, 1.0);
    for (auto _ : state) {
        RealField pot = hartree_potential(phi, kernel, -1.0);
        benchmark::DoNotOptimize(pot.values.data());
    }
}
BENCHMARK(BM_HartreePotential)->Arg(16)->Arg(32)->Arg(64);

void BM_Energy(benchmark::State& state) {
    Grid3 grid(static_cast<int>(state.range(0)), 16.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(grid);
    const SpectralField phi = make_centered_gaussian(grid, 1.0);
    for (auto _ : state) {
        EnergyBreakdown e = energy(phi, kernel, -1.0);
        benchmark::DoNotOptimize(e.total);
    }
}
BENCHMARK(BM_Energy)->Arg(16)->Arg(32)->Arg(64);

void BM_StrangStep(benchmark::State& state) {
    Grid3 grid(static_cast<int>(state.range(0)), 16.0);
    const CoulombKernel kernel = CoulombKernel::make_exact(grid);
    SpectralField phi = make_centered_gaussian(grid, 1.0);
    for (auto _ : state) {
        phi = strang_step(phi, kernel, -1.0, 1e-3);
        benchmark::DoNotOptimize(phi.values().data());
    }
}
BENCHMARK(BM_StrangStep)->Arg(16)->Arg(32)->Arg(64);

} // namespace

BENCHMARK_MAIN();
