#include <benchmark/benchmark.h>

#include "bosonstar/fock_state.hpp"
#include "bosonstar/hamiltonian.hpp"
#include "bosonstar/propagate.hpp"
#include "bosonstar/rdm.hpp"

namespace {

using namespace bosonstar;

constexpr double kTwoPi = 6.283185307179586;

std::vector<cd> uniform_amplitudes(int M) {
    std::vector<cd> c(M, cd(1.0 / std::sqrt(static_cast<double>(M)), 0.0));
    return c;
}

void BM_BuildHamiltonian(benchmark::State& state) {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    const int N = static_cast<int>(state.range(0));
    FockBasis basis(modes.size(), N);
    for (auto _ : state) {
        HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);
        benchmark::DoNotOptimize(build.H.dim());
    }
    state.counters["dim"] = static_cast<double>(basis.dimension());
}
BENCHMARK(BM_BuildHamiltonian)->Arg(2)->Arg(4)->Arg(8);

void BM_Matvec(benchmark::State& state) {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    const int N = static_cast<int>(state.range(0));
    FockBasis basis(modes.size(), N);
    const HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);
    const FockVec psi = condensate_state(basis, uniform_amplitudes(modes.size()));
    FockVec out(psi.size());
    for (auto _ : state) {
        build.H.matvec(psi.data(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Matvec)->Arg(4)->Arg(8)->Arg(16);

void BM_Rdm1(benchmark::State& state) {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const int N = static_cast<int>(state.range(0));
    FockBasis basis(modes.size(), N);
    const FockVec psi = condensate_state(basis, uniform_amplitudes(modes.size()));
    for (auto _ : state) {
        ReducedDensityMatrix g = rdm(basis, psi, 1);
        benchmark::DoNotOptimize(g.data.data());
    }
}
BENCHMARK(BM_Rdm1)->Arg(4)->Arg(8)->Arg(16);

void BM_KrylovStep(benchmark::State& state) {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    const int N = static_cast<int>(state.range(0));
    FockBasis basis(modes.size(), N);
    const HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);
    const FockVec psi = condensate_state(basis, uniform_amplitudes(modes.size()));
    PropagateOptions opts;
    opts.dense_threshold = 0; // always take the Krylov path
    for (auto _ : state) {
        FockVec out = propagate(build.H, psi, 0.05, opts);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_KrylovStep)->Arg(8)->Arg(16);

} // namespace
