#pragma once

#include <vector>

#include "bosonstar/hamiltonian.hpp"

namespace bosonstar {

struct ModeHartreeResult {
    std::vector<double> times;
    std::vector<std::vector<cd>> samples; // c(t) at the recorded times
    double norm_drift = 0.0;              // max | |c| - |c0| |
    double energy_drift = 0.0;            // |E(T) - E(0)|
};

// Mean-field (Hartree) equation in mode space,
//   i dc_a/dt = eps_a c_a + (lambda / L^3) sum W(q) conj(c_b) c_{b-q} c_{a+q},
// truncated to the same interaction channels as build_hamiltonian. Classic
// fourth-order Runge-Kutta with fixed dt; norm drift beyond 1e-6 is an error.
ModeHartreeResult mode_hartree_evolve(const ModeSet& modes, const PairPotential& potential,
                                      double lambda, const std::vector<cd>& c0, double T, double dt,
                                      int sample_every = 1);

// Mean-field energy of mode amplitudes under the same truncation:
// sum eps |c|^2 + (lambda / 2 L^3) sum_channels W conj(c_aout) conj(c_bout) c_b c_a.
double mode_hartree_energy(const ModeSet& modes, const InteractionTable& table, double lambda,
                           const std::vector<cd>& c);

} // namespace bosonstar
