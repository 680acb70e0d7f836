#pragma once

#include <vector>

#include "bosonstar/mode_hartree.hpp"
#include "bosonstar/propagate.hpp"

namespace bosonstar {

struct MeanFieldPoint {
    int particles = 0;
    double distance = 0.0; // || gamma1_N(t) - |c(t)><c(t)| ||_1
};

struct MeanFieldSweep {
    std::vector<MeanFieldPoint> points;
    double slope = 0.0; // log-log least-squares slope of distance vs N
    std::vector<cd> hartree_final;
};

// Evolve the product condensate over c0 for each particle number in Ns under
// the full mode-truncated Hamiltonian, and the amplitudes c0 themselves under
// the matching mean-field equation; report the one-particle trace distance at
// time t and its decay rate in N (expected near 1/N).
MeanFieldSweep mean_field_convergence(const ModeSet& modes, const PairPotential& potential,
                                      double lambda, const std::vector<cd>& c0, double t,
                                      const std::vector<int>& Ns, double hartree_dt = 1e-3,
                                      const PropagateOptions& opts = {});

} // namespace bosonstar
