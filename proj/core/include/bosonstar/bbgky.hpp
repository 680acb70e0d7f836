#pragma once

#include <vector>

#include "bosonstar/mode_hartree.hpp"
#include "bosonstar/propagate.hpp"

namespace bosonstar {

// Tr_2 [V, X] = A - A* with A_{ac} = sum_b <a b| V X |c b>, evaluated by
// looping interaction channels (cost channels x M). X is the flat M^2 x M^2
// two-particle matrix with row a*M+b, column c*M+d.
std::vector<cd> tr2_commutator(const ModeSet& modes, const InteractionTable& table,
                               const std::vector<cd>& X);

struct BbgkyOptions {
    double dt = 1e-3;         // uniform sample spacing, also the difference step
    double time = 0.2;        // total span; residuals at interior samples
    double hartree_dt = 1e-4; // integrator step hint for the factored flow
    PropagateOptions prop{};
};

// One-particle hierarchy residuals along a trajectory sampled at uniform dt.
// At each interior sample the time derivative i d/dt gamma is formed by a
// central difference and compared against the hierarchy right-hand side:
//   finite (N-body):   [h, gamma1] + lambda (1 - 1/N) Tr_2 [V, gamma2]
//   factored (limit):  [h, gamma ] + lambda Tr_2 [V, gamma (x) gamma]
// with the factored line evaluated on the mean-field flow. Residuals are
// Frobenius norms.
struct BbgkySeries {
    std::vector<double> times; // interior sample times
    std::vector<double> finite_residual;
    std::vector<double> infinite_residual;
    double max_finite = 0.0;
    double max_infinite = 0.0;
    double rhs_scale_finite = 0.0;   // max Frobenius of the RHS, for context
    double rhs_scale_infinite = 0.0;
};

BbgkySeries bbgky_residual_series(const ModeSet& modes, const PairPotential& potential,
                                  double lambda, const std::vector<cd>& c0, int N,
                                  const BbgkyOptions& opts = {});

} // namespace bosonstar
