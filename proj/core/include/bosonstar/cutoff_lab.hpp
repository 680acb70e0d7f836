#pragma once

#include <vector>

#include "bosonstar/hamiltonian.hpp"
#include "bosonstar/hartree_evolve.hpp"
#include "bosonstar/propagate.hpp"
#include "bosonstar/random.hpp"
#include "bosonstar/trial_fields.hpp"

namespace bosonstar {

struct EpsilonPoint {
    double epsilon = 0.0;
    double discrepancy = 0.0; // || psi_t - psi~_t || in Fock space
    double bound = 0.0;       // C t eps^{1/4} with the fitted C
};

struct EpsilonCompareResult {
    std::vector<EpsilonPoint> points; // sorted by decreasing epsilon
    double fitted_C = 0.0;            // disc(eps_max) / (t eps_max^{1/4})
    double exponent_tail = 0.0;       // slope from the two smallest eps
    double exponent_full = 0.0;       // full-grid log-log fit (diagnostic)
    bool monotone = false;            // disc shrinks with eps (1e-10 slack)
    bool bounded = false;             // disc <= bound throughout
};

// Propagate the same initial condensate under the exact pair potential and
// under the regularized one (a = eps/N) for each eps; the Fock-space gap at
// time t should shrink at least like eps^{1/4}, with the constant calibrated
// at the largest eps.
EpsilonCompareResult epsilon_compare(const ModeSet& modes, int N, double lambda,
                                     const std::vector<cd>& c0, double t,
                                     std::vector<double> epsilons,
                                     const PropagateOptions& opts = {});

struct KappaBoundRow {
    double kappa = 0.0;
    double particles = 0.0;
    double lhs = 0.0;    // N || phi_kappa - phi ||
    double rhs = 0.0;    // kappa || phi ||_H1
    double margin = 0.0; // rhs - lhs, >= 0 when the bound holds
};

struct KappaBoundResult {
    std::vector<KappaBoundRow> rows; // one per (field, kappa, N) trial
    int trials = 0;
    int violations = 0;       // lhs above rhs * (1 + 1e-12)
    double max_ratio = 0.0;   // max lhs / rhs
    double kappa_at_max = 0.0;
    double particles_at_max = 0.0;
};

// Exact per-mode bound: |e^{-kappa|k|/N} - 1| <= kappa sqrt(1+|k|^2) / N, so
// lhs never passes rhs. Checked on random smooth fields.
KappaBoundResult kappa_bound_check(const Grid3& grid, int num_fields,
                                   const std::vector<double>& kappas,
                                   const std::vector<double>& particle_numbers, Rng& rng,
                                   double k0 = 3.0);

struct AprioriTraceResult {
    std::vector<double> times;
    std::vector<double> w1;   // Tr[(1+|k|^2)^{1/2} gamma1(t)]
    std::vector<double> w2;   // second dispersion moment
    double max_growth_w1 = 0.0; // max_t w1(t) / w1(0)
    double max_growth_w2 = 0.0;
    bool flagged = false; // some sample exceeded 1.05x the running max
};

// Track the first and second dispersion moments of the one-particle marginal
// along the N-body evolution. A sample is flagged when it exceeds 1.05 times
// the running max of the earlier samples (uniform-boundedness surrogate).
AprioriTraceResult apriori_trace(const ModeSet& modes, const PairPotential& potential,
                                 double lambda, const std::vector<cd>& c0, int N, double T,
                                 int samples, const PropagateOptions& opts = {});

} // namespace bosonstar
