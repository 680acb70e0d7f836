#pragma once

#include <vector>

#include "bosonstar/coulomb_kernel.hpp"
#include "bosonstar/spectral_ops.hpp"

namespace bosonstar {

struct TrajectorySample {
    double t = 0.0;
    double norm = 0.0;
    double energy = 0.0;   // E = K + (lambda/2) D
    double kinetic = 0.0;  // K
    double coulomb = 0.0;  // D
    double hhalf = 0.0;    // H^{1/2} norm
};

// Observable record of a time evolution; sample times strictly increase.
class Trajectory {
  public:
    void append(const TrajectorySample& s);
    const std::vector<TrajectorySample>& samples() const { return samples_; }

  private:
    std::vector<TrajectorySample> samples_;
};

struct EvolveOptions {
    double T = 1.0;
    double dt = 1e-3;
    int sample_every = 10;          // record every this many steps
    double blow_up_hhalf = 1e6;     // runaway-concentration sentinel
};

struct EvolveResult {
    SpectralField final_state;
    Trajectory trajectory;
};

// One step of symmetric (Strang) splitting for
//   i d/dt phi = (1-Lap)^{1/2} phi + lambda (V * |phi|^2) phi :
// half potential phase, full kinetic phase, half potential phase, with the
// potential rebuilt from the current density at the start of each phase
// sub-step. Both sub-steps are pointwise phases, so the L2 norm is conserved
// exactly. Requires dt > 0.
SpectralField strang_step(const SpectralField& phi, const CoulombKernel& kernel, double lambda, double dt);

// March to T with fixed dt, recording samples. Throws
// collapse_suspected_error when the H^{1/2} norm passes the sentinel.
EvolveResult evolve(const SpectralField& phi0, const CoulombKernel& kernel, double lambda,
                    const EvolveOptions& opts);

} // namespace bosonstar
