#pragma once

#include "bosonstar/fock_state.hpp"

namespace bosonstar {

struct PropagateOptions {
    double dt = 0.05;                   // Krylov step size
    std::size_t dense_threshold = 512;  // below this, exact eigendecomposition
    int max_krylov = 40;
    double krylov_tol = 1e-12;
};

// psi(t) = exp(-i t H) psi0. Dense eigendecomposition below dense_threshold;
// otherwise short-step Lanczos with full reorthogonalization, adaptive step
// halving on non-convergence, and per-step norm restoration (drift beyond
// 1e-9 per step is treated as failure).
FockVec propagate(const SparseHermitian& H, const FockVec& psi0, double t,
                  const PropagateOptions& opts = {});

} // namespace bosonstar
