#pragma once

#include <vector>

#include "bosonstar/grid.hpp"

namespace bosonstar {

enum class KernelVariant { Exact, Regularized };

// Fourier multiplier W(k) of the pair potential on the periodic box, used for
// convolutions (V * rho)(x) = L^-3 sum_k W(k) rhohat(k) e^{ikx}.
//
//   Exact:        W(k) = 4*pi/|k|^2, the continuum Coulomb multiplier.
//   Regularized:  DFT of x -> 1/(d_min(x) + a), sampled with the
//                 minimum-image distance d_min on the grid.
//
// Both variants set W(0) = 0: the zero mode is dropped, which subtracts a
// uniform neutralizing background. Energies therefore carry a constant
// offset relative to free space, but differences and dynamics are unchanged
// up to a global phase.
class CoulombKernel {
  public:
    static CoulombKernel make_exact(const Grid3& grid);
    static CoulombKernel make_regularized(const Grid3& grid, double a);

    const Grid3& grid() const { return grid_; }
    KernelVariant variant() const { return variant_; }
    double regularization() const { return a_; }

    // Multiplier values indexed like a spectrum (x-fastest storage order).
    const std::vector<double>& multiplier() const { return multiplier_; }

  private:
    CoulombKernel(const Grid3& grid, KernelVariant variant, double a)
        : grid_(grid), variant_(variant), a_(a) {}

    Grid3 grid_;
    KernelVariant variant_;
    double a_;
    std::vector<double> multiplier_;
};

} // namespace bosonstar
