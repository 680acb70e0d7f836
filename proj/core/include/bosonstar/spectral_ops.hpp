#pragma once

#include <vector>

#include "bosonstar/coulomb_kernel.hpp"
#include "bosonstar/spectral_field.hpp"

namespace bosonstar {

// Real scalar field on a grid (e.g. a mean-field potential or a density).
struct RealField {
    Grid3 grid;
    std::vector<double> values;
};

enum class NormKind { L2, Hhalf, H1 };

struct EnergyBreakdown {
    double kinetic = 0.0;  // <phi, (1-Lap)^{1/2} phi>
    double coulomb = 0.0;  // int (V * |phi|^2) |phi|^2, lambda not included
    double total = 0.0;    // kinetic + (lambda/2) * coulomb
};

// (1-Lap)^r: multiplies the spectrum by (1+|k|^2)^r. Requires r in [-2, 2].
SpectralField sobolev_apply(const SpectralField& phi, double r);

// lambda * (V * |phi|^2) as a real field. The inverse transform must come out
// real; an imaginary residue above 1e-8 (relative) is an error.
RealField hartree_potential(const SpectralField& phi, const CoulombKernel& kernel, double lambda);

// Energy functional E = K + (lambda/2) D with K, D as in EnergyBreakdown.
EnergyBreakdown energy(const SpectralField& phi, const CoulombKernel& kernel, double lambda);

// Momentum damping: spectrum times exp(-kappa |k| / N). kappa >= 0, N >= 1.
SpectralField smooth_kappa(const SpectralField& phi, double kappa, double N);

// L2, H^{1/2} or H^1 norm (the latter two through (1+|k|^2)^{1/2} resp.
// (1+|k|^2) spectral weights).
double field_norm(const SpectralField& phi, NormKind kind);

// <phi, psi> with the L2 pairing on the box (conjugate-linear in phi).
cd inner_product(const SpectralField& phi, const SpectralField& psi);

// |phi(x)|^2 as position samples.
std::vector<double> density(const SpectralField& phi);

// Homogeneous half-kinetic term sum_k |k| |phihat(k)|^2 / L^3.
double homogeneous_half_energy(const SpectralField& phi);

// Fraction of the squared L2 mass carried by modes with max-norm index
// above `frac` of the Nyquist band; used for resolvability checks.
double spectral_tail_fraction(const SpectralField& phi, double frac);

} // namespace bosonstar
