#pragma once

#include <vector>

#include "bosonstar/radial.hpp"
#include "bosonstar/spectral_field.hpp"

namespace bosonstar {

struct HerbstReport {
    int samples = 0;
    int rejected = 0;            // quadrature failed the doubling check
    double max_ratio = 0.0;      // max <1/|x|> / <(1-Lap)^{1/2}>
    double critical = 0.0;       // pi/2, the sharp constant
    std::vector<double> ratios;  // accepted samples, in draw order
};

// Random radial profiles against the sharp relativistic bound
// 1/|x| <= (pi/2) (1-Lap)^{1/2}: the expectation ratio never beats pi/2.
// Samples whose moments move more than `tol` under node doubling are
// rejected and counted.
HerbstReport herbst_check(int samples, Rng& rng, const RadialQuadrature& quadrature = {},
                          double tol = 1e-6);

// Cell average of |u|^{-a} over the unit cube centered at the origin. The
// average over a cube of side h is then h^{-a} times this.
double unit_cell_average_inverse_power(double a);

// Fourier multiplier of the minimum-image |x|^{-a} kernel with the singular
// cell replaced by its exact cell average. Unlike the interaction kernels the
// zero mode is kept: this is a plain positive quadratic form.
std::vector<double> power_kernel_multiplier(const Grid3& grid, double a);

// Ratio <Phi, |x1-x2|^{-a} Phi> / <Phi, S1^alpha S2^beta Phi> with
// S = (1-Lap)^{1/2}, for the symmetric low-rank state
// Phi = sum_r sigma_r psi_r (x) psi_r. All factors share one grid.
double mixed_power_ratio(const std::vector<double>& sigma,
                         const std::vector<SpectralField>& factors, double a, double alpha,
                         double beta);

struct MixedPowerOptions {
    int grid_n = 16;
    double box_L = 12.0;
    int max_rank = 3;
    double tol = 1e-6; // guard for non-finite ratios
};

struct MixedPowerReport {
    double a = 0.0, alpha = 0.0, beta = 0.0;
    int samples = 0;
    int rejected = 0;
    double max_ratio = 0.0;      // empirical lower bound on the constant C(a)
    std::vector<double> ratios;
};

// Requires a in (0,3), alpha > 0, beta > 0 and alpha + beta = 2a. Trials are
// products (rank 1) and random low-rank symmetric combinations of radial
// Gaussian-sum states sampled on the shared grid.
MixedPowerReport mixed_power_check(double a, double alpha, double beta, int samples, Rng& rng,
                                   const MixedPowerOptions& options = {});

} // namespace bosonstar
