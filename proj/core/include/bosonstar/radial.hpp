#pragma once

#include <functional>
#include <vector>

#include "bosonstar/random.hpp"

namespace bosonstar {

// Quadrature layout for spherically symmetric states phi(x) = u(|x|)/sqrt(4 pi).
// The r-side moments use a geometric grid (graded toward the origin); the
// sine-transform stage resamples u on a uniform grid so that sin(k r) stays
// resolved up to k_max.
struct RadialQuadrature {
    double r_min = 1e-4;
    double r_max = 40.0;
    int nodes = 400; // geometric r-grid
    double k_min = 1e-4;
    double k_max = 40.0;
    int k_nodes = 400;          // geometric k-grid
    int transform_nodes = 1024; // uniform r-grid feeding the sine transform
};

// Geometric nodes with trapezoid-in-log weights for integral f(r) dr.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;

    static RadialGrid geometric(double r_min, double r_max, int nodes);
};

// Normalized radial samples: sum w u^2 r^2 = 1.
struct RadialState {
    RadialGrid grid;
    std::vector<double> u;
};

RadialState make_radial_state(const std::function<double(double)>& u, const RadialGrid& grid);

struct RadialMoments {
    double norm2 = 0.0;            // integral u^2 r^2 dr before normalization
    double inv_r = 0.0;            // <1/|x|>
    double half_kinetic = 0.0;     // <(1-Lap)^{1/2}>
    double half_kinetic_hom = 0.0; // <(-Lap)^{1/2}>
};

RadialMoments radial_moments(const std::function<double(double)>& u, const RadialQuadrature& q);

struct CheckedMoments {
    RadialMoments value;      // from the refined pass
    double rel_change = 0.0;  // worst relative shift when all node counts double
    bool converged = false;
};

CheckedMoments radial_moments_checked(const std::function<double(double)>& u,
                                      const RadialQuadrature& q, double tol = 1e-6);

// Sum of Gaussians in r: sum_j A_j exp(-(r - c_j)^2 / (2 w_j^2)).
struct GaussianSumProfile {
    struct Term {
        double amp = 0.0;
        double center = 0.0;
        double width = 1.0;
    };
    std::vector<Term> terms;

    double operator()(double r) const;
};

// Random profile with between min_terms and max_terms components, random
// centers, widths and signs.
GaussianSumProfile random_profile(Rng& rng, int min_terms = 3, int max_terms = 6);

} // namespace bosonstar
