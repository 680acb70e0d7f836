#pragma once

#include <array>

#include "bosonstar/random.hpp"
#include "bosonstar/spectral_field.hpp"

namespace bosonstar {

// L2-normalized Gaussian exp(-|x-c|^2 / (2 sigma^2)) wrapped onto the box
// (minimum-image displacement from the center).
SpectralField make_gaussian(const Grid3& grid, double sigma, std::array<double, 3> center);

// Gaussian centered in the box.
SpectralField make_centered_gaussian(const Grid3& grid, double sigma);

// Random smooth normalized field: complex Gaussian spectral coefficients
// damped by exp(-|k|^2 / k0^2). Deterministic given the Rng state.
SpectralField random_smooth_field(const Grid3& grid, Rng& rng, double k0);

// Rescale to unit L2 norm (error on the zero field).
SpectralField normalized(const SpectralField& phi);

} // namespace bosonstar
