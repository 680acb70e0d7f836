#include "bosonstar/coulomb_kernel.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"
#include "bosonstar/spectral_field.hpp"

namespace bosonstar {

namespace {
constexpr double kFourPi = 12.566370614359172953850573533118;
}

CoulombKernel CoulombKernel::make_exact(const Grid3& grid) {
    CoulombKernel k(grid, KernelVariant::Exact, 0.0);
    k.multiplier_.resize(grid.size());
    const int n = grid.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double k2 = grid.k_squared(x, y, z);
                k.multiplier_[grid.index(x, y, z)] = k2 > 0.0 ? kFourPi / k2 : 0.0;
            }
    return k;
}

CoulombKernel CoulombKernel::make_regularized(const Grid3& grid, double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw parameter_error("CoulombKernel: regularization must be positive and finite, got a=" +
                              std::to_string(a));
    CoulombKernel k(grid, KernelVariant::Regularized, a);

    const int n = grid.n();
    std::vector<cd> samples(grid.size());
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                samples[grid.index(x, y, z)] = cd(1.0 / (grid.min_image_distance(x, y, z) + a), 0.0);

    // The sampled potential is real and even under x -> -x on the lattice, so
    // its DFT must be real; enforce that and keep the real part.
    std::vector<cd> hat = detail::dft_forward(grid, samples);
    k.multiplier_.resize(grid.size());
    double max_abs = 0.0, max_imag = 0.0;
    for (const cd& v : hat) {
        max_abs = std::max(max_abs, std::abs(v));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-8 * max_abs)
        throw invalid_state_error("CoulombKernel: sampled multiplier has imaginary residue " +
                                  std::to_string(max_imag / max_abs));
    for (std::size_t i = 0; i < hat.size(); ++i) k.multiplier_[i] = hat[i].real();
    k.multiplier_[0] = 0.0; // zero-mode convention, as in the exact variant
    return k;
}

} // namespace bosonstar
