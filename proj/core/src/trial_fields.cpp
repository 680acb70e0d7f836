#include "bosonstar/trial_fields.hpp"

#include <cmath>
#include <vector>

#include "bosonstar/errors.hpp"
#include "bosonstar/spectral_ops.hpp"

namespace bosonstar {

SpectralField make_gaussian(const Grid3& grid, double sigma, std::array<double, 3> center) {
    if (!(sigma > 0.0)) throw parameter_error("make_gaussian: sigma must be positive");
    const int n = grid.n();
    const double L = grid.L();
    std::vector<cd> vals(grid.size());
    auto wrap = [L](double d) {
        d = std::fmod(d, L);
        if (d > 0.5 * L) d -= L;
        if (d < -0.5 * L) d += L;
        return d;
    };
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const auto p = grid.point(x, y, z);
                const double dx = wrap(p[0] - center[0]);
                const double dy = wrap(p[1] - center[1]);
                const double dz = wrap(p[2] - center[2]);
                const double r2 = dx * dx + dy * dy + dz * dz;
                vals[grid.index(x, y, z)] = cd(std::exp(-r2 / (2.0 * sigma * sigma)), 0.0);
            }
    return normalized(SpectralField::from_values(grid, std::move(vals)));
}

SpectralField make_centered_gaussian(const Grid3& grid, double sigma) {
    const double c = 0.5 * grid.L();
    return make_gaussian(grid, sigma, {c, c, c});
}

SpectralField random_smooth_field(const Grid3& grid, Rng& rng, double k0) {
    const int n = grid.n();
    std::vector<cd> hat(grid.size());
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double damp = std::exp(-grid.k_squared(x, y, z) / (k0 * k0));
                hat[grid.index(x, y, z)] = damp * cd(rng.normal(), rng.normal());
            }
    return normalized(SpectralField::from_spectrum(grid, std::move(hat)));
}

SpectralField normalized(const SpectralField& phi) {
    const double nrm = field_norm(phi, NormKind::L2);
    if (!(nrm > 0.0)) throw invalid_state_error("normalized: zero field");
    if (phi.has_values()) {
        std::vector<cd> vals = phi.values();
        for (auto& v : vals) v /= nrm;
        return SpectralField::from_values(phi.grid(), std::move(vals));
    }
    std::vector<cd> hat = phi.spectrum();
    for (auto& v : hat) v /= nrm;
    return SpectralField::from_spectrum(phi.grid(), std::move(hat));
}

} // namespace bosonstar
