#include "bosonstar/grid.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Grid3::Grid3(int n, double L) : n_(n), L_(L) {
    if (n < 4 || n % 2 != 0)
        throw parameter_error("Grid3: n must be even and >= 4, got n=" + std::to_string(n));
    if (!(L > 0.0) || !std::isfinite(L))
        throw parameter_error("Grid3: box length must be positive and finite, got L=" + std::to_string(L));
    h_ = L_ / n_;
    two_pi_over_L_ = kTwoPi / L_;
}

double Grid3::min_image_distance(int x, int y, int z) const {
    auto axis = [this](int i) {
        double d = h_ * i;
        if (d > 0.5 * L_) d -= L_;
        return d;
    };
    const double dx = axis(x), dy = axis(y), dz = axis(z);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace bosonstar
