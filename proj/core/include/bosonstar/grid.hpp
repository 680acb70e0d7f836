#pragma once

#include <array>
#include <cstddef>

namespace bosonstar {

// Uniform periodic box [0, L)^3 with n points per axis. Fields live on the
// lattice x_j = j*h, h = L/n; the dual lattice carries integer mode triples
// m in {-n/2, ..., n/2-1}^3 with momentum k(m) = (2*pi/L) * m.
//
// Storage is row-major with x fastest: index = x + n*(y + n*z).
class Grid3 {
  public:
    Grid3(int n, double L);

    int n() const { return n_; }
    double L() const { return L_; }
    double spacing() const { return h_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
    double cell_volume() const { return h_ * h_ * h_; }
    double volume() const { return L_ * L_ * L_; }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) + static_cast<std::size_t>(n_) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(n_) * z);
    }

    // Signed integer mode for storage index i along one axis.
    int signed_mode(int i) const { return i < n_ / 2 ? i : i - n_; }

    // Momentum component for storage index i along one axis.
    double k_axis(int i) const { return two_pi_over_L_ * signed_mode(i); }

    // |k|^2 for the storage triple (x, y, z).
    double k_squared(int x, int y, int z) const {
        const double kx = k_axis(x), ky = k_axis(y), kz = k_axis(z);
        return kx * kx + ky * ky + kz * kz;
    }

    // Minimum-image distance from the origin for the storage triple.
    double min_image_distance(int x, int y, int z) const;

    std::array<double, 3> point(int x, int y, int z) const {
        return {h_ * x, h_ * y, h_ * z};
    }

    bool operator==(const Grid3& o) const { return n_ == o.n_ && L_ == o.L_; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

  private:
    int n_;
    double L_;
    double h_;
    double two_pi_over_L_;
};

} // namespace bosonstar
