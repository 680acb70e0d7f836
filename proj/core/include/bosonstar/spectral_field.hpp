#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bosonstar/grid.hpp"

namespace bosonstar {

using cd = std::complex<double>;

enum class Representation : std::uint32_t { Position = 0, Momentum = 1 };

// Complex scalar field on a Grid3, carrying position samples phi(x_j) and/or
// the discrete spectrum phihat(k). The two representations are linked by
//
//   phihat(k) = h^3 * sum_x phi(x) e^{-i k.x}        (forward)
//   phi(x)    = L^-3 * sum_k phihat(k) e^{+i k.x}    (backward)
//
// i.e. trapezoidal approximations of the continuum Fourier pair, so Parseval
// reads sum_x |phi|^2 h^3 = L^-3 sum_k |phihat|^2. Whichever representation
// is absent is materialized lazily on first access; in-place mutation through
// the mutable_* accessors invalidates the other side.
class SpectralField {
  public:
    static SpectralField zero(const Grid3& grid);
    static SpectralField from_values(const Grid3& grid, std::vector<cd> values);
    static SpectralField from_spectrum(const Grid3& grid, std::vector<cd> spectrum);

    const Grid3& grid() const { return grid_; }

    const std::vector<cd>& values() const;
    const std::vector<cd>& spectrum() const;

    bool has_values() const { return valid_values_; }
    bool has_spectrum() const { return valid_spectrum_; }

    // Write access; drops the other representation.
    std::vector<cd>& mutable_values();
    std::vector<cd>& mutable_spectrum();

    // Throws invalid_state_error if the active representation holds NaN/Inf.
    void check_finite(const char* where) const;

  private:
    explicit SpectralField(const Grid3& grid);

    Grid3 grid_;
    mutable std::vector<cd> values_;
    mutable std::vector<cd> spectrum_;
    mutable bool valid_values_ = false;
    mutable bool valid_spectrum_ = false;
};

namespace detail {
// Raw periodic DFTs with the normalization above. Thread-safe (FFTW plan
// creation is serialized internally).
std::vector<cd> dft_forward(const Grid3& grid, const std::vector<cd>& values);
std::vector<cd> dft_backward(const Grid3& grid, const std::vector<cd>& spectrum);
} // namespace detail

} // namespace bosonstar
