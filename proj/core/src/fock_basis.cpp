#include "bosonstar/fock_basis.hpp"

#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {
constexpr std::size_t kClamp = std::size_t(1) << 62;

// C(n, k) with saturation at kClamp.
std::size_t binom_clamped(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (long i = 1; i <= k; ++i) {
        // r *= (n - k + i) / i, exact because the running value is a binomial
        const std::size_t num = static_cast<std::size_t>(n - k + i);
        if (r > kClamp / num) return kClamp;
        r = r * num / static_cast<std::size_t>(i);
    }
    return r;
}
} // namespace

std::size_t FockBasis::sector_dimension(int num_modes, int num_particles) {
    return binom_clamped(static_cast<long>(num_particles) + num_modes - 1, num_modes - 1);
}

FockBasis::FockBasis(int num_modes, int num_particles, std::size_t dimension_cap)
    : modes_(num_modes), particles_(num_particles) {
    if (num_modes < 1 || num_modes > 64)
        throw parameter_error("FockBasis: mode count must be in [1, 64], got " + std::to_string(num_modes));
    if (num_particles < 1)
        throw parameter_error("FockBasis: particle number must be >= 1, got " + std::to_string(num_particles));
    dimension_ = sector_dimension(num_modes, num_particles);
    if (dimension_ > dimension_cap)
        throw capacity_error("FockBasis: sector dimension " + std::to_string(dimension_) + " for M=" +
                             std::to_string(num_modes) + ", N=" + std::to_string(num_particles) +
                             " exceeds cap " + std::to_string(dimension_cap));

    // Cache of C(N'+M'-1, M'-1) for all suffix sizes used in ranking.
    suffix_count_.assign(static_cast<std::size_t>(modes_ + 1) * (particles_ + 1), 0);
    for (int m = 0; m <= modes_; ++m)
        for (int p = 0; p <= particles_; ++p)
            suffix_count_[static_cast<std::size_t>(m) * (particles_ + 1) + p] =
                m == 0 ? (p == 0 ? 1 : 0) : binom_clamped(static_cast<long>(p) + m - 1, m - 1);

    storage_.resize(dimension_ * modes_);
    std::vector<int> occ(modes_, 0);
    std::size_t row = 0;
    // Recursive enumeration, first component descending.
    auto emit = [&](auto&& self, int pos, int rem) -> void {
        if (pos == modes_ - 1) {
            occ[pos] = rem;
            for (int a = 0; a < modes_; ++a) storage_[row * modes_ + a] = occ[a];
            ++row;
            return;
        }
        for (int v = rem; v >= 0; --v) {
            occ[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    emit(emit, 0, particles_);
}

std::size_t FockBasis::suffix(int rem_modes, int rem_particles) const {
    return suffix_count_[static_cast<std::size_t>(rem_modes) * (particles_ + 1) + rem_particles];
}

std::size_t FockBasis::index_of(const int* occ) const {
    std::size_t rank = 0;
    int rem = particles_;
    for (int pos = 0; pos < modes_ - 1; ++pos) {
        const int v = occ[pos];
        // States with a larger entry at this position all precede.
        for (int u = v + 1; u <= rem; ++u) rank += suffix(modes_ - pos - 1, rem - u);
        rem -= v;
    }
    return rank;
}

} // namespace bosonstar
