#pragma once

#include <cstddef>
#include <vector>

namespace bosonstar {

// Occupation-number basis of the N-particle bosonic sector over M modes.
// Dimension C(N+M-1, M-1). States are ordered with the first component
// descending, so (N, 0, ..., 0) comes first and (0, ..., 0, N) last.
class FockBasis {
  public:
    FockBasis(int num_modes, int num_particles, std::size_t dimension_cap = 200000);

    int modes() const { return modes_; }
    int particles() const { return particles_; }
    std::size_t dimension() const { return dimension_; }

    // Pointer to M occupation numbers of basis state idx.
    const int* occupation(std::size_t idx) const { return &storage_[idx * modes_]; }

    // Rank of an occupation vector (length M, entries summing to N).
    std::size_t index_of(const int* occ) const;

    // Number of occupation vectors of total N over M modes (clamped at 2^62).
    static std::size_t sector_dimension(int num_modes, int num_particles);

  private:
    int modes_;
    int particles_;
    std::size_t dimension_;
    std::vector<int> storage_;              // dimension x modes, row-major
    std::vector<std::size_t> suffix_count_; // C(N'+M'-1, M'-1) cache
    std::size_t suffix(int rem_modes, int rem_particles) const;
};

} // namespace bosonstar
