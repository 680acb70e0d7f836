#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bosonstar {

using cd = std::complex<double>;

// Hermitian sparse matrix storing each entry once with col >= row; matvec
// applies the Hermitian completion. Build with add() then finalize().
class SparseHermitian {
  public:
    explicit SparseHermitian(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t stored_entries() const { return rows_.size(); }

    // Requires col >= row; duplicate (row, col) pairs are merged in finalize.
    void add(std::size_t row, std::size_t col, cd value);
    void finalize();

    // y = H x. y is overwritten.
    void matvec(const cd* x, cd* y) const;
    std::vector<cd> apply(const std::vector<cd>& x) const;

    // Dense row-major dim x dim copy with both triangles filled in.
    std::vector<cd> to_dense() const;

    bool finalized() const { return finalized_; }

    // Access to stored (upper) entries, e.g. for norm estimates.
    const std::vector<std::uint32_t>& rows() const { return rows_; }
    const std::vector<std::uint32_t>& cols() const { return cols_; }
    const std::vector<cd>& values() const { return vals_; }

  private:
    std::size_t dim_;
    bool finalized_ = false;
    std::vector<std::uint32_t> rows_;
    std::vector<std::uint32_t> cols_;
    std::vector<cd> vals_;
};

} // namespace bosonstar
