#include "bosonstar/sparse_hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

void SparseHermitian::add(std::size_t row, std::size_t col, cd value) {
    if (finalized_) throw invalid_state_error("SparseHermitian: add after finalize");
    if (row >= dim_ || col >= dim_) throw parameter_error("SparseHermitian: index out of range");
    if (col < row) throw parameter_error("SparseHermitian: entries must satisfy col >= row");
    rows_.push_back(static_cast<std::uint32_t>(row));
    cols_.push_back(static_cast<std::uint32_t>(col));
    vals_.push_back(value);
}

void SparseHermitian::finalize() {
    if (finalized_) return;
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
        if (rows_[a] != rows_[b]) return rows_[a] < rows_[b];
        return cols_[a] < cols_[b];
    });

    std::vector<std::uint32_t> r2, c2;
    std::vector<cd> v2;
    r2.reserve(rows_.size());
    c2.reserve(rows_.size());
    v2.reserve(rows_.size());
    for (std::size_t i : order) {
        if (!r2.empty() && r2.back() == rows_[i] && c2.back() == cols_[i]) {
            v2.back() += vals_[i];
        } else {
            r2.push_back(rows_[i]);
            c2.push_back(cols_[i]);
            v2.push_back(vals_[i]);
        }
    }
    // Hermiticity demands real diagonal entries.
    for (std::size_t i = 0; i < r2.size(); ++i) {
        if (r2[i] == c2[i]) {
            if (std::abs(v2[i].imag()) > 1e-12 * (1.0 + std::abs(v2[i].real())))
                throw invalid_state_error("SparseHermitian: diagonal entry has imaginary part " +
                                          std::to_string(v2[i].imag()));
            v2[i] = cd(v2[i].real(), 0.0);
        }
    }
    rows_ = std::move(r2);
    cols_ = std::move(c2);
    vals_ = std::move(v2);
    finalized_ = true;
}

void SparseHermitian::matvec(const cd* x, cd* y) const {
    if (!finalized_) throw invalid_state_error("SparseHermitian: matvec before finalize");
    std::fill(y, y + dim_, cd(0.0, 0.0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::uint32_t r = rows_[i], c = cols_[i];
        const cd v = vals_[i];
        y[r] += v * x[c];
        if (c != r) y[c] += std::conj(v) * x[r];
    }
}

std::vector<cd> SparseHermitian::apply(const std::vector<cd>& x) const {
    if (x.size() != dim_) throw parameter_error("SparseHermitian: vector length mismatch");
    std::vector<cd> y(dim_);
    matvec(x.data(), y.data());
    return y;
}

std::vector<cd> SparseHermitian::to_dense() const {
    if (!finalized_) throw invalid_state_error("SparseHermitian: to_dense before finalize");
    std::vector<cd> d(dim_ * dim_, cd(0.0, 0.0));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t r = rows_[i], c = cols_[i];
        d[r * dim_ + c] += vals_[i];
        if (c != r) d[c * dim_ + r] += std::conj(vals_[i]);
    }
    return d;
}

} // namespace bosonstar
