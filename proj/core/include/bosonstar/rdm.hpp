#pragma once

#include <vector>

#include "bosonstar/fock_state.hpp"

namespace bosonstar {

// k-particle reduced density matrix in mode space, trace-normalized to 1.
//
// k = 1: gamma_{ab} = <a+_b a_a> / N, an M x M matrix (row a, column b).
// k = 2: matrix on the orthonormal symmetric pair basis indexed by pairs
//        p = (a <= b); entries <s_p| gamma2 |s_q> with gamma2 the two-particle
//        marginal <a+_c a+_d a_b a_a> / (N(N-1)); mixed pairs carry the
//        sqrt(2) symmetrization weight relative to diagonal (a, a) pairs.
struct ReducedDensityMatrix {
    int k = 1;
    int modes = 0;
    std::vector<cd> data; // row-major, side = M (k=1) or M(M+1)/2 (k=2)

    std::size_t side() const;
    cd at(std::size_t r, std::size_t c) const { return data[r * side() + c]; }
};

ReducedDensityMatrix rdm(const FockBasis& basis, const FockVec& psi, int k);

// Two-particle marginal as an operator on the full product space: row index
// a*M + b, column c*M + d, entry <a+_c a+_d a_b a_a> / (N(N-1)).
std::vector<cd> rdm2_product(const FockBasis& basis, const FockVec& psi);

// Trace norm ||A - B||_1 = sum |eigenvalues| for Hermitian same-shape inputs.
double trace_distance(const ReducedDensityMatrix& A, const ReducedDensityMatrix& B);
double trace_distance_dense(std::size_t side, const std::vector<cd>& A, const std::vector<cd>& B);

} // namespace bosonstar
