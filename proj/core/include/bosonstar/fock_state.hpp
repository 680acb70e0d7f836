#pragma once

#include <vector>

#include "bosonstar/fock_basis.hpp"
#include "bosonstar/sparse_hermitian.hpp"

namespace bosonstar {

// Amplitudes over a FockBasis (same ordering).
using FockVec = std::vector<cd>;

double fock_norm(const FockVec& psi);

// Product condensate (sum_a c_a a+_a)^N |0> / sqrt(N!): the amplitude on
// occupation n is sqrt(N! / prod n_a!) prod c_a^{n_a}. Requires |c| = 1 to
// 1e-12; the result is unit-norm to the same tolerance.
FockVec condensate_state(const FockBasis& basis, const std::vector<cd>& c);

} // namespace bosonstar
