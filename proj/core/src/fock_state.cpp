#include "bosonstar/fock_state.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

double fock_norm(const FockVec& psi) {
    double acc = 0.0;
    for (const cd& v : psi) acc += std::norm(v);
    return std::sqrt(acc);
}

FockVec condensate_state(const FockBasis& basis, const std::vector<cd>& c) {
    if (static_cast<int>(c.size()) != basis.modes())
        throw parameter_error("condensate_state: amplitude count does not match mode count");
    double c_norm = 0.0;
    for (const cd& v : c) c_norm += std::norm(v);
    if (std::abs(c_norm - 1.0) > 1e-12)
        throw parameter_error("condensate_state: mode amplitudes must be unit-norm, got |c|^2 = " +
                              std::to_string(c_norm));

    const int M = basis.modes();
    const double lg_nfact = std::lgamma(basis.particles() + 1.0);
    FockVec psi(basis.dimension());
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const int* n = basis.occupation(j);
        double lg = lg_nfact;
        cd prod(1.0, 0.0);
        for (int a = 0; a < M; ++a) {
            lg -= std::lgamma(n[a] + 1.0);
            for (int p = 0; p < n[a]; ++p) prod *= c[a];
        }
        psi[j] = std::exp(0.5 * lg) * prod;
    }

    const double nrm = fock_norm(psi);
    if (std::abs(nrm - 1.0) > 1e-12)
        throw invalid_state_error("condensate_state: norm drifted to " + std::to_string(nrm));
    return psi;
}

} // namespace bosonstar
