#include "bosonstar/mean_field.hpp"

#include <algorithm>
#include <cmath>

#include "bosonstar/errors.hpp"
#include "bosonstar/fock_state.hpp"
#include "bosonstar/rdm.hpp"

namespace bosonstar {

namespace {

std::vector<cd> normalized_amplitudes(const std::vector<cd>& c) {
    double s = 0.0;
    for (const cd& v : c)
        s += std::norm(v);
    if (s <= 0.0)
        throw parameter_error("initial amplitudes must be nonzero");
    std::vector<cd> out = c;
    const double inv = 1.0 / std::sqrt(s);
    for (cd& v : out)
        v *= inv;
    return out;
}

} // namespace

MeanFieldSweep mean_field_convergence(const ModeSet& modes, const PairPotential& potential,
                                      double lambda, const std::vector<cd>& c0, double t,
                                      const std::vector<int>& Ns, double hartree_dt,
                                      const PropagateOptions& opts) {
    if (Ns.empty())
        throw parameter_error("particle-number sweep must not be empty");
    if (!(t > 0.0))
        throw parameter_error("comparison time must be positive");
    const int M = modes.size();
    const std::vector<cd> c = normalized_amplitudes(c0);

    // Fit dt so that it divides t exactly.
    const long hsteps = std::max(1L, std::lround(t / hartree_dt));
    const double dt = t / static_cast<double>(hsteps);
    ModeHartreeResult hartree =
        mode_hartree_evolve(modes, potential, lambda, c, t, dt, static_cast<int>(hsteps));
    const std::vector<cd>& ct = hartree.samples.back();

    ReducedDensityMatrix projector;
    projector.k = 1;
    projector.modes = M;
    projector.data.resize(static_cast<std::size_t>(M) * M);
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b)
            projector.data[static_cast<std::size_t>(a) * M + b] = ct[a] * std::conj(ct[b]);

    MeanFieldSweep sweep;
    sweep.hartree_final = ct;
    for (int N : Ns) {
        if (N < 1)
            throw parameter_error("particle numbers must be positive");
        FockBasis basis(M, N);
        HamiltonianBuild build = build_hamiltonian(basis, modes, potential, lambda);
        FockVec psi = condensate_state(basis, c);
        psi = propagate(build.H, psi, t, opts);
        ReducedDensityMatrix gamma = rdm(basis, psi, 1);
        sweep.points.push_back({N, trace_distance(gamma, projector)});
    }

    // Least-squares slope of ln(distance) against ln(N).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (const MeanFieldPoint& p : sweep.points) {
        if (!(p.distance > 0.0))
            continue;
        const double x = std::log(static_cast<double>(p.particles));
        const double y = std::log(p.distance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    const double denom = used >= 2 ? used * sxx - sx * sx : 0.0;
    sweep.slope = std::abs(denom) > 1e-12 ? (used * sxy - sx * sy) / denom : 0.0;
    return sweep;
}

} // namespace bosonstar
