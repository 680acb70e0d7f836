#include "bosonstar/bbgky.hpp"

#include <cmath>
#include <complex>

#include "bosonstar/errors.hpp"
#include "bosonstar/fock_state.hpp"
#include "bosonstar/hamiltonian.hpp"
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

// [h, gamma] with h = diag(eps).
std::vector<cd> dispersion_commutator(const ModeSet& modes, const std::vector<cd>& gamma) {
    const int M = modes.size();
    std::vector<cd> out(gamma.size());
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            out[static_cast<std::size_t>(p) * M + q] =
                (modes.dispersion(p) - modes.dispersion(q)) * gamma[static_cast<std::size_t>(p) * M + q];
    return out;
}

double frobenius(const std::vector<cd>& v) {
    double s = 0.0;
    for (const cd& x : v)
        s += std::norm(x);
    return std::sqrt(s);
}

std::vector<cd> projector(const std::vector<cd>& c) {
    const int M = static_cast<int>(c.size());
    std::vector<cd> g(static_cast<std::size_t>(M) * M);
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b)
            g[static_cast<std::size_t>(a) * M + b] = c[a] * std::conj(c[b]);
    return g;
}

} // namespace

std::vector<cd> tr2_commutator(const ModeSet& modes, const InteractionTable& table,
                               const std::vector<cd>& X) {
    const int M = modes.size();
    const std::size_t M2 = static_cast<std::size_t>(M) * M;
    if (X.size() != M2 * M2)
        throw parameter_error("two-particle matrix does not match the mode set");
    const double L = modes.L();
    const double inv_vol = 1.0 / (L * L * L);

    std::vector<cd> A(M2, cd(0.0, 0.0));
    for (const InteractionChannel& ch : table.channels) {
        const double v = ch.w * inv_vol;
        const std::size_t row_in = (static_cast<std::size_t>(ch.a) * M + ch.b) * M2;
        cd* arow = A.data() + static_cast<std::size_t>(ch.a_out) * M;
        for (int c = 0; c < M; ++c)
            arow[c] += v * X[row_in + static_cast<std::size_t>(c) * M + ch.b_out];
    }
    std::vector<cd> out(M2);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            out[static_cast<std::size_t>(p) * M + q] =
                A[static_cast<std::size_t>(p) * M + q] -
                std::conj(A[static_cast<std::size_t>(q) * M + p]);
    return out;
}

BbgkySeries bbgky_residual_series(const ModeSet& modes, const PairPotential& potential,
                                  double lambda, const std::vector<cd>& c0, int N,
                                  const BbgkyOptions& opts) {
    const int M = modes.size();
    const std::size_t M2 = static_cast<std::size_t>(M) * M;
    if (N < 2)
        throw parameter_error("hierarchy check needs at least 2 particles");
    if (!(opts.dt > 0.0) || !(opts.time > 0.0))
        throw parameter_error("dt and time must be positive");
    const long steps = std::lround(opts.time / opts.dt);
    if (steps < 2 || std::abs(static_cast<double>(steps) * opts.dt - opts.time) > 1e-9 * opts.time)
        throw parameter_error("time must be a multiple of dt with at least 2 steps");
    if (!(opts.hartree_dt > 0.0))
        throw parameter_error("hartree_dt must be positive");

    const std::vector<cd> c = normalized_amplitudes(c0);
    const InteractionTable table = build_interaction_table(modes, potential);
    const cd iu(0.0, 1.0);
    const double inv_2dt = 1.0 / (2.0 * opts.dt);

    BbgkySeries out;
    out.times.reserve(steps - 1);
    for (long j = 1; j < steps; ++j)
        out.times.push_back(static_cast<double>(j) * opts.dt);

    // Finite hierarchy along the N-body flow. The RHS at sample j is formed
    // while psi_j is in hand; the residual is closed once gamma_{j+1} arrives.
    {
        FockBasis basis(M, N);
        const HamiltonianBuild build = build_hamiltonian(basis, modes, potential, lambda);
        const double factor = lambda * (1.0 - 1.0 / static_cast<double>(N));

        FockVec psi = condensate_state(basis, c);
        std::vector<std::vector<cd>> gam(steps + 1);
        gam[0] = rdm(basis, psi, 1).data;
        std::vector<std::vector<cd>> rhs(steps); // interior samples 1..steps-1
        for (long j = 1; j <= steps; ++j) {
            psi = propagate(build.H, psi, opts.dt, opts.prop);
            gam[j] = rdm(basis, psi, 1).data;
            if (j < steps) {
                const std::vector<cd> X = rdm2_product(basis, psi);
                const std::vector<cd> comm_h = dispersion_commutator(modes, gam[j]);
                const std::vector<cd> comm_v = tr2_commutator(modes, table, X);
                rhs[j].resize(M2);
                for (std::size_t i = 0; i < M2; ++i)
                    rhs[j][i] = comm_h[i] + factor * comm_v[i];
                out.rhs_scale_finite = std::max(out.rhs_scale_finite, frobenius(rhs[j]));
            }
        }
        for (long j = 1; j < steps; ++j) {
            std::vector<cd> diff(M2);
            for (std::size_t i = 0; i < M2; ++i)
                diff[i] = iu * (gam[j + 1][i] - gam[j - 1][i]) * inv_2dt - rhs[j][i];
            const double r = frobenius(diff);
            out.finite_residual.push_back(r);
            out.max_finite = std::max(out.max_finite, r);
        }
    }

    // Factored hierarchy on the mean-field flow, same sample comb.
    {
        const long sub = std::max(1L, std::lround(opts.dt / opts.hartree_dt));
        const double hdt = opts.dt / static_cast<double>(sub);
        const ModeHartreeResult flow = mode_hartree_evolve(modes, potential, lambda, c, opts.time,
                                                           hdt, static_cast<int>(sub));
        if (static_cast<long>(flow.samples.size()) != steps + 1)
            throw invalid_state_error("mean-field flow sample count mismatch");

        for (long j = 1; j < steps; ++j) {
            const std::vector<cd>& cc = flow.samples[j];
            const std::vector<cd> g_m = projector(flow.samples[j - 1]);
            const std::vector<cd> g_c = projector(cc);
            const std::vector<cd> g_p = projector(flow.samples[j + 1]);

            std::vector<cd> X(M2 * M2);
            for (int a = 0; a < M; ++a)
                for (int b = 0; b < M; ++b) {
                    const cd amp = cc[a] * cc[b];
                    const std::size_t row = (static_cast<std::size_t>(a) * M + b) * M2;
                    for (int p = 0; p < M; ++p)
                        for (int q = 0; q < M; ++q)
                            X[row + static_cast<std::size_t>(p) * M + q] =
                                amp * std::conj(cc[p] * cc[q]);
                }

            const std::vector<cd> comm_h = dispersion_commutator(modes, g_c);
            const std::vector<cd> comm_v = tr2_commutator(modes, table, X);
            std::vector<cd> rhs(M2), diff(M2);
            for (std::size_t i = 0; i < M2; ++i) {
                rhs[i] = comm_h[i] + lambda * comm_v[i];
                diff[i] = iu * (g_p[i] - g_m[i]) * inv_2dt - rhs[i];
            }
            out.rhs_scale_infinite = std::max(out.rhs_scale_infinite, frobenius(rhs));
            const double r = frobenius(diff);
            out.infinite_residual.push_back(r);
            out.max_infinite = std::max(out.max_infinite, r);
        }
    }
    return out;
}

} // namespace bosonstar
