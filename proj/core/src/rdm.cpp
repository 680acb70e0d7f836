#include "bosonstar/rdm.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

std::size_t ReducedDensityMatrix::side() const {
    return k == 1 ? static_cast<std::size_t>(modes)
                  : static_cast<std::size_t>(modes) * (modes + 1) / 2;
}

namespace {

ReducedDensityMatrix rdm1(const FockBasis& basis, const FockVec& psi) {
    const int M = basis.modes();
    const double N = basis.particles();
    ReducedDensityMatrix out;
    out.k = 1;
    out.modes = M;
    out.data.assign(static_cast<std::size_t>(M) * M, cd(0.0, 0.0));

    std::vector<int> occ(M);
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const cd amp = psi[j];
        if (amp == cd(0.0, 0.0)) continue;
        const int* n = basis.occupation(j);
        for (int a = 0; a < M; ++a) {
            if (n[a] == 0) continue;
            out.data[static_cast<std::size_t>(a) * M + a] += std::norm(amp) * static_cast<double>(n[a]);
            for (int b = 0; b < M; ++b) {
                if (b == a) continue;
                // <psi| a+_b a_a |n>: target n - e_a + e_b.
                std::copy(n, n + M, occ.begin());
                occ[a] -= 1;
                occ[b] += 1;
                const double w = std::sqrt(static_cast<double>(n[a]) * (n[b] + 1));
                out.data[static_cast<std::size_t>(a) * M + b] +=
                    std::conj(psi[basis.index_of(occ.data())]) * amp * w;
            }
        }
    }
    for (auto& v : out.data) v /= N;
    return out;
}

// <a+_c a+_d a_b a_a> for all (a,b,c,d), normalized by N(N-1).
std::vector<cd> two_particle_expectations(const FockBasis& basis, const FockVec& psi) {
    const int M = basis.modes();
    const double N = basis.particles();
    if (basis.particles() < 2)
        throw parameter_error("rdm: k = 2 requires at least 2 particles, got N=" +
                              std::to_string(basis.particles()));
    const std::size_t M2 = static_cast<std::size_t>(M) * M;
    std::vector<cd> out(M2 * M2, cd(0.0, 0.0));

    std::vector<int> lowered(M), raised(M);
    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const cd amp = psi[j];
        if (amp == cd(0.0, 0.0)) continue;
        const int* n = basis.occupation(j);
        for (int a = 0; a < M; ++a) {
            if (n[a] == 0) continue;
            for (int b = 0; b < M; ++b) {
                std::copy(n, n + M, lowered.begin());
                double s1 = std::sqrt(static_cast<double>(lowered[a]));
                lowered[a] -= 1;
                if (lowered[b] == 0) continue;
                s1 *= std::sqrt(static_cast<double>(lowered[b]));
                lowered[b] -= 1;
                // Raise with c, d: target = lowered + e_d + e_c.
                for (int d = 0; d < M; ++d)
                    for (int c = 0; c < M; ++c) {
                        std::copy(lowered.begin(), lowered.end(), raised.begin());
                        double s2 = std::sqrt(static_cast<double>(raised[d] + 1));
                        raised[d] += 1;
                        s2 *= std::sqrt(static_cast<double>(raised[c] + 1));
                        raised[c] += 1;
                        const cd target_amp = psi[basis.index_of(raised.data())];
                        out[(static_cast<std::size_t>(a) * M + b) * M2 + (static_cast<std::size_t>(c) * M + d)] +=
                            std::conj(target_amp) * amp * s1 * s2;
                    }
            }
        }
    }
    const double scale = 1.0 / (N * (N - 1.0));
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace

std::vector<cd> rdm2_product(const FockBasis& basis, const FockVec& psi) {
    if (psi.size() != basis.dimension()) throw parameter_error("rdm2_product: state length mismatch");
    return two_particle_expectations(basis, psi);
}

ReducedDensityMatrix rdm(const FockBasis& basis, const FockVec& psi, int k) {
    if (psi.size() != basis.dimension()) throw parameter_error("rdm: state length mismatch");
    if (k != 1 && k != 2) throw parameter_error("rdm: only k in {1, 2} supported, got k=" + std::to_string(k));
    if (k > basis.particles())
        throw parameter_error("rdm: marginal order k=" + std::to_string(k) + " exceeds particle number N=" +
                              std::to_string(basis.particles()));
    if (k == 1) return rdm1(basis, psi);

    const int M = basis.modes();
    const std::vector<cd> full = two_particle_expectations(basis, psi);
    const std::size_t M2 = static_cast<std::size_t>(M) * M;

    // Compress onto the orthonormal symmetric pair basis.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < M; ++a)
        for (int b = a; b < M; ++b) pairs.emplace_back(a, b);

    ReducedDensityMatrix out;
    out.k = 2;
    out.modes = M;
    const std::size_t P = pairs.size();
    out.data.assign(P * P, cd(0.0, 0.0));
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < P; ++q) {
            const auto [a, b] = pairs[p];
            const auto [c, d] = pairs[q];
            const double wp = a == b ? 1.0 : sqrt2;
            const double wq = c == d ? 1.0 : sqrt2;
            out.data[p * P + q] =
                wp * wq * full[(static_cast<std::size_t>(a) * M + b) * M2 + (static_cast<std::size_t>(c) * M + d)];
        }
    return out;
}

double trace_distance_dense(std::size_t side, const std::vector<cd>& A, const std::vector<cd>& B) {
    if (A.size() != side * side || B.size() != side * side)
        throw parameter_error("trace_distance: shape mismatch");
    Eigen::MatrixXcd D(side, side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) D(r, c) = A[r * side + c] - B[r * side + c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D);
    if (es.info() != Eigen::Success) throw invalid_state_error("trace_distance: eigensolve failed");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) acc += std::abs(es.eigenvalues()(i));
    return acc;
}

double trace_distance(const ReducedDensityMatrix& A, const ReducedDensityMatrix& B) {
    if (A.k != B.k || A.modes != B.modes) throw parameter_error("trace_distance: operand shape mismatch");
    return trace_distance_dense(A.side(), A.data, B.data);
}

} // namespace bosonstar
