#include "bosonstar/propagate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {

FockVec propagate_dense(const SparseHermitian& H, const FockVec& psi0, double t) {
    const auto dim = static_cast<Eigen::Index>(H.dim());
    const std::vector<cd> dense = H.to_dense();
    Eigen::MatrixXcd A(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) A(r, c) = dense[static_cast<std::size_t>(r) * dim + c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success)
        throw invalid_state_error("propagate: dense eigendecomposition failed");
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = psi0[i];
    Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
    for (Eigen::Index i = 0; i < dim; ++i) w(i) *= std::exp(cd(0.0, -t * es.eigenvalues()(i)));
    v = es.eigenvectors() * w;
    FockVec out(psi0.size());
    for (Eigen::Index i = 0; i < dim; ++i) out[i] = v(i);
    return out;
}

// One Lanczos exponential step psi <- exp(-i dt H) psi. Returns false if the
// Krylov space did not converge within max_krylov vectors.
bool lanczos_step(const SparseHermitian& H, FockVec& psi, double dt, int max_krylov, double tol) {
    const std::size_t dim = H.dim();
    const double beta0 = fock_norm(psi);
    if (!(beta0 > 0.0)) throw invalid_state_error("propagate: zero state");

    std::vector<FockVec> V;
    V.emplace_back(psi);
    for (auto& v : V[0]) v /= beta0;

    std::vector<double> alpha, beta; // T diagonal / off-diagonal
    FockVec w(dim);
    bool happy = false;

    for (int j = 0; j < max_krylov; ++j) {
        H.matvec(V[j].data(), w.data());
        // Full reorthogonalization (two passes of modified Gram-Schmidt).
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t q = 0; q < V.size(); ++q) {
                cd proj(0.0, 0.0);
                for (std::size_t i = 0; i < dim; ++i) proj += std::conj(V[q][i]) * w[i];
                if (pass == 0 && q == static_cast<std::size_t>(j)) alpha.push_back(proj.real());
                for (std::size_t i = 0; i < dim; ++i) w[i] -= proj * V[q][i];
            }
        }
        const double b = fock_norm(w);

        // Exponential of the current tridiagonal block.
        const int m = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
        for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(m);
        for (int i = 0; i < m; ++i)
            u += std::exp(cd(0.0, -dt * es.eigenvalues()(i))) * es.eigenvectors().col(i).cast<cd>() *
                 es.eigenvectors()(0, i);

        happy = b < 1e-13 * (1.0 + std::abs(alpha[j]));
        const double err = happy ? 0.0 : b * std::abs(u(m - 1));
        if (happy || err < tol || j + 1 == max_krylov) {
            if (!happy && err >= tol) return false; // caller halves dt
            FockVec out(dim, cd(0.0, 0.0));
            for (int q = 0; q < m; ++q)
                for (std::size_t i = 0; i < dim; ++i) out[i] += u(q) * V[q][i];
            const double drift = std::abs(fock_norm(out) - 1.0);
            if (drift > 1e-9)
                throw invalid_state_error("propagate: Krylov step lost unitarity (drift " +
                                          std::to_string(drift) + ")");
            const double nrm = fock_norm(out);
            for (auto& v : out) v *= beta0 / nrm;
            psi = std::move(out);
            return true;
        }

        beta.push_back(b);
        V.emplace_back(w);
        for (auto& v : V.back()) v /= b;
    }
    return false;
}

} // namespace

FockVec propagate(const SparseHermitian& H, const FockVec& psi0, double t, const PropagateOptions& opts) {
    if (psi0.size() != H.dim()) throw parameter_error("propagate: state length does not match H");
    if (!(opts.dt > 0.0)) throw parameter_error("propagate: dt must be positive");
    if (t == 0.0) return psi0;
    if (t < 0.0) throw parameter_error("propagate: t must be >= 0");

    if (H.dim() < opts.dense_threshold) return propagate_dense(H, psi0, t);

    FockVec psi = psi0;
    double remaining = t;
    double dt = opts.dt;
    while (remaining > 1e-15 * t) {
        const double step = std::min(dt, remaining);
        FockVec trial = psi;
        if (lanczos_step(H, trial, step, opts.max_krylov, opts.krylov_tol)) {
            psi = std::move(trial);
            remaining -= step;
        } else {
            dt *= 0.5;
            if (dt < opts.dt / 1048576.0)
                throw invalid_state_error("propagate: Krylov iteration failed to converge even at dt=" +
                                          std::to_string(dt));
        }
    }
    return psi;
}

} // namespace bosonstar
