#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "bosonstar/errors.hpp"
#include "bosonstar/fock_basis.hpp"
#include "bosonstar/fock_state.hpp"
#include "bosonstar/hamiltonian.hpp"
#include "bosonstar/mean_field.hpp"
#include "bosonstar/mode_hartree.hpp"
#include "bosonstar/modes.hpp"
#include "bosonstar/propagate.hpp"
#include "bosonstar/random.hpp"
#include "bosonstar/rdm.hpp"

using namespace bosonstar;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Straight-line dense build: walk every (a, b, a_out) triple, solve momentum
// conservation for b_out and apply the ladder algebra directly. Slower than
// the library's channel walk but structurally independent of it.
std::vector<cd> dense_oracle(const FockBasis& basis, const ModeSet& modes,
                             const PairPotential& pot, double lambda) {
    const int M = modes.size();
    const std::size_t D = basis.dimension();
    std::vector<cd> H(D * D, cd(0.0, 0.0));
    const double L3 = pot.L() * pot.L() * pot.L();
    const double pref = lambda / (2.0 * basis.particles() * L3);
    std::vector<int> occ(M);
    for (std::size_t j = 0; j < D; ++j) {
        const int* nj = basis.occupation(j);
        double kin = 0.0;
        for (int a = 0; a < M; ++a) kin += modes.dispersion(a) * nj[a];
        H[j * D + j] += kin;
        for (int a = 0; a < M; ++a) {
            if (nj[a] == 0) continue;
            for (int b = 0; b < M; ++b) {
                if ((b == a ? nj[a] - 1 : nj[b]) == 0) continue;
                for (int aout = 0; aout < M; ++aout) {
                    const auto& ma = modes.triple(a);
                    const auto& mb = modes.triple(b);
                    const auto& mo = modes.triple(aout);
                    const std::array<int, 3> need = {ma[0] + mb[0] - mo[0], ma[1] + mb[1] - mo[1],
                                                     ma[2] + mb[2] - mo[2]};
                    const int bout = modes.find(need);
                    if (bout < 0) continue;
                    std::copy(nj, nj + M, occ.begin());
                    double amp = std::sqrt(double(occ[a]));
                    --occ[a];
                    amp *= std::sqrt(double(occ[b]));
                    --occ[b];
                    ++occ[bout];
                    amp *= std::sqrt(double(occ[bout]));
                    ++occ[aout];
                    amp *= std::sqrt(double(occ[aout]));
                    const std::array<int, 3> dm = {mo[0] - ma[0], mo[1] - ma[1], mo[2] - ma[2]};
                    H[basis.index_of(occ.data()) * D + j] += pref * pot.w(dm) * amp;
                }
            }
        }
    }
    return H;
}

// exp(-i t H) psi through a full eigendecomposition (test-side reference).
FockVec expm_apply(const SparseHermitian& H, const FockVec& psi, double t) {
    const auto D = static_cast<Eigen::Index>(H.dim());
    const std::vector<cd> dense = H.to_dense();
    Eigen::MatrixXcd Hm(D, D);
    for (Eigen::Index r = 0; r < D; ++r)
        for (Eigen::Index c = 0; c < D; ++c) Hm(r, c) = dense[r * D + c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hm);
    REQUIRE(es.info() == Eigen::Success);
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(psi.data(), D);
    Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
    for (Eigen::Index i = 0; i < D; ++i) w(i) *= std::exp(cd(0.0, -t * es.eigenvalues()(i)));
    Eigen::VectorXcd out = es.eigenvectors() * w;
    FockVec res(H.dim());
    for (Eigen::Index i = 0; i < D; ++i) res[i] = out(i);
    return res;
}

double vec_distance(const FockVec& a, const FockVec& b) {
    REQUIRE(a.size() == b.size());
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += std::norm(a[i] - b[i]);
    return std::sqrt(d2);
}

std::vector<cd> random_unit_amplitudes(int M, Rng& rng) {
    std::vector<cd> c(M);
    double s = 0.0;
    for (cd& v : c) {
        v = cd(rng.normal(), rng.normal());
        s += std::norm(v);
    }
    for (cd& v : c) v /= std::sqrt(s);
    return c;
}

double expectation(const SparseHermitian& H, const FockVec& psi) {
    FockVec hp(psi.size());
    H.matvec(psi.data(), hp.data());
    cd acc(0.0, 0.0);
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * hp[i];
    return acc.real();
}

} // namespace

TEST_CASE("mode sets enumerate balls and resolve triples") {
    const ModeSet m0 = ModeSet::ball(0, kTwoPi);
    CHECK(m0.size() == 1);
    const ModeSet m1 = ModeSet::ball(1, kTwoPi);
    CHECK(m1.size() == 7);
    const ModeSet m2 = ModeSet::ball(2, kTwoPi);
    CHECK(m2.size() == 33);

    CHECK(m1.find({0, 0, 0}) >= 0);
    CHECK(m1.find({1, 0, 0}) >= 0);
    CHECK(m1.find({1, 1, 0}) == -1);
    const int e1 = m1.find({1, 0, 0});
    CHECK(m1.dispersion(e1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m1.dispersion(m1.find({0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(ModeSet::from_triples({{0, 0, 0}, {0, 0, 0}}, kTwoPi), parameter_error);
    CHECK_THROWS_AS(ModeSet::from_triples({}, kTwoPi), parameter_error);
    CHECK_THROWS_AS(ModeSet::ball(-1, kTwoPi), parameter_error);
}

TEST_CASE("occupation bases have the right dimensions and ordering") {
    CHECK(FockBasis(2, 2).dimension() == 3);
    CHECK(FockBasis(7, 4).dimension() == 210);
    CHECK(FockBasis(7, 8).dimension() == 3003);
    CHECK(FockBasis::sector_dimension(7, 16) == 74613);

    FockBasis b(3, 2);
    REQUIRE(b.dimension() == 6);
    const int expected[6][3] = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
    for (std::size_t i = 0; i < 6; ++i) {
        const int* occ = b.occupation(i);
        for (int a = 0; a < 3; ++a) CHECK(occ[a] == expected[i][a]);
        CHECK(b.index_of(occ) == i);
    }

    // round trip on a larger sector
    FockBasis big(5, 6);
    for (std::size_t i = 0; i < big.dimension(); ++i)
        CHECK(big.index_of(big.occupation(i)) == i);

    CHECK_THROWS_AS(FockBasis(0, 2), parameter_error);
    CHECK_THROWS_AS(FockBasis(3, 0), parameter_error);
    CHECK_THROWS_AS(FockBasis(20, 12, 1000), capacity_error);
}

TEST_CASE("condensate amplitudes follow the multinomial square roots") {
    FockBasis basis(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    const FockVec psi = condensate_state(basis, {cd(r, 0.0), cd(r, 0.0)});
    REQUIRE(psi.size() == 3);
    CHECK(std::abs(psi[0] - cd(0.5, 0.0)) < 1e-14);  // (2,0)
    CHECK(std::abs(psi[1] - cd(r, 0.0)) < 1e-14);    // (1,1): sqrt(2) c0 c1
    CHECK(std::abs(psi[2] - cd(0.5, 0.0)) < 1e-14);  // (0,2)
    CHECK(std::abs(fock_norm(psi) - 1.0) < 1e-12);

    Rng rng(17);
    FockBasis b7(7, 4);
    const FockVec big = condensate_state(b7, random_unit_amplitudes(7, rng));
    CHECK(std::abs(fock_norm(big) - 1.0) < 1e-12);

    CHECK_THROWS_AS(condensate_state(basis, {cd(1.0, 0.0), cd(1.0, 0.0)}), parameter_error);
    CHECK_THROWS_AS(condensate_state(basis, {cd(1.0, 0.0)}), parameter_error);
}

TEST_CASE("two modes, two particles: the Hamiltonian is an explicit diagonal") {
    // Modes {0, e1} on the 2 pi box: only the two direct channels
    // (0,1)->(1,0) and (1,0)->(0,1) survive, both with multiplier 4 pi, and
    // the two pair-creation quadruples leave the set and are dropped.
    const ModeSet modes = ModeSet::from_triples({{0, 0, 0}, {1, 0, 0}}, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    FockBasis basis(2, 2);
    const HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);

    CHECK(build.dropped_quadruples == 2);

    const std::vector<cd> H = build.H.to_dense();
    REQUIRE(H.size() == 9);
    const double off = 1.0 / (4.0 * kTwoPi * kTwoPi / 4.0); // 1/(4 pi^2)
    const double expected[3] = {2.0, 1.0 + std::sqrt(2.0) - off, 2.0 * std::sqrt(2.0)};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double want = r == c ? expected[r] : 0.0;
            CHECK(std::abs(H[r * 3 + c] - want) < 1e-12);
        }
}

TEST_CASE("channel-table build agrees with the direct ladder-operator build") {
    const PairPotential pot = PairPotential::exact(kTwoPi);
    struct Case {
        ModeSet modes;
        int N;
    };
    const Case cases[] = {
        {ModeSet::from_triples({{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}}, kTwoPi), 2},
        {ModeSet::ball(1, kTwoPi), 2},
        {ModeSet::ball(1, kTwoPi), 3},
    };
    for (const Case& tc : cases) {
        FockBasis basis(tc.modes.size(), tc.N);
        const HamiltonianBuild build = build_hamiltonian(basis, tc.modes, pot, -1.0);
        const std::vector<cd> got = build.H.to_dense();
        const std::vector<cd> want = dense_oracle(basis, tc.modes, pot, -1.0);
        REQUIRE(got.size() == want.size());
        const std::size_t D = basis.dimension();
        double max_err = 0.0, max_herm = 0.0;
        for (std::size_t r = 0; r < D; ++r)
            for (std::size_t c = 0; c < D; ++c) {
                max_err = std::max(max_err, std::abs(got[r * D + c] - want[r * D + c]));
                max_herm = std::max(max_herm,
                                    std::abs(want[r * D + c] - std::conj(want[c * D + r])));
            }
        CHECK(max_err < 1e-12);
        CHECK(max_herm < 1e-12); // the oracle itself must be Hermitian
    }
}

TEST_CASE("sparse storage rejects misuse") {
    SparseHermitian H(4);
    H.add(1, 2, cd(0.5, 0.25));
    CHECK_THROWS_AS(H.add(2, 1, cd(0.5, 0.0)), parameter_error);
    CHECK_THROWS_AS(H.add(1, 4, cd(0.5, 0.0)), parameter_error);
    FockVec x(4, cd(1.0, 0.0)), y(4);
    CHECK_THROWS_AS(H.matvec(x.data(), y.data()), invalid_state_error);
    H.add(1, 2, cd(0.5, -0.25)); // duplicate, merged on finalize
    H.add(0, 0, cd(2.0, 0.0));
    H.finalize();
    CHECK_THROWS_AS(H.add(0, 1, cd(1.0, 0.0)), invalid_state_error);
    CHECK(H.stored_entries() == 2);
    H.matvec(x.data(), y.data());
    CHECK(std::abs(y[0] - cd(2.0, 0.0)) < 1e-15);
    CHECK(std::abs(y[1] - cd(1.0, 0.0)) < 1e-15); // merged (1,2) value 1.0
    CHECK(std::abs(y[2] - cd(1.0, 0.0)) < 1e-15); // conjugate transposed part
}

TEST_CASE("short-step Lanczos matches the dense exponential") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    FockBasis basis(7, 4);
    const HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);
    Rng rng(23);
    const FockVec psi0 = condensate_state(basis, random_unit_amplitudes(7, rng));

    PropagateOptions krylov;
    krylov.dense_threshold = 0; // force the iterative path
    const double t = 1.0;
    const FockVec via_krylov = propagate(build.H, psi0, t, krylov);
    const FockVec via_dense = expm_apply(build.H, psi0, t);
    CHECK(vec_distance(via_krylov, via_dense) < 1e-8);

    // unitarity and energy conservation
    CHECK(std::abs(fock_norm(via_krylov) - 1.0) < 1e-10);
    CHECK(expectation(build.H, via_krylov) ==
          doctest::Approx(expectation(build.H, psi0)).epsilon(1e-10));
}

TEST_CASE("propagation composes over subintervals") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    FockBasis basis(7, 2);
    const HamiltonianBuild build = build_hamiltonian(basis, modes, pot, -1.0);
    Rng rng(29);
    const FockVec psi0 = condensate_state(basis, random_unit_amplitudes(7, rng));

    for (std::size_t threshold : {std::size_t{512}, std::size_t{0}}) {
        PropagateOptions opts;
        opts.dense_threshold = threshold;
        const FockVec direct = propagate(build.H, psi0, 0.123, opts);
        const FockVec split = propagate(build.H, propagate(build.H, psi0, 0.1, opts), 0.023, opts);
        CHECK(vec_distance(direct, split) < 1e-10);
    }

    CHECK_THROWS_AS(propagate(build.H, psi0, -1.0), parameter_error);
    FockVec wrong(5, cd(1.0, 0.0));
    CHECK_THROWS_AS(propagate(build.H, wrong, 1.0), parameter_error);
}

TEST_CASE("condensate marginal is the rank-one projector onto the amplitudes") {
    const int M = 7;
    FockBasis basis(M, 3);
    Rng rng(31);
    const std::vector<cd> c = random_unit_amplitudes(M, rng);
    const FockVec psi = condensate_state(basis, c);

    const ReducedDensityMatrix g1 = rdm(basis, psi, 1);
    REQUIRE(g1.side() == static_cast<std::size_t>(M));
    double max_err = 0.0;
    cd trace(0.0, 0.0);
    for (int a = 0; a < M; ++a) {
        trace += g1.at(a, a);
        for (int b = 0; b < M; ++b) {
            max_err = std::max(max_err, std::abs(g1.at(a, b) - c[a] * std::conj(c[b])));
            // Hermitian
            CHECK(std::abs(g1.at(a, b) - std::conj(g1.at(b, a))) < 1e-13);
        }
    }
    CHECK(max_err < 1e-12);
    CHECK(std::abs(trace - cd(1.0, 0.0)) < 1e-12);

    // pair marginal of the same product state is pure with unit trace
    const ReducedDensityMatrix g2 = rdm(basis, psi, 2);
    const std::size_t P = g2.side();
    REQUIRE(P == static_cast<std::size_t>(M * (M + 1) / 2));
    cd tr2(0.0, 0.0);
    for (std::size_t p = 0; p < P; ++p) tr2 += g2.at(p, p);
    CHECK(std::abs(tr2 - cd(1.0, 0.0)) < 1e-12);
    // purity: Tr gamma2^2 = 1
    cd purity(0.0, 0.0);
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q = 0; q < P; ++q) purity += g2.at(p, q) * g2.at(q, p);
    CHECK(std::abs(purity - cd(1.0, 0.0)) < 1e-11);
}

TEST_CASE("product-space pair marginal traces down to the one-particle marginal") {
    const int M = 3;
    FockBasis basis(M, 3);
    Rng rng(37);
    FockVec psi(basis.dimension());
    double s = 0.0;
    for (cd& v : psi) {
        v = cd(rng.normal(), rng.normal());
        s += std::norm(v);
    }
    for (cd& v : psi) v /= std::sqrt(s);

    const std::vector<cd> X = rdm2_product(basis, psi);
    const ReducedDensityMatrix g1 = rdm(basis, psi, 1);
    for (int a = 0; a < M; ++a)
        for (int c = 0; c < M; ++c) {
            cd acc(0.0, 0.0);
            for (int b = 0; b < M; ++b)
                acc += X[static_cast<std::size_t>(a * M + b) * (M * M) + (c * M + b)];
            CHECK(std::abs(acc - g1.at(a, c)) < 1e-12);
        }
}

TEST_CASE("two-particle sector matches the first-quantized marginal") {
    FockBasis basis(2, 2);
    Rng rng(41);
    FockVec psi(3);
    double s = 0.0;
    for (cd& v : psi) {
        v = cd(rng.normal(), rng.normal());
        s += std::norm(v);
    }
    for (cd& v : psi) v /= std::sqrt(s);

    // symmetric wavefunction on mode pairs
    cd W[2][2];
    W[0][0] = psi[0];
    W[0][1] = W[1][0] = psi[1] / std::sqrt(2.0);
    W[1][1] = psi[2];

    const ReducedDensityMatrix g1 = rdm(basis, psi, 1);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
            cd acc(0.0, 0.0);
            for (int b = 0; b < 2; ++b) acc += W[a][b] * std::conj(W[c][b]);
            CHECK(std::abs(g1.at(a, c) - acc) < 1e-12);
        }

    CHECK_THROWS_AS(rdm(basis, psi, 3), parameter_error);
    CHECK_THROWS_AS(rdm(FockBasis(2, 1), FockVec{cd(1, 0), cd(0, 0)}, 2), parameter_error);
}

TEST_CASE("trace distance of two pure qubit states has the closed form") {
    ReducedDensityMatrix A, B;
    A.k = B.k = 1;
    A.modes = B.modes = 2;
    A.data = {cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 0)};
    B.data = {cd(0.5, 0), cd(0.5, 0), cd(0.5, 0), cd(0.5, 0)};
    // overlap 1/2: distance 2 sqrt(1 - 1/2) = sqrt(2)
    CHECK(trace_distance(A, B) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(trace_distance_dense(2, A.data, B.data) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(trace_distance(A, A) == doctest::Approx(0.0));

    ReducedDensityMatrix C = A;
    C.modes = 3;
    C.data.resize(9, cd(0, 0));
    CHECK_THROWS_AS(trace_distance(A, C), parameter_error);
}

TEST_CASE("mode-space mean-field flow conserves norm and energy") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    Rng rng(43);
    const std::vector<cd> c0 = random_unit_amplitudes(7, rng);

    const ModeHartreeResult res = mode_hartree_evolve(modes, pot, -1.0, c0, 0.5, 1e-3, 100);
    CHECK(res.norm_drift < 1e-10);
    CHECK(res.energy_drift < 1e-8);
    REQUIRE(res.times.size() == 6); // t = 0, 0.1, ..., 0.5
    CHECK(res.times.back() == doctest::Approx(0.5));

    CHECK_THROWS_AS(mode_hartree_evolve(modes, pot, -1.0, c0, 1.0, 0.3), parameter_error);
    CHECK_THROWS_AS(mode_hartree_evolve(modes, pot, -1.0, {cd(1, 0)}, 1.0, 1e-3),
                    parameter_error);
}

TEST_CASE("mean-field integrator converges at fourth order") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    Rng rng(47);
    const std::vector<cd> c0 = random_unit_amplitudes(7, rng);
    const double T = 0.2;

    auto endpoint = [&](double dt) {
        const ModeHartreeResult r = mode_hartree_evolve(modes, pot, -1.0, c0, T, dt, 1 << 20);
        return r.samples.back();
    };
    const std::vector<cd> ref = endpoint(1.25e-4);
    auto err = [&](double dt) {
        const std::vector<cd> e = endpoint(dt);
        double m = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) m = std::max(m, std::abs(e[i] - ref[i]));
        return m;
    };
    const double e2 = err(2e-3), e1 = err(1e-3);
    CHECK(e2 > e1);
    const double ratio = e2 / e1;
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("mean-field energy is stationary under the truncated flow") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    const InteractionTable table = build_interaction_table(modes, pot);
    Rng rng(53);
    const std::vector<cd> c0 = random_unit_amplitudes(7, rng);
    const double e0 = mode_hartree_energy(modes, table, -1.0, c0);
    const ModeHartreeResult res = mode_hartree_evolve(modes, pot, -1.0, c0, 0.3, 1e-3, 300);
    const double e1 = mode_hartree_energy(modes, table, -1.0, res.samples.back());
    CHECK(e1 == doctest::Approx(e0).epsilon(1e-9));
}

TEST_CASE("more particles track the mean-field flow more closely") {
    const ModeSet modes = ModeSet::ball(1, kTwoPi);
    const PairPotential pot = PairPotential::exact(kTwoPi);
    Rng rng(59);
    const std::vector<cd> c0 = random_unit_amplitudes(7, rng);

    const MeanFieldSweep sweep = mean_field_convergence(modes, pot, -1.0, c0, 0.5, {2, 4}, 1e-3);
    REQUIRE(sweep.points.size() == 2);
    CHECK(sweep.points[0].particles == 2);
    CHECK(sweep.points[1].particles == 4);
    CHECK(sweep.points[1].distance < sweep.points[0].distance);
    CHECK(sweep.slope < 0.0);
    CHECK(sweep.hartree_final.size() == 7);
}
