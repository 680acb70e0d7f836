#include "bosonstar/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {
constexpr double kFourPi = 12.566370614359172953850573533118;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kHalfPi = 1.5707963267948966192313216916398;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// Sine and cosine integrals by power series; accurate to ~1e-11 up to x = 16
// (alternating-series cancellation grows beyond that).
void sici_series(double x, double& si, double& ci) {
    double term = x; // x^(2k+1) / (2k+1)!
    si = 0.0;
    double csum = 0.0;
    for (int k = 0;; ++k) {
        si += term / (2 * k + 1);
        const double next = -term * x * x / ((2 * k + 2) * (2 * k + 3));
        csum += -term * x / ((2 * k + 2) * (2 * k + 2)); // x^(2k+2)/((2k+2)(2k+2)!)
        term = next;
        if (std::abs(term) < 1e-18 * (std::abs(si) + 1.0) && k > 3) break;
        if (k > 200) break;
    }
    ci = kEulerGamma + std::log(x) + csum;
}

// Asymptotic auxiliary functions: pi/2 - Si = f cos + g sin, Ci = f sin - g cos.
void sici_asymptotic(double x, double& f, double& g) {
    const double inv2 = 1.0 / (x * x);
    double fs = 1.0, gs = 1.0, tf = 1.0, tg = 1.0;
    for (int k = 1; k <= 7; ++k) {
        tf *= -(2 * k) * (2 * k - 1) * inv2;
        tg *= -(2 * k) * (2 * k + 1) * inv2;
        fs += tf;
        gs += tg;
    }
    f = fs / x;
    g = gs / (x * x);
}

// Deficit s*f(s) of the regularized multiplier relative to 4*pi/q^2, with
// f(s) = (pi/2 - Si(s)) cos(s) + Ci(s) sin(s) (the sine auxiliary integral).
double regularization_deficit(double s) {
    if (s <= 0.0) return 0.0;
    double f;
    if (s <= 16.0) {
        double si, ci;
        sici_series(s, si, ci);
        f = (kHalfPi - si) * std::cos(s) + ci * std::sin(s);
    } else {
        double g;
        sici_asymptotic(s, f, g);
    }
    return std::min(1.0, s * f);
}

} // namespace

PairPotential PairPotential::exact(double L) {
    if (!(L > 0.0)) throw parameter_error("PairPotential: box length must be positive");
    return PairPotential(L, 0.0);
}

PairPotential PairPotential::regularized(double L, double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw parameter_error("PairPotential: regularization must be positive and finite, got a=" +
                              std::to_string(a));
    PairPotential p = exact(L);
    p.a_ = a;
    return p;
}

double PairPotential::w(const std::array<int, 3>& dm) const {
    if (dm[0] == 0 && dm[1] == 0 && dm[2] == 0) return 0.0;
    const double unit = kTwoPi / L_;
    const double q2 = unit * unit * (static_cast<double>(dm[0]) * dm[0] + static_cast<double>(dm[1]) * dm[1] +
                                     static_cast<double>(dm[2]) * dm[2]);
    const double base = kFourPi / q2;
    if (a_ == 0.0) return base;
    return base * (1.0 - regularization_deficit(a_ * std::sqrt(q2)));
}

InteractionTable build_interaction_table(const ModeSet& modes, const PairPotential& potential) {
    if (std::abs(modes.L() - potential.L()) > 1e-12 * modes.L())
        throw parameter_error("build_interaction_table: mode set and potential disagree on L");
    InteractionTable table;
    const int M = modes.size();
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b)
            for (int a_out = 0; a_out < M; ++a_out) {
                const auto& ma = modes.triple(a);
                const auto& mb = modes.triple(b);
                const auto& mo = modes.triple(a_out);
                const std::array<int, 3> dm{mo[0] - ma[0], mo[1] - ma[1], mo[2] - ma[2]};
                const std::array<int, 3> m_bout{mb[0] - dm[0], mb[1] - dm[1], mb[2] - dm[2]};
                const int b_out = modes.find(m_bout);
                if (b_out < 0) {
                    ++table.dropped_quadruples;
                    continue;
                }
                const double w = potential.w(dm);
                if (w == 0.0) continue; // q = 0 carries no weight by convention
                table.channels.push_back({a, b, a_out, b_out, w});
            }
    return table;
}

HamiltonianBuild build_hamiltonian(const FockBasis& basis, const ModeSet& modes,
                                   const PairPotential& potential, double lambda) {
    if (modes.size() != basis.modes())
        throw parameter_error("build_hamiltonian: mode count disagrees with basis");
    const InteractionTable table = build_interaction_table(modes, potential);

    const int M = basis.modes();
    const double N = basis.particles();
    const double L3 = modes.L() * modes.L() * modes.L();
    const double coupling = lambda / (2.0 * N) / L3;

    SparseHermitian H(basis.dimension());
    std::vector<int> occ(M);
    std::map<std::size_t, double> column; // row -> real amplitude, row <= j

    for (std::size_t j = 0; j < basis.dimension(); ++j) {
        const int* n = basis.occupation(j);
        column.clear();

        double diag = 0.0;
        for (int a = 0; a < M; ++a) diag += modes.dispersion(a) * n[a];

        for (const InteractionChannel& ch : table.channels) {
            // a+_{aout} a+_{bout} a_b a_a |n>, amplitudes applied in sequence.
            if (n[ch.a] == 0) continue;
            std::copy(n, n + M, occ.begin());
            double amp = std::sqrt(static_cast<double>(occ[ch.a]));
            occ[ch.a] -= 1;
            if (occ[ch.b] == 0) continue;
            amp *= std::sqrt(static_cast<double>(occ[ch.b]));
            occ[ch.b] -= 1;
            amp *= std::sqrt(static_cast<double>(occ[ch.b_out] + 1));
            occ[ch.b_out] += 1;
            amp *= std::sqrt(static_cast<double>(occ[ch.a_out] + 1));
            occ[ch.a_out] += 1;

            const double v = coupling * ch.w * amp;
            const std::size_t i = basis.index_of(occ.data());
            if (i == j)
                diag += v;
            else if (i < j)
                column[i] += v; // the i > j mirror arises from the reversed channel
        }

        H.add(j, j, cd(diag, 0.0));
        for (const auto& [row, v] : column) H.add(row, j, cd(v, 0.0));
    }
    H.finalize();
    return HamiltonianBuild{std::move(H), table.dropped_quadruples, table.channels.size()};
}

} // namespace bosonstar
