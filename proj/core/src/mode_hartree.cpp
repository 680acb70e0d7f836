#include "bosonstar/mode_hartree.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {

double vec_norm(const std::vector<cd>& c) {
    double s = 0.0;
    for (const cd& v : c)
        s += std::norm(v);
    return std::sqrt(s);
}

// dc/dt = -i [eps_a c_a + (lambda/L^3) sum_{ch: a_out=a} W conj(c_bout) c_b c_a].
// The channel table holds both orderings of every pair, so a single pass with
// the full prefactor covers the derivative of the symmetrised energy.
struct Rhs {
    const ModeSet& modes;
    const InteractionTable& table;
    double coupling; // lambda / L^3

    void operator()(const std::vector<cd>& c, std::vector<cd>& dc) const {
        const cd mi(0.0, -1.0);
        const int M = modes.size();
        for (int a = 0; a < M; ++a)
            dc[a] = mi * modes.dispersion(a) * c[a];
        for (const InteractionChannel& ch : table.channels) {
            const cd term = coupling * ch.w * std::conj(c[ch.b_out]) * c[ch.b] * c[ch.a];
            dc[ch.a_out] += mi * term;
        }
    }
};

} // namespace

double mode_hartree_energy(const ModeSet& modes, const InteractionTable& table, double lambda,
                           const std::vector<cd>& c) {
    if (static_cast<int>(c.size()) != modes.size())
        throw parameter_error("mode amplitude vector does not match the mode set");
    double e = 0.0;
    for (int a = 0; a < modes.size(); ++a)
        e += modes.dispersion(a) * std::norm(c[a]);
    const double L = modes.L();
    const double coupling = lambda / (2.0 * L * L * L);
    cd inter = 0.0;
    for (const InteractionChannel& ch : table.channels)
        inter += ch.w * std::conj(c[ch.a_out]) * std::conj(c[ch.b_out]) * c[ch.b] * c[ch.a];
    return e + coupling * inter.real();
}

ModeHartreeResult mode_hartree_evolve(const ModeSet& modes, const PairPotential& potential,
                                      double lambda, const std::vector<cd>& c0, double T, double dt,
                                      int sample_every) {
    const int M = modes.size();
    if (static_cast<int>(c0.size()) != M)
        throw parameter_error("initial amplitudes do not match the mode set");
    if (!(dt > 0.0) || !(T > 0.0))
        throw parameter_error("mode evolution requires T > 0 and dt > 0");
    if (sample_every < 1)
        throw parameter_error("sample_every must be at least 1");
    const long steps = std::lround(T / dt);
    if (steps < 1 || std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * std::max(1.0, T))
        throw parameter_error("dt must divide the final time T");

    const double L = modes.L();
    InteractionTable table = build_interaction_table(modes, potential);
    const Rhs rhs{modes, table, lambda / (L * L * L)};

    std::vector<cd> c = c0;
    const double norm0 = vec_norm(c0);
    const double e0 = mode_hartree_energy(modes, table, lambda, c0);

    ModeHartreeResult result;
    result.times.push_back(0.0);
    result.samples.push_back(c);

    std::vector<cd> k1(M), k2(M), k3(M), k4(M), tmp(M);
    for (long s = 0; s < steps; ++s) {
        rhs(c, k1);
        for (int a = 0; a < M; ++a)
            tmp[a] = c[a] + 0.5 * dt * k1[a];
        rhs(tmp, k2);
        for (int a = 0; a < M; ++a)
            tmp[a] = c[a] + 0.5 * dt * k2[a];
        rhs(tmp, k3);
        for (int a = 0; a < M; ++a)
            tmp[a] = c[a] + dt * k3[a];
        rhs(tmp, k4);
        for (int a = 0; a < M; ++a)
            c[a] += (dt / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);

        const double drift = std::abs(vec_norm(c) - norm0);
        result.norm_drift = std::max(result.norm_drift, drift);
        if (drift > 1e-6)
            throw invalid_state_error("mode evolution norm drift " + std::to_string(drift) +
                                      " exceeds 1e-6; reduce dt");
        if ((s + 1) % sample_every == 0 || s + 1 == steps) {
            const double t = static_cast<double>(s + 1) * dt;
            if (t > result.times.back()) {
                result.times.push_back(t);
                result.samples.push_back(c);
            }
        }
    }
    result.energy_drift = std::abs(mode_hartree_energy(modes, table, lambda, c) - e0);
    return result;
}

} // namespace bosonstar
