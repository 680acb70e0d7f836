#include "bosonstar/hartree_evolve.hpp"

#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"

namespace bosonstar {

void Trajectory::append(const TrajectorySample& s) {
    if (!samples_.empty() && !(s.t > samples_.back().t))
        throw invalid_state_error("Trajectory: sample times must be strictly increasing");
    samples_.push_back(s);
}

namespace {

// phi <- exp(-i tau lambda (V*|phi|^2)) phi, in place on position samples.
void potential_phase(SpectralField& phi, const CoulombKernel& kernel, double lambda, double tau) {
    const RealField pot = hartree_potential(phi, kernel, lambda);
    std::vector<cd>& vals = phi.mutable_values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double a = -tau * pot.values[i];
        vals[i] *= cd(std::cos(a), std::sin(a));
    }
}

// phi <- exp(-i tau (1-Lap)^{1/2}) phi, in place on the spectrum.
void kinetic_phase(SpectralField& phi, double tau) {
    const Grid3& g = phi.grid();
    std::vector<cd>& hat = phi.mutable_spectrum();
    const int n = g.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const double a = -tau * std::sqrt(1.0 + g.k_squared(x, y, z));
                hat[g.index(x, y, z)] *= cd(std::cos(a), std::sin(a));
            }
}

} // namespace

SpectralField strang_step(const SpectralField& phi, const CoulombKernel& kernel, double lambda, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw parameter_error("strang_step: dt must be positive, got " + std::to_string(dt));
    phi.check_finite("strang_step");
    SpectralField cur = phi;
    potential_phase(cur, kernel, lambda, 0.5 * dt);
    kinetic_phase(cur, dt);
    potential_phase(cur, kernel, lambda, 0.5 * dt);
    return cur;
}

EvolveResult evolve(const SpectralField& phi0, const CoulombKernel& kernel, double lambda,
                    const EvolveOptions& opts) {
    if (!(opts.dt > 0.0)) throw parameter_error("evolve: dt must be positive");
    if (!(opts.T > 0.0)) throw parameter_error("evolve: T must be positive");
    if (opts.sample_every < 1) throw parameter_error("evolve: sample_every must be >= 1");

    const long steps = std::lround(opts.T / opts.dt);
    if (steps < 1 || std::abs(steps * opts.dt - opts.T) > 1e-9 * opts.T)
        throw parameter_error("evolve: dt must divide T (steps=" + std::to_string(steps) + ")");

    SpectralField cur = phi0;
    Trajectory traj;
    auto record = [&](double t) {
        const EnergyBreakdown e = energy(cur, kernel, lambda);
        TrajectorySample s;
        s.t = t;
        s.norm = field_norm(cur, NormKind::L2);
        s.energy = e.total;
        s.kinetic = e.kinetic;
        s.coulomb = e.coulomb;
        s.hhalf = field_norm(cur, NormKind::Hhalf);
        if (s.hhalf > opts.blow_up_hhalf)
            throw collapse_suspected_error("evolve: H^{1/2} norm " + std::to_string(s.hhalf) +
                                           " exceeds sentinel " + std::to_string(opts.blow_up_hhalf) +
                                           " at t=" + std::to_string(t) + " (collapse suspected)");
        traj.append(s);
    };

    record(0.0);
    for (long i = 1; i <= steps; ++i) {
        cur = strang_step(cur, kernel, lambda, opts.dt);
        if (i % opts.sample_every == 0 || i == steps) record(i * opts.dt);
    }
    return EvolveResult{std::move(cur), std::move(traj)};
}

} // namespace bosonstar
