#include "bosonstar/cutoff_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "bosonstar/errors.hpp"
#include "bosonstar/fock_state.hpp"

namespace bosonstar {

namespace {

double l2_gap(const SpectralField& a, const SpectralField& b) {
    const Grid3& g = a.grid();
    const std::vector<cd>& av = a.values();
    const std::vector<cd>& bv = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i)
        s += std::norm(av[i] - bv[i]);
    return std::sqrt(s * g.cell_volume());
}

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

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0))
            continue;
        const double x = std::log(xs[i]);
        const double y = std::log(ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    const double denom = used >= 2 ? used * sxx - sx * sx : 0.0;
    return std::abs(denom) > 1e-12 ? (used * sxy - sx * sy) / denom : 0.0;
}

} // namespace

EpsilonCompareResult epsilon_compare(const ModeSet& modes, int N, double lambda,
                                     const std::vector<cd>& c0, double t,
                                     std::vector<double> epsilons,
                                     const PropagateOptions& opts) {
    if (epsilons.size() < 2)
        throw parameter_error("epsilon comparison needs at least two cutoff values");
    for (double e : epsilons)
        if (!(e > 0.0))
            throw parameter_error("cutoff values must be positive");
    if (N < 1)
        throw parameter_error("particle number must be at least 1");
    if (!(t >= 0.0))
        throw parameter_error("comparison time must be non-negative");
    std::sort(epsilons.begin(), epsilons.end(), std::greater<double>());
    if (std::adjacent_find(epsilons.begin(), epsilons.end()) != epsilons.end())
        throw parameter_error("cutoff values must be distinct");

    const int M = modes.size();
    const std::vector<cd> c = normalized_amplitudes(c0);
    FockBasis basis(M, N);
    const FockVec psi0 = condensate_state(basis, c);

    const PairPotential exact = PairPotential::exact(modes.L());
    const HamiltonianBuild exact_build = build_hamiltonian(basis, modes, exact, lambda);
    const FockVec psi_exact = propagate(exact_build.H, psi0, t, opts);

    EpsilonCompareResult result;
    for (double eps : epsilons) {
        const PairPotential reg = PairPotential::regularized(modes.L(), eps / N);
        const HamiltonianBuild reg_build = build_hamiltonian(basis, modes, reg, lambda);
        const FockVec psi_reg = propagate(reg_build.H, psi0, t, opts);
        double s = 0.0;
        for (std::size_t i = 0; i < psi_exact.size(); ++i)
            s += std::norm(psi_exact[i] - psi_reg[i]);
        result.points.push_back({eps, std::sqrt(s), 0.0});
    }

    const double eps0 = result.points.front().epsilon;
    const double disc0 = result.points.front().discrepancy;
    result.fitted_C = t > 0.0 ? disc0 / (t * std::pow(eps0, 0.25)) : 0.0;
    for (EpsilonPoint& p : result.points)
        p.bound = result.fitted_C * t * std::pow(p.epsilon, 0.25);

    result.monotone = true;
    for (std::size_t i = 1; i < result.points.size(); ++i)
        if (result.points[i].discrepancy > result.points[i - 1].discrepancy + 1e-10)
            result.monotone = false;

    result.bounded = true;
    for (const EpsilonPoint& p : result.points)
        if (p.discrepancy > p.bound * (1.0 + 1e-9) + 1e-300)
            result.bounded = false;

    std::vector<double> xs, ys;
    for (const EpsilonPoint& p : result.points) {
        xs.push_back(p.epsilon);
        ys.push_back(p.discrepancy);
    }
    result.exponent_full = loglog_slope(xs, ys);
    const std::size_t m = result.points.size();
    result.exponent_tail = loglog_slope({xs[m - 2], xs[m - 1]}, {ys[m - 2], ys[m - 1]});
    return result;
}

KappaBoundResult kappa_bound_check(const Grid3& grid, int num_fields,
                                   const std::vector<double>& kappas,
                                   const std::vector<double>& particle_numbers, Rng& rng,
                                   double k0) {
    if (num_fields < 1)
        throw parameter_error("need at least one trial field");
    for (double k : kappas)
        if (!(k > 0.0))
            throw parameter_error("kappa values must be positive");
    for (double n : particle_numbers)
        if (!(n >= 1.0))
            throw parameter_error("particle numbers must be at least 1");

    KappaBoundResult result;
    for (int f = 0; f < num_fields; ++f) {
        const SpectralField phi = random_smooth_field(grid, rng, k0);
        const double h1 = field_norm(phi, NormKind::H1);
        for (double kappa : kappas) {
            for (double n : particle_numbers) {
                const SpectralField smoothed = smooth_kappa(phi, kappa, n);
                KappaBoundRow row;
                row.kappa = kappa;
                row.particles = n;
                row.lhs = n * l2_gap(smoothed, phi);
                row.rhs = kappa * h1;
                row.margin = row.rhs - row.lhs;
                result.rows.push_back(row);
                ++result.trials;
                const double ratio = row.lhs / row.rhs;
                if (ratio > result.max_ratio) {
                    result.max_ratio = ratio;
                    result.kappa_at_max = kappa;
                    result.particles_at_max = n;
                }
                if (row.lhs > row.rhs * (1.0 + 1e-12))
                    ++result.violations;
            }
        }
    }
    return result;
}

AprioriTraceResult apriori_trace(const ModeSet& modes, const PairPotential& potential,
                                 double lambda, const std::vector<cd>& c0, int N, double T,
                                 int samples, const PropagateOptions& opts) {
    if (samples < 2)
        throw parameter_error("need at least two samples along the evolution");
    if (!(T > 0.0))
        throw parameter_error("final time must be positive");
    const int M = modes.size();
    if (static_cast<int>(c0.size()) != M)
        throw parameter_error("initial amplitudes do not match the mode set");
    const std::vector<cd> c = normalized_amplitudes(c0);

    FockBasis basis(M, N);
    HamiltonianBuild build = build_hamiltonian(basis, modes, potential, lambda);
    FockVec psi = condensate_state(basis, c);

    auto record = [&](double t, AprioriTraceResult& out) {
        std::vector<double> occ(M, 0.0);
        for (std::size_t j = 0; j < basis.dimension(); ++j) {
            const double w = std::norm(psi[j]);
            if (w == 0.0)
                continue;
            const int* n = basis.occupation(j);
            for (int a = 0; a < M; ++a)
                occ[a] += w * n[a];
        }
        double w1 = 0.0, w2 = 0.0;
        for (int a = 0; a < M; ++a) {
            const double g = occ[a] / static_cast<double>(N);
            w1 += modes.dispersion(a) * g;
            w2 += modes.dispersion(a) * modes.dispersion(a) * g;
        }
        out.times.push_back(t);
        out.w1.push_back(w1);
        out.w2.push_back(w2);
    };

    AprioriTraceResult result;
    record(0.0, result);
    const double dt = T / static_cast<double>(samples);
    double run_max1 = result.w1.front();
    double run_max2 = result.w2.front();
    for (int s = 1; s <= samples; ++s) {
        psi = propagate(build.H, psi, dt, opts);
        record(static_cast<double>(s) * dt, result);
        if (result.w1.back() > 1.05 * run_max1 || result.w2.back() > 1.05 * run_max2)
            result.flagged = true;
        run_max1 = std::max(run_max1, result.w1.back());
        run_max2 = std::max(run_max2, result.w2.back());
    }

    const double base1 = result.w1.front();
    const double base2 = result.w2.front();
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        result.max_growth_w1 = std::max(result.max_growth_w1, result.w1[i] / base1);
        result.max_growth_w2 = std::max(result.max_growth_w2, result.w2[i] / base2);
    }
    return result;
}

} // namespace bosonstar
