#include "bosonstar/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bosonstar/errors.hpp"
#include "bosonstar/random.hpp"
#include "bosonstar/trial_fields.hpp"

namespace bosonstar {

double background_offset(double L) { return -2.8372974794806 / L; }

namespace {

// H[phi] phi in position samples, and the potential used to build it.
struct ApplyH {
    std::vector<cd> h_phi;
    RealField pot;
};

ApplyH apply_hamiltonian(const SpectralField& phi, const CoulombKernel& kernel, double lambda) {
    ApplyH out{sobolev_apply(phi, 0.5).values(), hartree_potential(phi, kernel, lambda)};
    const std::vector<cd>& vals = phi.values();
    for (std::size_t i = 0; i < vals.size(); ++i) out.h_phi[i] += out.pot.values[i] * vals[i];
    return out;
}

double coulomb_quadratic(const SpectralField& phi, const CoulombKernel& kernel) {
    const RealField pot = hartree_potential(phi, kernel, 1.0);
    const std::vector<double> rho = density(phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) acc += pot.values[i] * rho[i];
    return acc * phi.grid().cell_volume();
}

SpectralField apply_abs_p(const SpectralField& phi) {
    const Grid3& g = phi.grid();
    std::vector<cd> hat = phi.spectrum();
    const int n = g.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                hat[g.index(x, y, z)] *= std::sqrt(g.k_squared(x, y, z));
    return SpectralField::from_spectrum(g, std::move(hat));
}

void project_mode_cap(SpectralField& phi, int cap) {
    const Grid3& g = phi.grid();
    std::vector<cd>& hat = phi.mutable_spectrum();
    const int n = g.n();
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const int m = std::max({std::abs(g.signed_mode(x)), std::abs(g.signed_mode(y)),
                                        std::abs(g.signed_mode(z))});
                if (m > cap) hat[g.index(x, y, z)] = cd(0.0, 0.0);
            }
}

} // namespace

GroundStateResult gradient_flow(const SpectralField& phi0, const CoulombKernel& kernel, double lambda,
                                const GradientFlowOptions& opts) {
    if (!(opts.tau > 0.0)) throw parameter_error("gradient_flow: tau must be positive");
    if (!(opts.tol > 0.0)) throw parameter_error("gradient_flow: tol must be positive");
    if (opts.max_iter < 1) throw parameter_error("gradient_flow: max_iter must be >= 1");

    SpectralField phi = normalized(phi0);
    double tau = opts.tau;
    double e_cur = energy(phi, kernel, lambda).total;

    GroundStateResult out{phi};
    out.energy_history.push_back(e_cur);

    long iter = 0;
    double mu = 0.0, residual = 0.0, delta_e = 0.0;
    bool have_stop_data = false;
    while (iter < opts.max_iter) {
        const ApplyH h = apply_hamiltonian(phi, kernel, lambda);
        const std::vector<cd>& vals = phi.values();

        cd mu_acc(0.0, 0.0);
        for (std::size_t i = 0; i < vals.size(); ++i) mu_acc += std::conj(vals[i]) * h.h_phi[i];
        mu = mu_acc.real() * phi.grid().cell_volume();

        double res_acc = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) res_acc += std::norm(h.h_phi[i] - mu * vals[i]);
        residual = std::sqrt(res_acc * phi.grid().cell_volume());
        out.residual_history.push_back(residual);

        if (have_stop_data && delta_e < opts.tol && residual < 10.0 * opts.tol) {
            out.converged = true;
            break;
        }

        // Candidate step with backtracking on energy increase.
        bool accepted = false;
        while (tau > 1e-14) {
            std::vector<cd> cand(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) cand[i] = vals[i] - tau * h.h_phi[i];
            SpectralField next = normalized(SpectralField::from_values(phi.grid(), std::move(cand)));
            const double e_next = energy(next, kernel, lambda).total;
            if (e_next <= e_cur) {
                delta_e = e_cur - e_next;
                have_stop_data = true;
                phi = std::move(next);
                e_cur = e_next;
                out.energy_history.push_back(e_cur);
                accepted = true;
                // let the step recover after a stretch of accepted moves so a
                // single early backtrack does not slow the whole flow
                tau = std::min(opts.tau, tau * 1.2);
                break;
            }
            tau *= 0.5;
        }
        ++iter;
        if (!accepted) break; // stagnated at machine precision
    }

    out.state = std::move(phi);
    out.energy = e_cur;
    out.mu = mu;
    out.residual = residual;
    out.iterations = iter;
    return out;
}

double kato_ratio(const SpectralField& phi, const CoulombKernel& kernel) {
    phi.check_finite("kato_ratio");
    const double l2sq = std::pow(field_norm(phi, NormKind::L2), 2);
    const double k_hom = homogeneous_half_energy(phi);
    if (!(k_hom > 1e-12 * l2sq))
        throw parameter_error("kato_ratio: homogeneous kinetic term vanishes (constant field?)");
    const double d = coulomb_quadratic(phi, kernel) - background_offset(phi.grid().L()) * l2sq * l2sq;
    return d / (2.0 * k_hom);
}

LambdaCritResult estimate_lambda_crit(const Grid3& grid, const CoulombKernel& kernel,
                                      const LambdaCritOptions& opts) {
    if (opts.ascent_iters < 1 || opts.restarts < 1)
        throw parameter_error("estimate_lambda_crit: ascent_iters and restarts must be >= 1");
    if (kernel.grid() != grid) throw parameter_error("estimate_lambda_crit: kernel grid mismatch");

    const int cap = opts.mode_cap_frac > 0.0
                        ? std::max(2, static_cast<int>(opts.mode_cap_frac * (grid.n() / 2)))
                        : 0;
    const double ratio_bound = 0.25 * 3.14159265358979323846 * 1.02;

    LambdaCritResult out{0.0, 0.0, {}, SpectralField::zero(grid)};
    Rng rng = Rng::for_purpose(opts.seed, "lambda-crit-ascent");

    for (int restart = 0; restart < opts.restarts; ++restart) {
        // Smooth start with spectral content well inside any cap.
        const double k0 = 0.15 * (grid.n() / 2) * 6.283185307179586 / grid.L();
        SpectralField phi = random_smooth_field(grid, rng, k0);
        if (cap > 0) {
            project_mode_cap(phi, cap);
            phi = normalized(phi);
        }

        double eta = opts.initial_step;
        RealField pot = hartree_potential(phi, kernel, 1.0);
        // Ascent objective: the raw quotient D_per / (2 K_hom) without the
        // background compensation. It shares the supremum and the maximizing
        // (concentrating) sequences with kato_ratio but stays bounded on the
        // near-uniform states where the compensated numerator does not vanish,
        // so the ascent cannot escape through the flat direction.
        auto ratio_of = [&](const SpectralField& f, const RealField& p) {
            const double k_hom = homogeneous_half_energy(f);
            if (!(k_hom > 1e-12)) return -1.0;
            const std::vector<double> rho = density(f);
            double d = 0.0;
            for (std::size_t i = 0; i < rho.size(); ++i) d += p.values[i] * rho[i];
            return d * grid.cell_volume() / (2.0 * k_hom);
        };
        double ratio = ratio_of(phi, pot);

        for (int it = 0; it < opts.ascent_iters; ++it) {
            const SpectralField pphi = apply_abs_p(phi);
            const std::vector<cd>& vals = phi.values();
            const std::vector<cd>& pvals = pphi.values();
            std::vector<cd> grad(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i)
                grad[i] = pot.values[i] * vals[i] - ratio * pvals[i];

            // Precondition with (1-Lap)^{-1/2}: damps the stiff high-k part of
            // the quotient gradient so sharp near-optimal profiles remain
            // reachable before the step collapses.
            const SpectralField precond =
                sobolev_apply(SpectralField::from_values(grid, std::move(grad)), -0.5);
            const std::vector<cd>& dir = precond.values();

            std::vector<cd> cand(vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i) cand[i] = vals[i] + eta * dir[i];
            SpectralField next = SpectralField::from_values(grid, std::move(cand));
            if (cap > 0) project_mode_cap(next, cap);
            next = normalized(next);

            RealField next_pot = hartree_potential(next, kernel, 1.0);
            const double next_ratio = ratio_of(next, next_pot);
            if (std::isfinite(next_ratio) && next_ratio > ratio) {
                phi = std::move(next);
                pot = std::move(next_pot);
                ratio = next_ratio;
                eta *= 1.05;
            } else {
                eta *= 0.5;
                if (eta < 1e-12) break;
            }
        }

        // Report the restart through kato_ratio itself; a non-finite or
        // out-of-bound value means the ascent degenerated, which aborts this
        // restart rather than contaminating the estimate.
        double reported = -1.0;
        try {
            reported = kato_ratio(phi, kernel);
        } catch (const parameter_error&) {
            continue;
        }
        if (!std::isfinite(reported) || reported > ratio_bound) continue;

        out.restart_ratios.push_back(reported);
        if (reported > out.best_ratio) {
            out.best_ratio = reported;
            out.best_state = phi;
        }
    }

    if (!(out.best_ratio > 0.0))
        throw invalid_state_error("estimate_lambda_crit: ascent found no positive ratio");
    out.lambda_hat = -1.0 / out.best_ratio;
    return out;
}

namespace {

// Evaluate the Fourier series of phi at the affine lattice mu*x_j + offset:
// one dense n x n transform per axis, contracted in sequence. offset = 0 is
// dilation about the origin; offset = (1-mu)L/2 dilates about the box centre.
// With centred_window the sample is kept only while the dilated displacement
// from the centre stays inside one period window; beyond it the row is zeroed
// instead of wrapping around, which would drag periodic images of a centred
// bump back into the box as mu grows.
SpectralField dilated_lattice(const SpectralField& phi, double mu, double offset,
                              bool centred_window = false) {
    const Grid3& g = phi.grid();
    const int n = g.n();
    const double half = 0.5 * g.L();

    std::vector<cd> axis(n * n);
    for (int j = 0; j < n; ++j) {
        const double xj = mu * g.spacing() * j + offset;
        const bool outside = centred_window && std::abs(mu * (g.spacing() * j - half)) >= half;
        for (int m = 0; m < n; ++m) {
            const double a = g.k_axis(m) * xj;
            axis[j * n + m] = outside ? cd(0.0, 0.0) : cd(std::cos(a), std::sin(a));
        }
    }

    std::vector<cd> cur = phi.spectrum();
    std::vector<cd> next(cur.size());
    // Contract axis matrices against the x, y, z indices in turn. Strides for
    // x-fastest storage: x -> 1, y -> n, z -> n^2.
    const std::size_t strides[3] = {1, static_cast<std::size_t>(n),
                                    static_cast<std::size_t>(n) * static_cast<std::size_t>(n)};
    for (int ax = 0; ax < 3; ++ax) {
        const std::size_t s = strides[ax];
        for (int a2 = 0; a2 < n; ++a2)
            for (int a1 = 0; a1 < n; ++a1) {
                // Base offset enumerating the two non-contracted axes.
                std::size_t base = 0;
                int rem[2], r = 0;
                for (int other = 0; other < 3; ++other)
                    if (other != ax) rem[r++] = other;
                base = strides[rem[0]] * a1 + strides[rem[1]] * a2;
                for (int j = 0; j < n; ++j) {
                    cd acc(0.0, 0.0);
                    const cd* row = &axis[static_cast<std::size_t>(j) * n];
                    for (int m = 0; m < n; ++m) acc += row[m] * cur[base + s * m];
                    next[base + s * j] = acc;
                }
            }
        std::swap(cur, next);
    }

    const double scale = std::pow(mu, 1.5) / g.volume();
    for (auto& v : cur) v *= scale;
    return SpectralField::from_values(g, std::move(cur));
}

// Translate phi by a lattice vector so the density peak sits on the centre
// node; lattice shifts are exact phase rotations of the spectrum.
SpectralField centre_peak(const SpectralField& phi) {
    const Grid3& g = phi.grid();
    const int n = g.n();
    const std::vector<double> rho = density(phi);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < rho.size(); ++i)
        if (rho[i] > rho[imax]) imax = i;
    const int px = static_cast<int>(imax) % n;
    const int py = (static_cast<int>(imax) / n) % n;
    const int pz = static_cast<int>(imax) / (n * n);
    const double d[3] = {(n / 2 - px) * g.spacing(), (n / 2 - py) * g.spacing(),
                         (n / 2 - pz) * g.spacing()};

    std::vector<cd> spec = phi.spectrum();
    std::vector<cd> ph(3 * n);
    for (int ax = 0; ax < 3; ++ax)
        for (int m = 0; m < n; ++m) {
            const double a = -g.k_axis(m) * d[ax];
            ph[ax * n + m] = cd(std::cos(a), std::sin(a));
        }
    std::size_t idx = 0;
    for (int mz = 0; mz < n; ++mz)
        for (int my = 0; my < n; ++my)
            for (int mx = 0; mx < n; ++mx, ++idx)
                spec[idx] *= ph[0 * n + mx] * ph[1 * n + my] * ph[2 * n + mz];
    return SpectralField::from_spectrum(g, std::move(spec));
}

} // namespace

SpectralField scale_field(const SpectralField& phi, double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw parameter_error("scale_field: mu must be positive");
    return dilated_lattice(phi, mu, 0.0);
}

ScalingScanResult scaling_scan(const SpectralField& phi, const CoulombKernel& kernel, double lambda,
                               const std::vector<double>& mu_list) {
    if (mu_list.size() < 4) throw parameter_error("scaling_scan: need at least 4 mu values");
    ScalingScanResult out;
    // The concentration family is defined up to translation. Pin the density
    // peak to the box centre and dilate about it; dilating about an arbitrary
    // anchor would drag a seam-straddling bump across the box boundary and
    // alias spectral mass into the rejection band.
    const SpectralField centred = centre_peak(phi);
    const double L = phi.grid().L();
    for (double mu : mu_list) {
        if (!(mu > 0.0)) throw parameter_error("scaling_scan: mu must be positive");
        SpectralField scaled =
            normalized(dilated_lattice(centred, mu, 0.5 * L * (1.0 - mu), true));
        if (spectral_tail_fraction(scaled, 0.75) > 0.01) {
            out.rejected.push_back(mu);
            continue;
        }
        out.mu.push_back(mu);
        out.energy.push_back(energy(scaled, kernel, lambda).total);
    }
    if (out.mu.size() < 4) {
        out.verdict = ScanVerdict::Inconclusive;
        return out;
    }

    // Least-squares slope of E vs mu over the top half of accepted values.
    const std::size_t half = out.mu.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t m = out.mu.size() - half;
    for (std::size_t i = half; i < out.mu.size(); ++i) {
        sx += out.mu[i];
        sy += out.energy[i];
        sxx += out.mu[i] * out.mu[i];
        sxy += out.mu[i] * out.energy[i];
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (out.slope < -1e-3)
        out.verdict = ScanVerdict::Collapse;
    else if (out.slope > 1e-3)
        out.verdict = ScanVerdict::Stable;
    else
        out.verdict = ScanVerdict::Inconclusive;
    return out;
}

const char* to_string(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::Stable: return "stable";
        case ScanVerdict::Collapse: return "collapse";
        default: return "inconclusive";
    }
}

} // namespace bosonstar
