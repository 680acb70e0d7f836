#include "bosonstar/run_commands.hpp"

#include <Eigen/Core>
#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "bosonstar/bbgky.hpp"
#include "bosonstar/cutoff_lab.hpp"
#include "bosonstar/errors.hpp"
#include "bosonstar/field_io.hpp"
#include "bosonstar/ground_state.hpp"
#include "bosonstar/hartree_evolve.hpp"
#include "bosonstar/herbst.hpp"
#include "bosonstar/mean_field.hpp"
#include "bosonstar/trial_fields.hpp"

namespace bosonstar {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793;
constexpr double kHerbstSlack = 1.01; // empirical margin over the sharp pi/2

struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files; // write order
    json summary = json::object();
    std::string invariant_failure; // nonempty -> thrown after the writes
};

std::string col(double v) { return format_g17(v); }

CoulombKernel make_kernel(const RunConfig& cfg, const Grid3& grid) {
    if (cfg.kernel == "regularized") return CoulombKernel::make_regularized(grid, cfg.epsilon);
    return CoulombKernel::make_exact(grid);
}

// Condensate amplitudes for the mode-truncated commands. The Gaussian shape
// populates every mode (nontrivial mean-field flow); the zero-mode variant is
// the stationary reference whose N-body depletion is purely interaction-led.
std::vector<cd> initial_amplitudes(const ModeSet& modes, const std::string& init) {
    const int M = modes.size();
    std::vector<cd> c(M, cd(0.0, 0.0));
    if (init == "zero-mode") {
        const int z = modes.find({0, 0, 0});
        if (z < 0) throw invalid_state_error("mode set does not contain the zero mode");
        c[z] = cd(1.0, 0.0);
        return c;
    }
    const double unit = 2.0 * kPi / modes.L();
    double s = 0.0;
    for (int a = 0; a < M; ++a) {
        const auto& m = modes.triple(a);
        const double k2 = unit * unit * (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
        c[a] = cd(std::exp(-0.5 * k2), 0.0);
        s += std::norm(c[a]);
    }
    const double inv = 1.0 / std::sqrt(s);
    for (cd& v : c) v *= inv;
    return c;
}

json sample_json(const TrajectorySample& s) {
    return json{{"t", s.t},       {"norm", s.norm},       {"energy", s.energy},
                {"kinetic", s.kinetic}, {"coulomb", s.coulomb}, {"hhalf", s.hhalf}};
}

RunOutput cmd_evolve(const RunConfig& cfg) {
    RunOutput out;
    Grid3 grid(cfg.grid_n, cfg.grid_L);
    const CoulombKernel kernel = make_kernel(cfg, grid);
    const SpectralField phi0 = make_centered_gaussian(grid, cfg.initial_sigma);

    EvolveOptions opts;
    opts.T = cfg.T;
    opts.dt = cfg.dt;
    opts.sample_every = cfg.sample_every;
    const EvolveResult res = evolve(phi0, kernel, cfg.lambda, opts);
    const auto& samples = res.trajectory.samples();

    std::string csv = "t,norm,energy,kinetic,coulomb,hhalf\n";
    std::string dat;
    double norm_drift = 0.0, energy_drift = 0.0;
    const double norm0 = samples.front().norm;
    const double e0 = samples.front().energy;
    for (const TrajectorySample& s : samples) {
        csv += col(s.t) + "," + col(s.norm) + "," + col(s.energy) + "," + col(s.kinetic) + "," +
               col(s.coulomb) + "," + col(s.hhalf) + "\n";
        dat += col(s.t) + " " + col(s.energy) + "\n";
        norm_drift = std::max(norm_drift, std::abs(s.norm - norm0));
        energy_drift = std::max(energy_drift, std::abs(s.energy - e0));
    }
    out.files.emplace_back("evolve.csv", std::move(csv));
    out.files.emplace_back("evolve.dat", std::move(dat));

    const double energy_scale = std::max(std::abs(e0), 1e-300);
    out.summary = {{"lambda", cfg.lambda},
                   {"dt", cfg.dt},
                   {"T", cfg.T},
                   {"initial", sample_json(samples.front())},
                   {"final", sample_json(samples.back())},
                   {"norm_drift", norm_drift},
                   {"energy_drift_abs", energy_drift},
                   {"energy_drift_rel", energy_drift / energy_scale}};

    if (cfg.write_fields) {
        out.files.emplace_back("fields/final.bin",
                               field_to_bytes(res.final_state, Representation::Position));
        out.files.emplace_back("fields/final_density.csv",
                               density_slice_csv(res.final_state, cfg.grid_n / 2));
    }
    if (norm_drift > 1e-10)
        out.invariant_failure =
            "evolve: L2 norm drifted by " + col(norm_drift) + " (tolerance 1e-10)";
    return out;
}

RunOutput cmd_ground_state(const RunConfig& cfg) {
    RunOutput out;
    Grid3 grid(cfg.grid_n, cfg.grid_L);
    const CoulombKernel kernel = make_kernel(cfg, grid);
    const SpectralField phi0 = make_centered_gaussian(grid, cfg.initial_sigma);

    GradientFlowOptions opts{cfg.flow_tau, cfg.flow_tol, cfg.flow_max_iter};
    const GroundStateResult res = gradient_flow(phi0, kernel, cfg.lambda, opts);

    std::string csv = "iter,energy,residual\n";
    std::string dat;
    const std::size_t rows = std::min(res.energy_history.size(), res.residual_history.size());
    for (std::size_t i = 0; i < rows; ++i) {
        csv += std::to_string(i) + "," + col(res.energy_history[i]) + "," +
               col(res.residual_history[i]) + "\n";
        dat += std::to_string(i) + " " + col(res.energy_history[i]) + "\n";
    }
    out.files.emplace_back("ground-state.csv", std::move(csv));
    out.files.emplace_back("ground-state.dat", std::move(dat));

    const EnergyBreakdown eb = energy(res.state, kernel, cfg.lambda);
    // The ratio is undefined when the minimizer is the uniform state (weak
    // coupling on a small box); report null rather than refusing the run.
    json ratio = nullptr;
    try {
        ratio = kato_ratio(res.state, kernel);
    } catch (const parameter_error&) {
    }
    out.summary = {{"lambda", cfg.lambda},
                   {"energy", eb.total},
                   {"kinetic", eb.kinetic},
                   {"coulomb", eb.coulomb},
                   {"mu", res.mu},
                   {"residual", res.residual},
                   {"iterations", res.iterations},
                   {"converged", res.converged},
                   {"kato_ratio", ratio}};

    if (cfg.write_fields) {
        out.files.emplace_back("fields/minimizer.bin",
                               field_to_bytes(res.state, Representation::Position));
        out.files.emplace_back("fields/minimizer_density.csv",
                               density_slice_csv(res.state, cfg.grid_n / 2));
    }
    return out;
}

RunOutput cmd_collapse_scan(const RunConfig& cfg) {
    RunOutput out;
    Grid3 grid(cfg.grid_n, cfg.grid_L);
    const CoulombKernel kernel = CoulombKernel::make_exact(grid);

    LambdaCritOptions copts;
    copts.ascent_iters = cfg.ascent_iters;
    copts.restarts = cfg.restarts;
    copts.seed = cfg.seed;
    copts.initial_step = cfg.initial_step;
    copts.mode_cap_frac = cfg.mode_cap_frac;
    const LambdaCritResult crit = estimate_lambda_crit(grid, kernel, copts);

    std::vector<double> mus(cfg.mu_count);
    for (int i = 0; i < cfg.mu_count; ++i)
        mus[i] = cfg.mu_min + (cfg.mu_max - cfg.mu_min) * i / (cfg.mu_count - 1);

    std::string csv = "lambda,verdict,slope,lambda_hat\n";
    std::string dat;
    std::vector<std::pair<double, int>> ranks; // (lambda, verdict rank)
    json verdicts = json::array();
    long rejected_mu = 0;
    for (double lam : cfg.scan_lambdas) {
        const ScalingScanResult scan = scaling_scan(crit.best_state, kernel, lam, mus);
        csv += col(lam) + "," + to_string(scan.verdict) + "," + col(scan.slope) + "," +
               col(crit.lambda_hat) + "\n";
        dat += "# lambda = " + col(lam) + "\n";
        for (std::size_t i = 0; i < scan.mu.size(); ++i)
            dat += col(scan.mu[i]) + " " + col(scan.energy[i]) + "\n";
        dat += "\n";
        rejected_mu += static_cast<long>(scan.rejected.size());
        const int rank = scan.verdict == ScanVerdict::Stable     ? 0
                         : scan.verdict == ScanVerdict::Collapse ? 2
                                                                 : 1;
        ranks.emplace_back(lam, rank);
        verdicts.push_back(
            {{"lambda", lam}, {"verdict", to_string(scan.verdict)}, {"slope", scan.slope}});
    }
    out.files.emplace_back("collapse-scan.csv", std::move(csv));
    out.files.emplace_back("collapse-scan.dat", std::move(dat));

    // Bracket the threshold between the most negative stable coupling and the
    // least negative collapsing one.
    double last_stable = std::nan(""), first_collapse = std::nan("");
    for (const auto& [lam, rank] : ranks) {
        if (rank == 0 && (std::isnan(last_stable) || lam < last_stable)) last_stable = lam;
        if (rank == 2 && (std::isnan(first_collapse) || lam > first_collapse)) first_collapse = lam;
    }
    out.summary = {{"lambda_hat", crit.lambda_hat},
                   {"best_ratio", crit.best_ratio},
                   {"verdicts", verdicts},
                   {"rejected_mu", rejected_mu}};
    out.summary["bracket"] = {{"stable", last_stable}, {"collapse", first_collapse}};

    std::sort(ranks.begin(), ranks.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 1; i < ranks.size(); ++i)
        if (ranks[i].second < ranks[i - 1].second) {
            out.invariant_failure = "collapse-scan: verdicts are not monotone in lambda (" +
                                    col(ranks[i - 1].first) + " -> " + col(ranks[i].first) + ")";
            break;
        }
    return out;
}

RunOutput cmd_lambda_crit(const RunConfig& cfg) {
    RunOutput out;
    LambdaCritOptions copts;
    copts.ascent_iters = cfg.ascent_iters;
    copts.restarts = cfg.restarts;
    copts.seed = cfg.seed;
    copts.initial_step = cfg.initial_step;
    copts.mode_cap_frac = cfg.mode_cap_frac;

    Grid3 fine(cfg.grid_n, cfg.grid_L);
    const LambdaCritResult res =
        estimate_lambda_crit(fine, CoulombKernel::make_exact(fine), copts);
    Grid3 coarse(cfg.grid_n / 2, cfg.grid_L);
    const LambdaCritResult res_c =
        estimate_lambda_crit(coarse, CoulombKernel::make_exact(coarse), copts);

    // One-sided variational estimates at n and n/2; eliminate the leading
    // 1/n deficit: f(n) ~ f_inf + c/n  =>  f_inf ~ 2 f(n) - f(n/2).
    const double extrapolated = 2.0 * res.lambda_hat - res_c.lambda_hat;

    std::string csv = "restart,ratio,lambda_hat\n";
    std::string dat;
    for (std::size_t i = 0; i < res.restart_ratios.size(); ++i) {
        const double r = res.restart_ratios[i];
        csv += std::to_string(i) + "," + col(r) + "," + col(-1.0 / r) + "\n";
        dat += std::to_string(i) + " " + col(r) + "\n";
    }
    out.files.emplace_back("lambda-crit.csv", std::move(csv));
    out.files.emplace_back("lambda-crit.dat", std::move(dat));

    out.summary = {{"lambda_hat", res.lambda_hat},
                   {"lambda_hat_coarse", res_c.lambda_hat},
                   {"lambda_hat_extrapolated", extrapolated},
                   {"best_ratio", res.best_ratio},
                   {"grid_n", cfg.grid_n},
                   {"coarse_n", cfg.grid_n / 2},
                   {"critical_exact", -4.0 / kPi}};
    return out;
}

RunOutput cmd_nbody_compare(const RunConfig& cfg) {
    RunOutput out;
    const ModeSet modes = ModeSet::ball(cfg.fock_radius, cfg.fock_box_L);
    const PairPotential pot = PairPotential::exact(cfg.fock_box_L);
    const std::vector<cd> c0 = initial_amplitudes(modes, cfg.fock_init);

    PropagateOptions prop;
    prop.dt = cfg.krylov_dt;
    const MeanFieldSweep sweep = mean_field_convergence(modes, pot, cfg.lambda, c0, cfg.fock_time,
                                                        cfg.particles_list, cfg.fock_hartree_dt, prop);

    std::string csv = "N,t,distance\n";
    std::string dat;
    for (const MeanFieldPoint& p : sweep.points) {
        csv += std::to_string(p.particles) + "," + col(cfg.fock_time) + "," + col(p.distance) + "\n";
        dat += std::to_string(p.particles) + " " + col(p.distance) + "\n";
    }
    out.files.emplace_back("nbody-compare.csv", std::move(csv));
    out.files.emplace_back("nbody-compare.dat", std::move(dat));

    out.summary = {{"lambda", cfg.lambda},
                   {"t", cfg.fock_time},
                   {"modes", modes.size()},
                   {"slope", sweep.slope},
                   {"expected_slope", -1.0}};

    for (std::size_t i = 1; i < sweep.points.size(); ++i)
        if (!(sweep.points[i].distance < sweep.points[i - 1].distance)) {
            out.invariant_failure =
                "nbody-compare: trace distance failed to decrease from N=" +
                std::to_string(sweep.points[i - 1].particles) + " to N=" +
                std::to_string(sweep.points[i].particles);
            break;
        }
    return out;
}

RunOutput cmd_bbgky(const RunConfig& cfg) {
    RunOutput out;
    const ModeSet modes = ModeSet::ball(cfg.fock_radius, cfg.fock_box_L);
    const PairPotential pot = PairPotential::exact(cfg.fock_box_L);
    const std::vector<cd> c0 = initial_amplitudes(modes, cfg.fock_init);

    BbgkyOptions opts;
    opts.dt = cfg.bbgky_dt;
    opts.time = cfg.bbgky_time;
    opts.hartree_dt = cfg.bbgky_hartree_dt;
    opts.prop.dt = cfg.krylov_dt;
    const BbgkySeries series =
        bbgky_residual_series(modes, pot, cfg.lambda, c0, cfg.particles, opts);

    std::string csv = "t,finite_residual,infinite_residual\n";
    std::string dat;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        csv += col(series.times[i]) + "," + col(series.finite_residual[i]) + "," +
               col(series.infinite_residual[i]) + "\n";
        dat += col(series.times[i]) + " " + col(series.finite_residual[i]) + "\n";
    }
    out.files.emplace_back("bbgky-residual.csv", std::move(csv));
    out.files.emplace_back("bbgky-residual.dat", std::move(dat));

    out.summary = {{"particles", cfg.particles},
                   {"dt", cfg.bbgky_dt},
                   {"time", cfg.bbgky_time},
                   {"max_finite_residual", series.max_finite},
                   {"max_infinite_residual", series.max_infinite},
                   {"rhs_scale_finite", series.rhs_scale_finite},
                   {"rhs_scale_infinite", series.rhs_scale_infinite}};
    return out;
}

RunOutput cmd_cutoff_epsilon(const RunConfig& cfg) {
    RunOutput out;
    const ModeSet modes = ModeSet::ball(cfg.fock_radius, cfg.fock_box_L);
    const std::vector<cd> c0 = initial_amplitudes(modes, cfg.fock_init);

    PropagateOptions prop;
    prop.dt = cfg.krylov_dt;
    const EpsilonCompareResult res = epsilon_compare(modes, cfg.particles, cfg.lambda, c0,
                                                     cfg.cutoff_time, cfg.cutoff_epsilons, prop);

    std::string csv = "epsilon,discrepancy,bound\n";
    std::string dat;
    for (const EpsilonPoint& p : res.points) {
        csv += col(p.epsilon) + "," + col(p.discrepancy) + "," + col(p.bound) + "\n";
        dat += col(p.epsilon) + " " + col(p.discrepancy) + "\n";
    }
    out.files.emplace_back("cutoff-epsilon.csv", std::move(csv));
    out.files.emplace_back("cutoff-epsilon.dat", std::move(dat));

    out.summary = {{"particles", cfg.particles},
                   {"t", cfg.cutoff_time},
                   {"fitted_C", res.fitted_C},
                   {"exponent_tail", res.exponent_tail},
                   {"exponent_full", res.exponent_full},
                   {"reference_exponent", 0.25},
                   {"monotone", res.monotone},
                   {"bounded", res.bounded}};

    if (!res.monotone)
        out.invariant_failure = "cutoff-epsilon: discrepancy is not monotone in epsilon";
    else if (!res.bounded)
        out.invariant_failure = "cutoff-epsilon: discrepancy exceeds the fitted C t eps^{1/4} bound";
    return out;
}

RunOutput cmd_cutoff_kappa(const RunConfig& cfg) {
    RunOutput out;
    Grid3 grid(cfg.grid_n, cfg.grid_L);
    Rng rng = Rng::for_purpose(cfg.seed, "kappa-bound");
    const KappaBoundResult res = kappa_bound_check(grid, cfg.cutoff_fields, cfg.cutoff_kappas,
                                                   cfg.cutoff_particle_numbers, rng, cfg.cutoff_k0);

    std::string csv = "kappa,N,lhs,rhs,margin\n";
    std::string dat;
    long idx = 0;
    for (const KappaBoundRow& r : res.rows) {
        csv += col(r.kappa) + "," + col(r.particles) + "," + col(r.lhs) + "," + col(r.rhs) + "," +
               col(r.margin) + "\n";
        dat += std::to_string(idx++) + " " + col(r.rhs > 0.0 ? r.lhs / r.rhs : 0.0) + "\n";
    }
    out.files.emplace_back("cutoff-kappa.csv", std::move(csv));
    out.files.emplace_back("cutoff-kappa.dat", std::move(dat));

    out.summary = {{"fields", cfg.cutoff_fields},
                   {"trials", res.trials},
                   {"violations", res.violations},
                   {"max_ratio", res.max_ratio},
                   {"kappa_at_max", res.kappa_at_max},
                   {"particles_at_max", res.particles_at_max}};

    if (res.violations > 0)
        out.invariant_failure = "cutoff-kappa: " + std::to_string(res.violations) +
                                " trial(s) broke N||phi_kappa - phi|| <= kappa ||phi||_H1";
    return out;
}

RunOutput cmd_apriori(const RunConfig& cfg) {
    RunOutput out;
    const ModeSet modes = ModeSet::ball(cfg.fock_radius, cfg.fock_box_L);
    const PairPotential pot = PairPotential::exact(cfg.fock_box_L);

    // kappa-smoothed initial amplitudes: damp mode a by exp(-kappa |k_a| / N)
    // and renormalize.
    std::vector<cd> c0 = initial_amplitudes(modes, cfg.fock_init);
    const double unit = 2.0 * kPi / modes.L();
    double s = 0.0;
    for (int a = 0; a < modes.size(); ++a) {
        const auto& m = modes.triple(a);
        const double kn = unit * std::sqrt(double(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]));
        c0[a] *= std::exp(-cfg.kappa * kn / cfg.particles);
        s += std::norm(c0[a]);
    }
    for (cd& v : c0) v /= std::sqrt(s);

    PropagateOptions prop;
    prop.dt = cfg.krylov_dt;
    const AprioriTraceResult res = apriori_trace(modes, pot, cfg.lambda, c0, cfg.particles,
                                                 cfg.apriori_time, cfg.apriori_samples, prop);

    std::string csv = "t,w1,w2\n";
    std::string dat;
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        csv += col(res.times[i]) + "," + col(res.w1[i]) + "," + col(res.w2[i]) + "\n";
        dat += col(res.times[i]) + " " + col(res.w1[i]) + "\n";
    }
    out.files.emplace_back("apriori.csv", std::move(csv));
    out.files.emplace_back("apriori.dat", std::move(dat));

    out.summary = {{"particles", cfg.particles},
                   {"kappa", cfg.kappa},
                   {"T", cfg.apriori_time},
                   {"max_growth_w1", res.max_growth_w1},
                   {"max_growth_w2", res.max_growth_w2},
                   {"flagged", res.flagged}};

    if (res.flagged)
        out.invariant_failure =
            "apriori: a dispersion moment exceeded 1.05x its running max along the trajectory";
    return out;
}

json quadrature_json(const RadialQuadrature& q) {
    return json{{"r_min", q.r_min},   {"r_max", q.r_max},     {"nodes", q.nodes},
                {"k_min", q.k_min},   {"k_max", q.k_max},     {"k_nodes", q.k_nodes},
                {"transform_nodes", q.transform_nodes}};
}

RunOutput cmd_ineq_herbst(const RunConfig& cfg) {
    RunOutput out;
    RadialQuadrature q;
    q.r_min = cfg.radial_r_min;
    q.r_max = cfg.radial_r_max;
    q.nodes = cfg.radial_nodes;
    q.k_min = cfg.radial_k_min;
    q.k_max = cfg.radial_k_max;
    q.k_nodes = cfg.radial_k_nodes;
    q.transform_nodes = cfg.radial_transform_nodes;

    Rng rng = Rng::for_purpose(cfg.seed, "herbst");
    const HerbstReport rep = herbst_check(cfg.ineq_samples, rng, q, cfg.ineq_tol);

    std::string csv = "sample,ratio\n";
    std::string dat;
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
        csv += std::to_string(i) + "," + col(rep.ratios[i]) + "\n";
        dat += std::to_string(i) + " " + col(rep.ratios[i]) + "\n";
    }
    out.files.emplace_back("ineq-herbst.csv", std::move(csv));
    out.files.emplace_back("ineq-herbst.dat", std::move(dat));

    const double limit = rep.critical * kHerbstSlack;
    out.summary = {{"samples", rep.samples},
                   {"rejected", rep.rejected},
                   {"max_ratio", rep.max_ratio},
                   {"critical", rep.critical},
                   {"limit", limit},
                   {"quadrature", quadrature_json(q)}};

    if (rep.max_ratio > limit)
        out.invariant_failure = "ineq-herbst: max ratio " + col(rep.max_ratio) +
                                " exceeds (pi/2) * " + col(kHerbstSlack);
    return out;
}

RunOutput cmd_ineq_mixed(const RunConfig& cfg) {
    RunOutput out;
    MixedPowerOptions opts;
    opts.grid_n = cfg.ineq_grid_n;
    opts.box_L = cfg.ineq_box_L;
    opts.max_rank = cfg.ineq_max_rank;
    opts.tol = cfg.ineq_tol;

    Rng rng = Rng::for_purpose(cfg.seed, "mixed-power");
    const MixedPowerReport rep =
        mixed_power_check(cfg.ineq_a, cfg.ineq_alpha, cfg.ineq_beta, cfg.ineq_samples, rng, opts);

    std::string csv = "sample,ratio\n";
    std::string dat;
    for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
        csv += std::to_string(i) + "," + col(rep.ratios[i]) + "\n";
        dat += std::to_string(i) + " " + col(rep.ratios[i]) + "\n";
    }
    out.files.emplace_back("ineq-mixed.csv", std::move(csv));
    out.files.emplace_back("ineq-mixed.dat", std::move(dat));

    out.summary = {{"a", rep.a},
                   {"alpha", rep.alpha},
                   {"beta", rep.beta},
                   {"samples", rep.samples},
                   {"rejected", rep.rejected},
                   {"max_ratio", rep.max_ratio},
                   {"grid_n", cfg.ineq_grid_n},
                   {"box_L", cfg.ineq_box_L}};

    // At a = alpha = beta = 1 the mixed bound reduces to the sharp pi/2 case.
    const bool coulomb_case = std::abs(cfg.ineq_a - 1.0) < 1e-12 &&
                              std::abs(cfg.ineq_alpha - 1.0) < 1e-12 &&
                              std::abs(cfg.ineq_beta - 1.0) < 1e-12;
    if (coulomb_case) {
        const double limit = 0.5 * kPi * kHerbstSlack;
        out.summary["limit"] = limit;
        if (rep.max_ratio > limit)
            out.invariant_failure = "ineq-mixed: max ratio " + col(rep.max_ratio) +
                                    " exceeds (pi/2) * " + col(kHerbstSlack) + " at a = 1";
    }
    return out;
}

} // namespace

void run_command(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutput out;
    switch (cfg.command) {
        case Command::Evolve: out = cmd_evolve(cfg); break;
        case Command::GroundState: out = cmd_ground_state(cfg); break;
        case Command::CollapseScan: out = cmd_collapse_scan(cfg); break;
        case Command::LambdaCrit: out = cmd_lambda_crit(cfg); break;
        case Command::NbodyCompare: out = cmd_nbody_compare(cfg); break;
        case Command::BbgkyResidual: out = cmd_bbgky(cfg); break;
        case Command::CutoffEpsilon: out = cmd_cutoff_epsilon(cfg); break;
        case Command::CutoffKappa: out = cmd_cutoff_kappa(cfg); break;
        case Command::Apriori: out = cmd_apriori(cfg); break;
        case Command::IneqHerbst: out = cmd_ineq_herbst(cfg); break;
        case Command::IneqMixed: out = cmd_ineq_mixed(cfg); break;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out.files.emplace_back("summary.json", out.summary.dump(2) + "\n");

    json manifest;
    manifest["command"] = to_string(cfg.command);
    manifest["config"] = cfg.resolved;
    manifest["versions"] = json{
        {"bosonstar", "0.1.0"},
        {"fftw", std::string(fftw_version)},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                      "." + std::to_string(EIGEN_MINOR_VERSION)}};
    manifest["wall_time_s"] = wall;
    json names = json::array(), sums = json::object();
    for (const auto& [name, bytes] : out.files) {
        names.push_back(name);
        sums[name] = fnv1a_hex(bytes);
    }
    manifest["outputs"] = names;
    manifest["checksums"] = sums;

    const std::filesystem::path dir(cfg.out_dir);
    atomic_write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    for (const auto& [name, bytes] : out.files) atomic_write_file(dir / name, bytes);

    if (!out.invariant_failure.empty()) throw invariant_violation(out.invariant_failure);
}

} // namespace bosonstar
