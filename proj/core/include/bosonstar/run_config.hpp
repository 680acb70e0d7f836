#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bosonstar {

enum class Command {
    Evolve,
    GroundState,
    CollapseScan,
    LambdaCrit,
    NbodyCompare,
    BbgkyResidual,
    CutoffEpsilon,
    CutoffKappa,
    Apriori,
    IneqHerbst,
    IneqMixed,
};

const char* to_string(Command cmd);
Command command_from_name(const std::string& name); // config_error on unknown

// Fully resolved run parameters. Each command owns a fixed set of sections;
// keys outside that set are rejected with their dotted path. `resolved` is
// the merged JSON tree (defaults overlaid with the user file and overrides):
// re-parsing it reproduces the same configuration byte for byte.
struct RunConfig {
    Command command = Command::Evolve;

    int grid_n = 32;
    double grid_L = 16.0;

    double initial_sigma = 1.0;

    double lambda = -1.0;
    std::string kernel = "exact"; // or "regularized"
    double epsilon = 0.5;         // regularization length for grid kernels
    double kappa = 1.0;           // mode-smoothing strength
    int particles = 4;

    double dt = 1e-3;
    double T = 1.0;
    int sample_every = 10;

    double flow_tau = 0.1;
    double flow_tol = 1e-9;
    long flow_max_iter = 50000;

    int ascent_iters = 400;
    int restarts = 5;
    double initial_step = 0.5;
    double mode_cap_frac = 0.0;

    std::vector<double> scan_lambdas;
    double mu_min = 1.0;
    double mu_max = 2.0;
    int mu_count = 9;

    int fock_radius = 1;
    double fock_box_L = 6.283185307179586;
    std::string fock_init = "gaussian"; // or "zero-mode"
    std::vector<int> particles_list;
    double fock_time = 1.0;
    double fock_hartree_dt = 1e-3;
    double krylov_dt = 0.05;

    double bbgky_dt = 1e-3;
    double bbgky_time = 0.2;
    double bbgky_hartree_dt = 1e-4;

    std::vector<double> cutoff_epsilons;
    std::vector<double> cutoff_kappas;
    std::vector<double> cutoff_particle_numbers;
    int cutoff_fields = 100;
    double cutoff_time = 1.0;
    double cutoff_k0 = 3.0;

    double apriori_time = 1.0;
    int apriori_samples = 21;

    int ineq_samples = 1000;
    double ineq_a = 1.0;
    double ineq_alpha = 1.0;
    double ineq_beta = 1.0;
    int ineq_grid_n = 16;
    double ineq_box_L = 12.0;
    int ineq_max_rank = 3;
    double ineq_tol = 1e-6;

    double radial_r_min = 1e-4;
    double radial_r_max = 40.0;
    int radial_nodes = 400;
    double radial_k_min = 1e-4;
    double radial_k_max = 40.0;
    int radial_k_nodes = 400;
    int radial_transform_nodes = 1024;

    std::string out_dir;
    bool write_fields = false;
    std::uint64_t seed = 12345;
    bool allow_supercritical = false;

    nlohmann::json resolved;
};

// Default tree for a command (what an empty user config resolves to).
nlohmann::json default_config(Command cmd);

// Merge `user` over the defaults, validate, and extract. Throws config_error
// with the offending dotted key path on unknown keys, type mismatches and
// out-of-range values, including lambda at or below the critical coupling
// -4/pi without the supercritical override.
RunConfig parse_run_config(Command cmd, const nlohmann::json& user);

// File + command line entry point: reads `config_path` when non-empty,
// applies "key.path=value" overrides in order, then the dedicated flags.
RunConfig load_run_config(Command cmd, const std::string& config_path,
                          const std::vector<std::string>& overrides,
                          std::optional<std::uint64_t> seed_override,
                          std::optional<std::string> out_override, bool allow_supercritical_flag);

// Apply one "key.path=value" assignment to a user tree. The value is parsed
// as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& user, const std::string& assignment);

} // namespace bosonstar
