#include "bosonstar/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bosonstar/errors.hpp"

namespace bosonstar {

namespace {

using nlohmann::json;

constexpr double kLambdaCrit = -1.2732395447351628; // -4/pi
constexpr double kTwoPi = 6.283185307179586;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw config_error("config: " + path + ": " + msg);
}

std::string type_name(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "boolean";
    if (v.is_number_float()) return "number";
    if (v.is_number()) return "integer";
    return "null";
}

// Overlay `user` onto `base`, enforcing that every user key exists in the
// defaults (same layout) and that scalar/array types agree.
void merge_tree(json& base, const json& user, const std::string& prefix) {
    if (!user.is_object()) fail(prefix.empty() ? "(root)" : prefix, "expected an object");
    for (const auto& item : user.items()) {
        const std::string path = prefix.empty() ? item.key() : prefix + "." + item.key();
        if (!base.contains(item.key())) fail(path, "unknown configuration key");
        json& slot = base[item.key()];
        const json& val = item.value();
        if (slot.is_object()) {
            merge_tree(slot, val, path);
        } else if (slot.is_array()) {
            if (!val.is_array()) fail(path, "expected an array, got " + type_name(val));
            const bool want_int = !slot.empty() && slot.front().is_number_integer();
            for (std::size_t i = 0; i < val.size(); ++i) {
                if (want_int ? !val[i].is_number_integer() : !val[i].is_number())
                    fail(path + "[" + std::to_string(i) + "]",
                         std::string("expected ") + (want_int ? "an integer" : "a number"));
            }
            slot = val;
        } else if (slot.is_string()) {
            if (!val.is_string()) fail(path, "expected a string, got " + type_name(val));
            slot = val;
        } else if (slot.is_boolean()) {
            if (!val.is_boolean()) fail(path, "expected a boolean, got " + type_name(val));
            slot = val;
        } else if (slot.is_number_float()) {
            if (!val.is_number()) fail(path, "expected a number, got " + type_name(val));
            slot = val;
        } else if (slot.is_number()) {
            if (!val.is_number_integer()) fail(path, "expected an integer, got " + type_name(val));
            if (slot.is_number_unsigned() && val.get<long long>() < 0) fail(path, "must be >= 0");
            slot = val;
        } else {
            fail(path, "unsupported default type");
        }
    }
}

bool near_multiple(double whole, double part, long min_steps, long* steps_out = nullptr) {
    if (!(part > 0.0) || !(whole > 0.0)) return false;
    const long steps = std::lround(whole / part);
    if (steps < min_steps) return false;
    if (std::abs(static_cast<double>(steps) * part - whole) > 1e-9 * std::max(1.0, whole))
        return false;
    if (steps_out) *steps_out = steps;
    return true;
}

void require_grid(const json& g, const std::string& sec) {
    const int n = g.at("n").get<int>();
    if (n < 4 || n % 2 != 0) fail(sec + ".n", "must be an even integer >= 4");
    if (!(g.at("L").get<double>() > 0.0)) fail(sec + ".L", "must be positive");
}

} // namespace

const char* to_string(Command cmd) {
    switch (cmd) {
        case Command::Evolve: return "evolve";
        case Command::GroundState: return "ground-state";
        case Command::CollapseScan: return "collapse-scan";
        case Command::LambdaCrit: return "lambda-crit";
        case Command::NbodyCompare: return "nbody-compare";
        case Command::BbgkyResidual: return "bbgky-residual";
        case Command::CutoffEpsilon: return "cutoff-epsilon";
        case Command::CutoffKappa: return "cutoff-kappa";
        case Command::Apriori: return "apriori";
        case Command::IneqHerbst: return "ineq-herbst";
        default: return "ineq-mixed";
    }
}

Command command_from_name(const std::string& name) {
    static const std::pair<const char*, Command> table[] = {
        {"evolve", Command::Evolve},
        {"ground-state", Command::GroundState},
        {"collapse-scan", Command::CollapseScan},
        {"lambda-crit", Command::LambdaCrit},
        {"nbody-compare", Command::NbodyCompare},
        {"bbgky-residual", Command::BbgkyResidual},
        {"cutoff-epsilon", Command::CutoffEpsilon},
        {"cutoff-kappa", Command::CutoffKappa},
        {"apriori", Command::Apriori},
        {"ineq-herbst", Command::IneqHerbst},
        {"ineq-mixed", Command::IneqMixed},
    };
    for (const auto& [n, c] : table)
        if (name == n) return c;
    throw config_error("config: unknown command '" + name + "'");
}

nlohmann::json default_config(Command cmd) {
    json j;
    j["command"] = to_string(cmd);
    j["seed"] = std::uint64_t{12345};
    j["allow_supercritical"] = (cmd == Command::CollapseScan);
    j["output"] = {{"directory", std::string("runs/") + to_string(cmd)}, {"write_fields", false}};

    switch (cmd) {
        case Command::Evolve:
            j["grid"] = {{"n", 32}, {"L", 16.0}};
            j["initial"] = {{"sigma", 1.0}};
            j["physics"] = {{"lambda", -1.0}, {"kernel", "exact"}, {"epsilon", 0.5}};
            j["integrator"] = {{"dt", 1e-3}, {"T", 1.0}, {"sample_every", 10}};
            break;
        case Command::GroundState:
            j["grid"] = {{"n", 32}, {"L", 16.0}};
            j["initial"] = {{"sigma", 1.0}};
            j["physics"] = {{"lambda", -1.0}, {"kernel", "exact"}, {"epsilon", 0.5}};
            j["flow"] = {{"tau", 0.1}, {"tol", 1e-9}, {"max_iter", 50000}};
            break;
        case Command::CollapseScan:
            j["grid"] = {{"n", 48}, {"L", 16.0}};
            j["scan"] = {{"lambdas", json::array({-1.0, -1.2, -1.4, -1.6})},
                         {"mu_min", 1.0},
                         {"mu_max", 2.0},
                         {"mu_count", 9}};
            j["crit"] = {{"ascent_iters", 300},
                         {"restarts", 3},
                         {"initial_step", 0.5},
                         {"mode_cap_frac", 0.5}};
            break;
        case Command::LambdaCrit:
            j["grid"] = {{"n", 64}, {"L", 16.0}};
            j["crit"] = {{"ascent_iters", 400},
                         {"restarts", 5},
                         {"initial_step", 0.5},
                         {"mode_cap_frac", 0.0}};
            break;
        case Command::NbodyCompare:
            j["physics"] = {{"lambda", -1.0}};
            j["fock"] = {{"radius", 1},
                         {"box_L", kTwoPi},
                         {"init", "zero-mode"},
                         {"particles_list", json::array({2, 4, 8, 16})},
                         {"time", 1.0},
                         {"hartree_dt", 1e-3},
                         {"krylov_dt", 0.05}};
            break;
        case Command::BbgkyResidual:
            j["physics"] = {{"lambda", -1.0}, {"particles", 4}};
            j["fock"] = {{"radius", 1}, {"box_L", kTwoPi}, {"init", "gaussian"}, {"krylov_dt", 0.05}};
            j["bbgky"] = {{"dt", 1e-3}, {"time", 0.2}, {"hartree_dt", 1e-4}};
            break;
        case Command::CutoffEpsilon:
            j["physics"] = {{"lambda", -1.0}, {"particles", 4}};
            j["fock"] = {{"radius", 1}, {"box_L", kTwoPi}, {"init", "gaussian"}, {"krylov_dt", 0.05}};
            j["cutoff"] = {{"epsilons", json::array({0.5, 0.25, 0.125, 0.0625})}, {"time", 1.0}};
            break;
        case Command::CutoffKappa:
            j["grid"] = {{"n", 32}, {"L", 16.0}};
            j["cutoff"] = {{"kappas", json::array({0.1, 1.0, 10.0})},
                           {"particle_numbers", json::array({1.0, 10.0, 100.0})},
                           {"fields", 100},
                           {"k0", 3.0}};
            break;
        case Command::Apriori:
            j["physics"] = {{"lambda", -1.0}, {"particles", 8}, {"kappa", 1.0}};
            j["fock"] = {{"radius", 1}, {"box_L", kTwoPi}, {"init", "gaussian"}, {"krylov_dt", 0.05}};
            j["apriori"] = {{"time", 1.0}, {"samples", 21}};
            break;
        case Command::IneqHerbst:
            j["ineq"] = {{"samples", 1000}, {"tol", 1e-6}};
            j["radial"] = {{"r_min", 1e-4},
                           {"r_max", 40.0},
                           {"nodes", 400},
                           {"k_min", 1e-4},
                           {"k_max", 40.0},
                           {"k_nodes", 400},
                           {"transform_nodes", 1024}};
            break;
        case Command::IneqMixed:
            j["ineq"] = {{"samples", 200}, {"a", 1.0},        {"alpha", 1.0},  {"beta", 1.0},
                         {"grid_n", 16},   {"box_L", 12.0},   {"max_rank", 3}, {"tol", 1e-6}};
            break;
    }
    return j;
}

RunConfig parse_run_config(Command cmd, const nlohmann::json& user) {
    json merged = default_config(cmd);
    merge_tree(merged, user, "");
    if (merged.at("command").get<std::string>() != to_string(cmd))
        fail("command", "config file names '" + merged.at("command").get<std::string>() +
                            "' but the " + std::string(to_string(cmd)) + " command was invoked");

    RunConfig cfg;
    cfg.command = cmd;
    cfg.resolved = merged;
    cfg.seed = merged.at("seed").get<std::uint64_t>();
    cfg.allow_supercritical = merged.at("allow_supercritical").get<bool>();
    cfg.out_dir = merged.at("output").at("directory").get<std::string>();
    cfg.write_fields = merged.at("output").at("write_fields").get<bool>();
    if (cfg.out_dir.empty()) fail("output.directory", "must not be empty");

    if (merged.contains("grid")) {
        require_grid(merged["grid"], "grid");
        cfg.grid_n = merged["grid"]["n"].get<int>();
        cfg.grid_L = merged["grid"]["L"].get<double>();
    }
    if (merged.contains("initial")) {
        cfg.initial_sigma = merged["initial"]["sigma"].get<double>();
        if (!(cfg.initial_sigma > 0.0)) fail("initial.sigma", "must be positive");
    }
    if (merged.contains("physics")) {
        const json& p = merged["physics"];
        cfg.lambda = p.at("lambda").get<double>();
        if (!std::isfinite(cfg.lambda)) fail("physics.lambda", "must be finite");
        if (p.contains("kernel")) {
            cfg.kernel = p["kernel"].get<std::string>();
            if (cfg.kernel != "exact" && cfg.kernel != "regularized")
                fail("physics.kernel", "must be 'exact' or 'regularized'");
            cfg.epsilon = p.at("epsilon").get<double>();
            if (!(cfg.epsilon > 0.0)) fail("physics.epsilon", "must be positive");
        }
        if (p.contains("particles")) {
            cfg.particles = p["particles"].get<int>();
            const int min_n = cmd == Command::BbgkyResidual ? 2 : 1;
            if (cfg.particles < min_n)
                fail("physics.particles", "must be >= " + std::to_string(min_n));
        }
        if (p.contains("kappa")) {
            cfg.kappa = p["kappa"].get<double>();
            if (cfg.kappa < 0.0) fail("physics.kappa", "must be >= 0");
        }
    }
    if (merged.contains("integrator")) {
        const json& it = merged["integrator"];
        cfg.dt = it.at("dt").get<double>();
        cfg.T = it.at("T").get<double>();
        cfg.sample_every = it.at("sample_every").get<int>();
        if (!(cfg.dt > 0.0)) fail("integrator.dt", "must be positive");
        if (!near_multiple(cfg.T, cfg.dt, 1))
            fail("integrator.T", "must be a positive multiple of integrator.dt");
        if (cfg.sample_every < 1) fail("integrator.sample_every", "must be >= 1");
    }
    if (merged.contains("flow")) {
        const json& f = merged["flow"];
        cfg.flow_tau = f.at("tau").get<double>();
        cfg.flow_tol = f.at("tol").get<double>();
        cfg.flow_max_iter = f.at("max_iter").get<long>();
        if (!(cfg.flow_tau > 0.0)) fail("flow.tau", "must be positive");
        if (!(cfg.flow_tol > 0.0)) fail("flow.tol", "must be positive");
        if (cfg.flow_max_iter < 1) fail("flow.max_iter", "must be >= 1");
    }
    if (merged.contains("crit")) {
        const json& c = merged["crit"];
        cfg.ascent_iters = c.at("ascent_iters").get<int>();
        cfg.restarts = c.at("restarts").get<int>();
        cfg.initial_step = c.at("initial_step").get<double>();
        cfg.mode_cap_frac = c.at("mode_cap_frac").get<double>();
        if (cfg.ascent_iters < 1) fail("crit.ascent_iters", "must be >= 1");
        if (cfg.restarts < 1) fail("crit.restarts", "must be >= 1");
        if (!(cfg.initial_step > 0.0)) fail("crit.initial_step", "must be positive");
        if (cfg.mode_cap_frac < 0.0 || cfg.mode_cap_frac > 1.0)
            fail("crit.mode_cap_frac", "must lie in [0, 1]");
    }
    if (merged.contains("scan")) {
        const json& s = merged["scan"];
        cfg.scan_lambdas = s.at("lambdas").get<std::vector<double>>();
        cfg.mu_min = s.at("mu_min").get<double>();
        cfg.mu_max = s.at("mu_max").get<double>();
        cfg.mu_count = s.at("mu_count").get<int>();
        if (cfg.scan_lambdas.empty()) fail("scan.lambdas", "must not be empty");
        for (double l : cfg.scan_lambdas)
            if (std::abs(l - kLambdaCrit) < 1e-9)
                fail("scan.lambdas", "contains the critical coupling -4/pi, where the scaling "
                                     "verdict is undefined");
        if (!(cfg.mu_min > 0.0) || !(cfg.mu_max > cfg.mu_min))
            fail("scan.mu_min", "need 0 < mu_min < mu_max");
        if (cfg.mu_count < 4) fail("scan.mu_count", "must be >= 4");
    }
    if (merged.contains("fock")) {
        const json& f = merged["fock"];
        cfg.fock_radius = f.at("radius").get<int>();
        cfg.fock_box_L = f.at("box_L").get<double>();
        cfg.fock_init = f.at("init").get<std::string>();
        if (cfg.fock_radius < 0) fail("fock.radius", "must be >= 0");
        if (!(cfg.fock_box_L > 0.0)) fail("fock.box_L", "must be positive");
        if (cfg.fock_init != "gaussian" && cfg.fock_init != "zero-mode")
            fail("fock.init", "must be 'gaussian' or 'zero-mode'");
        cfg.krylov_dt = f.at("krylov_dt").get<double>();
        if (!(cfg.krylov_dt > 0.0)) fail("fock.krylov_dt", "must be positive");
        if (f.contains("particles_list")) {
            cfg.particles_list = f["particles_list"].get<std::vector<int>>();
            if (cfg.particles_list.size() < 2)
                fail("fock.particles_list", "need at least 2 particle numbers");
            for (std::size_t i = 0; i < cfg.particles_list.size(); ++i) {
                if (cfg.particles_list[i] < 1)
                    fail("fock.particles_list", "entries must be >= 1");
                if (i > 0 && cfg.particles_list[i] <= cfg.particles_list[i - 1])
                    fail("fock.particles_list", "entries must increase strictly");
            }
        }
        if (f.contains("time")) {
            cfg.fock_time = f["time"].get<double>();
            if (!(cfg.fock_time > 0.0)) fail("fock.time", "must be positive");
        }
        if (f.contains("hartree_dt")) {
            cfg.fock_hartree_dt = f["hartree_dt"].get<double>();
            if (!(cfg.fock_hartree_dt > 0.0)) fail("fock.hartree_dt", "must be positive");
        }
    }
    if (merged.contains("bbgky")) {
        const json& b = merged["bbgky"];
        cfg.bbgky_dt = b.at("dt").get<double>();
        cfg.bbgky_time = b.at("time").get<double>();
        cfg.bbgky_hartree_dt = b.at("hartree_dt").get<double>();
        if (!(cfg.bbgky_dt > 0.0)) fail("bbgky.dt", "must be positive");
        if (!near_multiple(cfg.bbgky_time, cfg.bbgky_dt, 2))
            fail("bbgky.time", "must be a multiple of bbgky.dt covering at least 2 steps");
        if (!(cfg.bbgky_hartree_dt > 0.0)) fail("bbgky.hartree_dt", "must be positive");
    }
    if (merged.contains("cutoff")) {
        const json& c = merged["cutoff"];
        if (c.contains("epsilons")) {
            cfg.cutoff_epsilons = c["epsilons"].get<std::vector<double>>();
            if (cfg.cutoff_epsilons.size() < 2)
                fail("cutoff.epsilons", "need at least 2 values");
            for (std::size_t i = 0; i < cfg.cutoff_epsilons.size(); ++i) {
                if (!(cfg.cutoff_epsilons[i] > 0.0))
                    fail("cutoff.epsilons", "entries must be positive");
                if (i > 0 && cfg.cutoff_epsilons[i] >= cfg.cutoff_epsilons[i - 1])
                    fail("cutoff.epsilons", "entries must decrease strictly");
            }
            cfg.cutoff_time = c.at("time").get<double>();
            if (!(cfg.cutoff_time > 0.0)) fail("cutoff.time", "must be positive");
        }
        if (c.contains("kappas")) {
            cfg.cutoff_kappas = c["kappas"].get<std::vector<double>>();
            cfg.cutoff_particle_numbers = c["particle_numbers"].get<std::vector<double>>();
            cfg.cutoff_fields = c.at("fields").get<int>();
            cfg.cutoff_k0 = c.at("k0").get<double>();
            if (cfg.cutoff_kappas.empty()) fail("cutoff.kappas", "must not be empty");
            for (double k : cfg.cutoff_kappas)
                if (!(k > 0.0)) fail("cutoff.kappas", "entries must be positive");
            if (cfg.cutoff_particle_numbers.empty())
                fail("cutoff.particle_numbers", "must not be empty");
            for (double n : cfg.cutoff_particle_numbers)
                if (!(n > 0.0)) fail("cutoff.particle_numbers", "entries must be positive");
            if (cfg.cutoff_fields < 1) fail("cutoff.fields", "must be >= 1");
            if (!(cfg.cutoff_k0 > 0.0)) fail("cutoff.k0", "must be positive");
        }
    }
    if (merged.contains("apriori")) {
        const json& a = merged["apriori"];
        cfg.apriori_time = a.at("time").get<double>();
        cfg.apriori_samples = a.at("samples").get<int>();
        if (!(cfg.apriori_time > 0.0)) fail("apriori.time", "must be positive");
        if (cfg.apriori_samples < 2) fail("apriori.samples", "must be >= 2");
    }
    if (merged.contains("ineq")) {
        const json& q = merged["ineq"];
        cfg.ineq_samples = q.at("samples").get<int>();
        cfg.ineq_tol = q.at("tol").get<double>();
        if (cfg.ineq_samples < 1) fail("ineq.samples", "must be >= 1");
        if (!(cfg.ineq_tol > 0.0)) fail("ineq.tol", "must be positive");
        if (q.contains("a")) {
            cfg.ineq_a = q["a"].get<double>();
            cfg.ineq_alpha = q["alpha"].get<double>();
            cfg.ineq_beta = q["beta"].get<double>();
            cfg.ineq_grid_n = q["grid_n"].get<int>();
            cfg.ineq_box_L = q["box_L"].get<double>();
            cfg.ineq_max_rank = q["max_rank"].get<int>();
            if (!(cfg.ineq_a > 0.0) || !(cfg.ineq_a < 3.0))
                fail("ineq.a", "must lie in (0, 3)");
            if (!(cfg.ineq_alpha > 0.0)) fail("ineq.alpha", "must be positive");
            if (!(cfg.ineq_beta > 0.0)) fail("ineq.beta", "must be positive");
            if (std::abs(cfg.ineq_alpha + cfg.ineq_beta - 2.0 * cfg.ineq_a) > 1e-9)
                fail("ineq.beta", "alpha + beta must equal 2a");
            if (cfg.ineq_grid_n < 4 || cfg.ineq_grid_n % 2 != 0)
                fail("ineq.grid_n", "must be an even integer >= 4");
            if (!(cfg.ineq_box_L > 0.0)) fail("ineq.box_L", "must be positive");
            if (cfg.ineq_max_rank < 1) fail("ineq.max_rank", "must be >= 1");
        }
    }
    if (merged.contains("radial")) {
        const json& r = merged["radial"];
        cfg.radial_r_min = r.at("r_min").get<double>();
        cfg.radial_r_max = r.at("r_max").get<double>();
        cfg.radial_nodes = r.at("nodes").get<int>();
        cfg.radial_k_min = r.at("k_min").get<double>();
        cfg.radial_k_max = r.at("k_max").get<double>();
        cfg.radial_k_nodes = r.at("k_nodes").get<int>();
        cfg.radial_transform_nodes = r.at("transform_nodes").get<int>();
        if (!(cfg.radial_r_min > 0.0) || !(cfg.radial_r_max > cfg.radial_r_min))
            fail("radial.r_min", "need 0 < r_min < r_max");
        if (cfg.radial_nodes < 8) fail("radial.nodes", "must be >= 8");
        if (!(cfg.radial_k_min > 0.0) || !(cfg.radial_k_max > cfg.radial_k_min))
            fail("radial.k_min", "need 0 < k_min < k_max");
        if (cfg.radial_k_nodes < 8) fail("radial.k_nodes", "must be >= 8");
        if (cfg.radial_transform_nodes < 16) fail("radial.transform_nodes", "must be >= 16");
    }

    if (cmd == Command::LambdaCrit && cfg.grid_n % 4 != 0)
        fail("grid.n", "must be divisible by 4 (the threshold is re-estimated at n/2 for "
                       "extrapolation)");

    const bool lambda_guarded = cmd == Command::Evolve || cmd == Command::GroundState ||
                                cmd == Command::NbodyCompare || cmd == Command::BbgkyResidual ||
                                cmd == Command::CutoffEpsilon || cmd == Command::Apriori;
    if (lambda_guarded && !cfg.allow_supercritical && cfg.lambda <= kLambdaCrit)
        fail("physics.lambda",
             "at or below the critical coupling -4/pi = -1.2732395447351628; pass "
             "--allow-supercritical (or set allow_supercritical) to run anyway");

    return cfg;
}

void apply_override(nlohmann::json& user, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("config: --set expects key.path=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw; // unquoted strings like kernel=exact

    json* cur = &user;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (part.empty()) throw config_error("config: --set key '" + path + "' has an empty segment");
        if (dot == std::string::npos) {
            (*cur)[part] = value;
            break;
        }
        cur = &((*cur)[part]);
        start = dot + 1;
    }
}

RunConfig load_run_config(Command cmd, const std::string& config_path,
                          const std::vector<std::string>& overrides,
                          std::optional<std::uint64_t> seed_override,
                          std::optional<std::string> out_override, bool allow_supercritical_flag) {
    json user = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw config_error("config: cannot open '" + config_path + "'");
        try {
            in >> user;
        } catch (const json::exception& e) {
            throw config_error("config: parse error in '" + config_path + "': " + e.what());
        }
    }
    for (const std::string& s : overrides) apply_override(user, s);
    if (seed_override) user["seed"] = *seed_override;
    if (out_override) {
        if (!user.contains("output") || !user["output"].is_object()) user["output"] = json::object();
        user["output"]["directory"] = *out_override;
    }
    if (allow_supercritical_flag) user["allow_supercritical"] = true;
    return parse_run_config(cmd, user);
}

} // namespace bosonstar
