#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bosonstar/errors.hpp"
#include "bosonstar/run_commands.hpp"
#include "bosonstar/run_config.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::vector<std::string> sets;
    std::string seed;
    std::string out;
    bool allow_supercritical = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config, "JSON configuration file");
    sub->add_option("--set", args.sets,
                    "Override a configuration value as key.path=value (repeatable)");
    sub->add_option("--seed", args.seed, "Random seed (unsigned 64-bit)");
    sub->add_option("--out", args.out, "Output directory (overrides output.directory)");
    sub->add_flag("--allow-supercritical", args.allow_supercritical,
                  "Permit couplings at or below the critical -4/pi");
}

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw bosonstar::config_error("config: --seed expects a decimal unsigned integer, got '" +
                                      s + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno == ERANGE || end != s.c_str() + s.size())
        throw bosonstar::config_error("config: --seed value '" + s + "' is out of range");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    using bosonstar::Command;

    CLI::App app{"Relativistic Hartree dynamics, collapse thresholds and operator-bound checks"};
    app.require_subcommand(1);
    CommonArgs args;

    const char* simple[] = {"evolve",         "ground-state",   "collapse-scan",
                            "lambda-crit",    "nbody-compare",  "bbgky-residual",
                            "cutoff-epsilon", "cutoff-kappa",   "apriori"};
    const char* descriptions[] = {
        "Integrate the Hartree evolution of a Gaussian state",
        "Gradient-flow energy minimization at fixed L2 mass",
        "Scaling-family verdicts (stable/collapse) across couplings",
        "Variational estimate of the critical coupling",
        "N-body vs mean-field one-particle marginals over N",
        "Hierarchy residuals along the N-body trajectory",
        "Exact vs regularized pair potential in Fock space",
        "Smoothing-operator bound on random fields",
        "Dispersion-moment boundedness along the N-body flow"};
    for (std::size_t i = 0; i < std::size(simple); ++i)
        add_common(app.add_subcommand(simple[i], descriptions[i]), args);

    CLI::App* ineq = app.add_subcommand("ineq", "Operator inequality samplers");
    ineq->require_subcommand(1);
    add_common(ineq->add_subcommand("herbst", "Sharp relativistic uncertainty bound"), args);
    add_common(ineq->add_subcommand("mixed", "Mixed-power two-body interaction bound"), args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 1; // bad usage is a configuration error
    }

    std::string name = app.get_subcommands().front()->get_name();
    if (name == "ineq") name += "-" + ineq->get_subcommands().front()->get_name();

    try {
        const Command cmd = bosonstar::command_from_name(name);
        std::optional<std::uint64_t> seed;
        if (!args.seed.empty()) seed = parse_seed(args.seed);
        std::optional<std::string> out;
        if (!args.out.empty()) out = args.out;

        const bosonstar::RunConfig cfg = bosonstar::load_run_config(
            cmd, args.config, args.sets, seed, out, args.allow_supercritical);
        bosonstar::run_command(cfg);
        return 0;
    } catch (const bosonstar::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bosonstar::invariant_violation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}
