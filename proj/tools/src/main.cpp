#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ruincap/errors.hpp"
#include "ruincap_cli/commands.hpp"
#include "ruincap_cli/presets.hpp"

namespace {

using namespace ruincap;
using namespace ruincap::cli;

struct Flags {
    std::string config;
    Overrides o;
};

void add_common(CLI::App* cmd, Flags& f, bool model_flags) {
    cmd->add_option("--config", f.config, "JSON configuration document");
    cmd->add_option("--alpha", f.o.alpha, "risk level in (0, 0.5)");
    cmd->add_option("--t", f.o.t, "time horizon");
    cmd->add_option("--c-start", f.o.c_start, "first premium rate of the grid");
    cmd->add_option("--c-stop", f.o.c_stop, "last premium rate of the grid");
    cmd->add_option("--c-step", f.o.c_step, "grid step");
    cmd->add_option("--paths", f.o.paths, "simulated paths");
    cmd->add_option("--seed", f.o.seed, "simulation seed");
    cmd->add_option("--threads", f.o.threads, "worker threads (results do not depend on it)");
    cmd->add_option("--out", f.o.out, "output file (directory for reproduce)");
    if (model_flags) {
        cmd->add_option("--method", f.o.methods, "comma list: exact, ig, ig_integral, clt, cramer, mc, bounds");
        cmd->add_option("--t-law", f.o.t_law, "inter-arrival law, e.g. exponential:rate=1");
        cmd->add_option("--y-law", f.o.y_law, "claim law, e.g. pareto:a=4,b=0.35");
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
    apply(cfg, f.o);
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"Solvency capital and finite-horizon ruin probabilities for renewal risk models"};
    app.set_version_flag("--version", std::string("ruincap ") + RUINCAP_VERSION);
    app.require_subcommand(1);

    Flags constants_f, capital_f, ruin_f, repro_f;
    std::string preset;

    auto* constants = app.add_subcommand("constants", "moment constants and hypothesis checks per model");
    add_common(constants, constants_f, true);

    auto* capital = app.add_subcommand("capital", "capital curves over a premium-rate grid");
    add_common(capital, capital_f, true);
    capital->add_option("--kind", capital_f.o.kinds, "comma list: var, nonruin, ultimate");

    auto* ruin = app.add_subcommand("ruinprob", "ruin probabilities at a fixed capital over a premium-rate grid");
    add_common(ruin, ruin_f, true);
    ruin->add_option("--u", ruin_f.o.u, "initial capital");

    auto* repro = app.add_subcommand("reproduce", "regenerate a figure or table preset with a verification sidecar");
    add_common(repro, repro_f, false);
    repro->add_option("id", preset, "fig1..fig10, fig6b, fig6c, table1")->required();
    repro->add_option("--u", repro_f.o.u, "initial capital (ruin probability presets)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    if (constants->parsed()) return cmd_constants(resolve(constants_f), std::cout);
    if (capital->parsed()) return cmd_capital(resolve(capital_f), std::cout);
    if (ruin->parsed()) return cmd_ruinprob(resolve(ruin_f), std::cout);

    Overrides o;
    if (!repro_f.config.empty()) {
        std::ifstream in(repro_f.config);
        if (!in) throw UsageError("config: cannot read " + repro_f.config);
        std::ostringstream ss;
        ss << in.rdbuf();
        o = overrides_from_config(ss.str());
    }
    const Overrides& fl = repro_f.o;
    if (fl.alpha) o.alpha = fl.alpha;
    if (fl.t) o.t = fl.t;
    if (fl.u) o.u = fl.u;
    if (fl.c_start) o.c_start = fl.c_start;
    if (fl.c_stop) o.c_stop = fl.c_stop;
    if (fl.c_step) o.c_step = fl.c_step;
    if (fl.paths) o.paths = fl.paths;
    if (fl.seed) o.seed = fl.seed;
    if (fl.threads) o.threads = fl.threads;
    if (fl.out) o.out = fl.out;
    return cmd_reproduce(preset, o, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ModelIncompatible& e) {
        std::cerr << "model incompatibility: " << e.what() << '\n';
        return exit_incompatible;
    } catch (const NumericalFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}
