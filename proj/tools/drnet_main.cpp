#include <CLI11.hpp>

#include <iostream>

#include "drnet/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Post-disaster network resilience simulator"};
    app.set_version_flag("--version", drnet::run::kVersion);
    app.require_subcommand(1);

    drnet::run::RunSpec spec;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;

    for (const char* name : {"silencing-run", "silencing-sweep", "satwet-curve", "acb-run"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--scenario", spec.scenario_path, "Scenario file (YAML)")->required();
        sub->add_option("--out", spec.output_path, "Output CSV path")->required();
        sub->add_option("--seed", seed, "Override the master seed");
        sub->add_option("--trials", trials, "Override the Monte Carlo trial count");
        sub->add_option("--workers", spec.workers, "Worker threads (does not change results)")
            ->check(CLI::Range(1u, 1024u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : drnet::run::kInputError;
    }

    auto* chosen = app.get_subcommands().front();
    spec.subcommand = chosen->get_name();
    if (chosen->count("--seed") > 0) spec.seed_override = seed;
    if (chosen->count("--trials") > 0) spec.trials_override = trials;
    return drnet::run::run_scenario(spec, std::cerr);
}
