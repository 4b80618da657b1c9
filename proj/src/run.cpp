#include "drnet/run.hpp"

#include <sstream>

#include "drnet/planner.hpp"

namespace drnet::run {

namespace {

using csv::Cell;
using scenario::ScenarioError;

std::uint64_t acb_seed(const scenario::Scenario& sc) {
    return sc.acb->seed.value_or(sc.network.master_seed);
}

}  // namespace

std::filesystem::path manifest_path(const std::filesystem::path& output_path) {
    auto p = output_path;
    p += ".manifest";
    return p;
}

csv::Table silencing_run_table(const scenario::Scenario& sc, unsigned workers) {
    const auto& cfg = sc.network;
    csv::Table t;
    t.header = {"policy",        "rho",        "silencing_radius_m", "p_disaster",
                "p_disaster_ci", "coverage_holes", "p_silencing",    "p_silencing_ci",
                "n_trials",      "seed"};
    const auto results = netsim::estimate_policies(cfg, sc.policies, workers);
    for (std::size_t i = 0; i < sc.policies.size(); ++i) {
        const auto& p = sc.policies[i];
        const auto& r = results[i];
        t.rows.push_back({p.name(), p.rho(), cfg.silencing_radius, r.disaster_success.value,
                          r.disaster_success.ci_halfwidth, r.disaster_success.coverage_holes,
                          r.silencing_coverage.value, r.silencing_coverage.ci_halfwidth,
                          cfg.n_trials, cfg.master_seed});
    }
    return t;
}

csv::Table silencing_sweep_table(const scenario::Scenario& sc, unsigned workers,
                                 std::string* optimum_note) {
    if (!sc.sweep) {
        throw ScenarioError(sc.name + ": silencing-sweep needs a 'sweep' section");
    }
    const auto& cfg = sc.network;
    const auto rows = planner::sweep(cfg, *sc.sweep, sc.weights, workers);
    csv::Table t;
    t.header = {"rho",         "silencing_radius_m", "p_disaster", "p_disaster_ci", "p_silencing",
                "p_silencing_ci", "utility",         "n_trials",   "seed"};
    for (const auto& r : rows) {
        t.rows.push_back({r.rho, r.silencing_radius, r.p_disaster.value, r.p_disaster.ci_halfwidth,
                          r.p_silencing.value, r.p_silencing.ci_halfwidth, r.utility, cfg.n_trials,
                          cfg.master_seed});
    }
    if (optimum_note) {
        const auto& best = planner::best_row(rows);
        *optimum_note = "rho=" + csv::format_number(best.rho) +
                        " silencing_radius_m=" + csv::format_number(best.silencing_radius) +
                        " utility=" + csv::format_number(best.utility);
    }
    return t;
}

csv::Table satwet_curve_table(const scenario::Scenario& sc) {
    if (!sc.satwet) {
        throw ScenarioError(sc.name + ": satwet-curve needs a 'satwet' section");
    }
    const auto& s = *sc.satwet;
    csv::Table t;
    t.header = {"height_m", "payload_bits", "mode", "harvested_w", "charging_s"};
    for (const auto& r :
         satwet::charge_curve(s.heights, s.payloads, s.params, s.energy_per_bit, s.modes)) {
        t.rows.push_back({r.height, r.payload_bits, std::string(satwet::to_string(r.mode)),
                          r.harvested_power, r.charging_time});
    }
    return t;
}

csv::Table acb_run_table(const scenario::Scenario& sc) {
    if (!sc.acb) {
        throw ScenarioError(sc.name + ": acb-run needs an 'acb' section");
    }
    const auto& a = *sc.acb;
    const auto expected = acb::admitted_load(a.profile, a.capacity);
    auto rng = Rng{acb_seed(sc)};
    const auto sim = acb::simulate_access(a.profile, a.capacity, a.horizon, rng);
    csv::Table t;
    t.header = {"class",          "acdc_category", "arrival_rate_per_s", "barring_prob",
                "expected_admitted_per_s", "admitted_per_s", "blocking_prob", "seed"};
    for (std::size_t i = 0; i < a.profile.classes.size(); ++i) {
        const auto& c = a.profile.classes[i];
        t.rows.push_back({c.name, static_cast<std::uint64_t>(c.acdc_category), c.arrival_rate,
                          c.barring_prob, expected.admitted_rate[i], sim.metrics.admitted_rate[i],
                          sim.per_class[i].blocking_prob(), acb_seed(sc)});
    }
    return t;
}

int run_scenario(const RunSpec& spec, std::ostream& log) {
    scenario::Scenario sc;
    csv::Table table;
    std::string note;
    try {
        sc = scenario::load_scenario(spec.scenario_path);
        if (spec.seed_override) {
            sc.network.master_seed = *spec.seed_override;
            if (sc.acb) sc.acb->seed = *spec.seed_override;
        }
        if (spec.trials_override) {
            sc.network.n_trials = *spec.trials_override;
            if (sc.network.n_trials < 1) {
                throw ScenarioError("--trials must be >= 1");
            }
        }
        if (spec.subcommand == "silencing-run") {
            table = silencing_run_table(sc, spec.workers);
        } else if (spec.subcommand == "silencing-sweep") {
            table = silencing_sweep_table(sc, spec.workers, &note);
        } else if (spec.subcommand == "satwet-curve") {
            table = satwet_curve_table(sc);
        } else if (spec.subcommand == "acb-run") {
            table = acb_run_table(sc);
        } else {
            throw ScenarioError("unknown subcommand '" + spec.subcommand + "'");
        }
    } catch (const ScenarioError& e) {
        log << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        log << "error: " << spec.scenario_path.string() << ": " << e.what() << '\n';
        return kInputError;
    }

    std::ostringstream manifest;
    manifest << "version: " << kVersion << '\n'
             << "subcommand: " << spec.subcommand << '\n'
             << "scenario: " << spec.scenario_path.filename().string() << '\n'
             << "master_seed: " << sc.network.master_seed << '\n'
             << "n_trials: " << sc.network.n_trials << '\n'
             << "rows: " << table.rows.size() << '\n';
    if (!note.empty()) {
        manifest << "optimum: " << note << '\n';
    }
    manifest << "resolved_scenario: |\n";
    std::istringstream yaml(scenario::to_yaml(sc));
    for (std::string line; std::getline(yaml, line);) {
        manifest << "  " << line << '\n';
    }

    try {
        csv::write_table(spec.output_path, table);
        csv::write_file(manifest_path(spec.output_path), manifest.str());
    } catch (const csv::IoError& e) {
        log << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kOk;
}

}  // namespace drnet::run
