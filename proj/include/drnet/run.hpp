#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "drnet/csv.hpp"
#include "drnet/scenario.hpp"

namespace drnet::run {

inline constexpr const char* kVersion = "drnet 0.1.0";

enum ExitCode : int { kOk = 0, kInputError = 2, kIoError = 3 };

struct RunSpec {
    std::string subcommand;  ///< silencing-run | silencing-sweep | satwet-curve | acb-run
    std::filesystem::path scenario_path;
    std::filesystem::path output_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> trials_override;
    unsigned workers = 1;  ///< never affects any output byte
};

/// Manifest written next to the CSV.
std::filesystem::path manifest_path(const std::filesystem::path& output_path);

/// Result tables, computed without touching the filesystem. Throws
/// scenario::ScenarioError for input problems.
csv::Table silencing_run_table(const scenario::Scenario& sc, unsigned workers);
csv::Table silencing_sweep_table(const scenario::Scenario& sc, unsigned workers,
                                 std::string* optimum_note = nullptr);
csv::Table satwet_curve_table(const scenario::Scenario& sc);
csv::Table acb_run_table(const scenario::Scenario& sc);

/// Loads, validates, computes, then writes the CSV and manifest. Diagnostics go
/// to `log`. Returns an ExitCode; no output file is created on input errors.
int run_scenario(const RunSpec& spec, std::ostream& log);

}  // namespace drnet::run
