#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "drnet/acb.hpp"
#include "drnet/netsim.hpp"
#include "drnet/planner.hpp"
#include "drnet/satwet.hpp"

namespace drnet::scenario {

/// Malformed or invalid scenario input. The message names the line or field.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SatWetScenario {
    satwet::SatWetParams params;
    double energy_per_bit = 4.5e-11;
    std::vector<double> heights{200e3, 400e3};
    std::vector<double> payloads{400, 1000, 1e4, 1e5, 1e6};
    std::vector<satwet::PowerMode> modes{satwet::PowerMode::Zenith};
};

struct AcbScenario {
    acb::AcdcProfile profile;
    double capacity = 1.0;  ///< requests/s
    double horizon = 3600.0;
    std::optional<std::uint64_t> seed;  ///< falls back to simulation.master_seed
};

struct Scenario {
    std::string name;
    netsim::ScenarioConfig network;
    std::vector<netsim::SilencingPolicy> policies;
    std::optional<planner::SweepGrid> sweep;
    planner::TradeoffWeights weights;
    std::optional<SatWetScenario> satwet;
    std::optional<AcbScenario> acb;
};

/// Parses and validates a YAML scenario. Unknown keys are rejected. Throws
/// ScenarioError with "<file>:<line>: ..." for syntax problems and the field
/// path for schema violations.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::string& source_name = "<string>");

/// Fully resolved scenario (defaults filled in) as YAML, reloadable by parse_scenario.
std::string to_yaml(const Scenario& scenario);

}  // namespace drnet::scenario
