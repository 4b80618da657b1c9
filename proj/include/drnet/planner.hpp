#pragma once

#include <vector>

#include "drnet/netsim.hpp"

namespace drnet::planner {

struct SweepGrid {
    std::vector<double> rho_values;
    std::vector<double> silencing_radii;  ///< meters

    /// Nonempty, strictly ascending, rho in [0, 1], every radius in
    /// (disaster_radius + active_ring_width, sim_radius]. Throws std::invalid_argument.
    void validate(const netsim::ScenarioConfig& cfg) const;
};

struct TradeoffWeights {
    double w_disaster = 1.0;
    double w_silencing_area = 1.0;

    void validate() const;
};

double utility(double p_disaster, double p_silencing_area, const TradeoffWeights& w);

struct SweepRow {
    double rho = 0.0;
    double silencing_radius = 0.0;
    netsim::Estimate p_disaster;
    netsim::Estimate p_silencing;
    double utility = 0.0;
};

/// One row per grid point, radius-major then rho, all evaluated on the same
/// trials (master_seed shared), so each row equals the direct
/// estimate_success / estimate_silencing_area_coverage result for Partial(rho)
/// at that radius.
std::vector<SweepRow> sweep(const netsim::ScenarioConfig& cfg, const SweepGrid& grid,
                            const TradeoffWeights& weights, unsigned workers = 1);

/// Best row by utility; ties go to larger p_disaster, then smaller radius, then
/// smaller rho. Throws std::invalid_argument for an empty table.
const SweepRow& best_row(const std::vector<SweepRow>& rows);

struct TradeoffChoice {
    double rho = 0.0;
    double silencing_radius = 0.0;
    double utility = 0.0;
};

TradeoffChoice optimize_tradeoff(const netsim::ScenarioConfig& cfg, const SweepGrid& grid,
                                 const TradeoffWeights& weights, unsigned workers = 1);

}  // namespace drnet::planner
