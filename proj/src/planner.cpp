#include "drnet/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drnet/parallel.hpp"

namespace drnet::planner {

namespace {

bool strictly_ascending(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) ==
           v.end();
}

}  // namespace

void SweepGrid::validate(const netsim::ScenarioConfig& cfg) const {
    if (rho_values.empty() || !strictly_ascending(rho_values)) {
        throw std::invalid_argument("sweep.rho_values must be nonempty, ascending and unique");
    }
    if (silencing_radii.empty() || !strictly_ascending(silencing_radii)) {
        throw std::invalid_argument("sweep.silencing_radii_m must be nonempty, ascending and unique");
    }
    for (double rho : rho_values) {
        if (!(rho >= 0.0 && rho <= 1.0)) {
            throw std::invalid_argument("sweep.rho_values entries must lie in [0, 1]");
        }
    }
    for (double r : silencing_radii) {
        if (!(r > cfg.active_ring_outer()) || !(r <= cfg.sim_radius)) {
            throw std::invalid_argument(
                "sweep.silencing_radii_m entries must exceed disaster_radius_m + "
                "active_ring_width_m and not exceed sim_radius_m");
        }
    }
}

void TradeoffWeights::validate() const {
    if (!(w_disaster >= 0.0) || !(w_silencing_area >= 0.0) ||
        !(w_disaster + w_silencing_area > 0.0)) {
        throw std::invalid_argument("sweep.weights must be >= 0 with a positive sum");
    }
}

double utility(double p_disaster, double p_silencing_area, const TradeoffWeights& w) {
    return w.w_disaster * p_disaster + w.w_silencing_area * p_silencing_area;
}

std::vector<SweepRow> sweep(const netsim::ScenarioConfig& cfg, const SweepGrid& grid,
                            const TradeoffWeights& weights, unsigned workers) {
    cfg.validate();
    grid.validate(cfg);
    weights.validate();

    const std::size_t n_radii = grid.silencing_radii.size();
    const std::size_t n_rho = grid.rho_values.size();
    const std::size_t points = n_radii * n_rho;

    std::vector<netsim::ScenarioConfig> per_radius(n_radii, cfg);
    for (std::size_t r = 0; r < n_radii; ++r) {
        per_radius[r].silencing_radius = grid.silencing_radii[r];
    }

    struct Counts {
        std::uint64_t up_ok = 0, up_holes = 0, down_ok = 0, down_holes = 0;
    };
    std::vector<std::vector<Counts>> per_block(std::max(1u, workers), std::vector<Counts>(points));

    run_blocks(cfg.n_trials, workers, [&](std::size_t block, std::size_t begin, std::size_t end) {
        auto& counts = per_block[block];
        for (std::size_t t = begin; t < end; ++t) {
            // The station layout and both fading vectors do not depend on the
            // silencing radius, so they are drawn once and shared by every grid point.
            auto net = netsim::build_network(per_radius.front(), t);
            auto up_rng = make_rng(cfg.master_seed, t, stream::kUplinkFading);
            const auto up_fading = netsim::draw_fading(net, cfg.channel.fading, up_rng);
            auto down_rng = make_rng(cfg.master_seed, t, stream::kDownlinkFading);
            const auto down_fading = netsim::draw_fading(net, cfg.channel.fading, down_rng);

            for (std::size_t r = 0; r < n_radii; ++r) {
                netsim::assign_zones(net, per_radius[r], t);
                for (std::size_t k = 0; k < n_rho; ++k) {
                    const auto silenced = netsim::apply_policy(
                        net, netsim::SilencingPolicy::partial(grid.rho_values[k]));
                    const auto up = netsim::uplink_evaluate(silenced, per_radius[r], up_fading);
                    const auto down =
                        netsim::downlink_evaluate(silenced, per_radius[r], down_fading);
                    auto& c = counts[r * n_rho + k];
                    c.up_ok += up.success;
                    c.up_holes += up.coverage_hole;
                    c.down_ok += down.success;
                    c.down_holes += down.coverage_hole;
                }
            }
        }
    });

    std::vector<SweepRow> rows(points);
    for (std::size_t r = 0; r < n_radii; ++r) {
        for (std::size_t k = 0; k < n_rho; ++k) {
            const std::size_t i = r * n_rho + k;
            Counts total;
            for (const auto& counts : per_block) {
                total.up_ok += counts[i].up_ok;
                total.up_holes += counts[i].up_holes;
                total.down_ok += counts[i].down_ok;
                total.down_holes += counts[i].down_holes;
            }
            auto& row = rows[i];
            row.rho = grid.rho_values[k];
            row.silencing_radius = grid.silencing_radii[r];
            row.p_disaster = netsim::Estimate::from_counts(total.up_ok, total.up_holes,
                                                           cfg.n_trials, cfg.master_seed);
            row.p_silencing = netsim::Estimate::from_counts(total.down_ok, total.down_holes,
                                                            cfg.n_trials, cfg.master_seed);
            row.utility = utility(row.p_disaster.value, row.p_silencing.value, weights);
        }
    }
    return rows;
}

const SweepRow& best_row(const std::vector<SweepRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("cannot optimize over an empty sweep");
    }
    auto better = [](const SweepRow& a, const SweepRow& b) {
        if (a.utility != b.utility) return a.utility > b.utility;
        if (a.p_disaster.value != b.p_disaster.value) return a.p_disaster.value > b.p_disaster.value;
        if (a.silencing_radius != b.silencing_radius) return a.silencing_radius < b.silencing_radius;
        return a.rho < b.rho;
    };
    const SweepRow* best = &rows.front();
    for (const auto& row : rows) {
        if (better(row, *best)) {
            best = &row;
        }
    }
    return *best;
}

TradeoffChoice optimize_tradeoff(const netsim::ScenarioConfig& cfg, const SweepGrid& grid,
                                 const TradeoffWeights& weights, unsigned workers) {
    const auto rows = sweep(cfg, grid, weights, workers);
    const auto& best = best_row(rows);
    return {best.rho, best.silencing_radius, best.utility};
}

}  // namespace drnet::planner
