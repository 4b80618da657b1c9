#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drnet/channel.hpp"
#include "drnet/geometry.hpp"
#include "drnet/rng.hpp"

namespace drnet::netsim {

using geometry::Point2D;

enum class Zone { Disaster, ActiveRing, Silencing, Outer };
enum class Band { Disaster, Alternate };

const char* to_string(Zone zone) noexcept;

struct AerialTier {
    double density = 0.0;  ///< per m^2, sampled over the disaster disk
    double altitude = 100.0;
    double tx_power = 1.0;  ///< watts
};

/// Fixed base-station placement replacing the PPP draw (hand-checked layouts).
struct HandStation {
    Point2D position;
    double altitude = 0.0;
    bool alive = true;
};

struct HandLayout {
    std::vector<HandStation> stations;
    Point2D device;
    std::optional<Point2D> silencing_user;  ///< sampled when absent
};

/// Silencing experiment. All radii are measured from the disaster center at the
/// origin; distances are meters, powers watts, densities per m^2.
struct ScenarioConfig {
    double disaster_radius = 2000.0;
    double active_ring_width = 600.0;
    double silencing_radius = 4000.0;
    double sim_radius = 20000.0;
    double bs_density = 1e-6;
    double bs_survival_prob = 0.3;
    double device_tx_power = 0.2;  ///< 23 dBm
    double bs_tx_power = 39.81;    ///< 46 dBm
    std::optional<AerialTier> aerial_tier;
    channel::ChannelParams channel;
    std::uint64_t n_trials = 10000;
    std::uint64_t master_seed = 1;
    std::optional<HandLayout> layout;

    double active_ring_outer() const noexcept { return disaster_radius + active_ring_width; }

    /// Throws std::invalid_argument whose message starts with the offending field.
    void validate() const;
};

/// Terrestrial stations are drawn ring by ring with rings of this width, each
/// ring from its own substream, so the stations inside radius R are identical
/// for every sim_radius >= R.
inline constexpr double kLayoutRingWidth = 1000.0;

class SilencingPolicy {
public:
    enum class Kind { None, Complete, Partial, SpectrumSplit };

    static SilencingPolicy none() { return {Kind::None, 1.0}; }
    static SilencingPolicy complete() { return {Kind::Complete, 0.0}; }
    /// Throws std::invalid_argument unless 0 <= rho <= 1.
    static SilencingPolicy partial(double rho);
    static SilencingPolicy spectrum_split() { return {Kind::SpectrumSplit, 1.0}; }

    /// Parses "none", "complete", "spectrum-split" or "partial:<rho>".
    static SilencingPolicy parse(const std::string& text);

    Kind kind() const noexcept { return kind_; }
    /// Power factor applied to silencing-zone stations.
    double rho() const noexcept { return rho_; }
    std::string name() const;

private:
    SilencingPolicy(Kind kind, double rho) : kind_(kind), rho_(rho) {}
    Kind kind_;
    double rho_;
};

struct BaseStation {
    Point2D position;
    Zone zone = Zone::Outer;
    double altitude = 0.0;
    double tx_power = 0.0;
    double power_factor = 1.0;
    Band band = Band::Disaster;
    bool alive = true;
    bool aerial = false;

    friend bool operator==(const BaseStation&, const BaseStation&) = default;
};

struct NetworkSnapshot {
    std::vector<BaseStation> stations;  ///< generation order: terrestrial rings, then aerial
    Point2D typical_device;
    std::optional<Point2D> silencing_user;
    Band silencing_band = Band::Disaster;  ///< band serving silencing-area users

    friend bool operator==(const NetworkSnapshot&, const NetworkSnapshot&) = default;
};

Zone classify_zone(const ScenarioConfig& cfg, double radius) noexcept;

/// One realization, fully determined by (cfg.master_seed, trial_index). No
/// silencing is applied.
NetworkSnapshot build_network(const ScenarioConfig& cfg, std::uint64_t trial_index);

/// Re-derives zones and the silencing-area user for cfg's radii, keeping the
/// station layout. Power factors and bands are reset to the unsilenced state.
void assign_zones(NetworkSnapshot& net, const ScenarioConfig& cfg, std::uint64_t trial_index);

NetworkSnapshot apply_policy(const NetworkSnapshot& net, const SilencingPolicy& policy);

struct TrialOutcome {
    bool success = false;
    bool coverage_hole = false;
    double sinr = 0.0;
};

/// Draws the per-link fading vector: entry 0 is the desired link, entry 1 + j
/// the link from station j. Always net.stations.size() + 1 draws.
std::vector<double> draw_fading(const NetworkSnapshot& net, channel::FadingModel model,
                                Rng& rng);

/// Uplink from the typical device to the nearest alive disaster-zone or
/// active-ring station (terrestrial or aerial). Interference is the downlink
/// transmission of every other alive disaster-band station with a positive
/// power factor, received at the serving station.
TrialOutcome uplink_evaluate(const NetworkSnapshot& net, const ScenarioConfig& cfg,
                             std::span<const double> fading);
TrialOutcome uplink_trial(const NetworkSnapshot& net, const ScenarioConfig& cfg, Rng& rng);

/// Downlink to the silencing-area user from the nearest alive station with a
/// positive power factor on the user's band; co-band stations interfere.
TrialOutcome downlink_evaluate(const NetworkSnapshot& net, const ScenarioConfig& cfg,
                               std::span<const double> fading);
TrialOutcome downlink_trial(const NetworkSnapshot& net, const ScenarioConfig& cfg, Rng& rng);

struct Estimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;  ///< 95 %, normal approximation
    std::uint64_t n_trials = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t coverage_holes = 0;

    static Estimate from_counts(std::uint64_t successes, std::uint64_t holes,
                                std::uint64_t n_trials, std::uint64_t master_seed);
};

Estimate estimate_success(const ScenarioConfig& cfg, const SilencingPolicy& policy,
                          unsigned workers = 1);
Estimate estimate_silencing_area_coverage(const ScenarioConfig& cfg,
                                          const SilencingPolicy& policy, unsigned workers = 1);

struct PolicyEstimates {
    Estimate disaster_success;
    Estimate silencing_coverage;
};

/// Both metrics for several policies over the same trials; each entry equals the
/// corresponding single-policy estimate exactly.
std::vector<PolicyEstimates> estimate_policies(const ScenarioConfig& cfg,
                                               std::span<const SilencingPolicy> policies,
                                               unsigned workers = 1);

}  // namespace drnet::netsim
