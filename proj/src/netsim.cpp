#include "drnet/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "drnet/parallel.hpp"

namespace drnet::netsim {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

double sq(double v) { return v * v; }

// Squared 3D distances; the hot loops never need the distance itself.
double separation2(const BaseStation& a, const BaseStation& b) {
    return sq(a.position.x - b.position.x) + sq(a.position.y - b.position.y) +
           sq(a.altitude - b.altitude);
}

double ground_distance2(Point2D p, const BaseStation& s) {
    return sq(p.x - s.position.x) + sq(p.y - s.position.y) + sq(s.altitude);
}

double radius2(Point2D p) { return sq(p.x) + sq(p.y); }

// path_gain on a squared distance, clamped at min_distance.
double gain2(double d2, const channel::ChannelParams& ch) {
    const double r2 = std::max(d2, sq(ch.min_distance));
    if (ch.path_loss_exponent == 4.0) {
        return ch.reference_gain / (r2 * r2);
    }
    return ch.reference_gain * std::pow(r2, -0.5 * ch.path_loss_exponent);
}

TrialOutcome judge(double signal, double interference, const channel::ChannelParams& ch) {
    TrialOutcome out;
    if (signal == 0.0 && interference + ch.noise_power == 0.0) {
        return out;
    }
    out.sinr = channel::compute_sinr({signal, interference, ch.noise_power});
    out.success = out.sinr >= ch.sinr_threshold;
    return out;
}

geometry::Annulus silencing_annulus(const ScenarioConfig& cfg) {
    return {{0.0, 0.0}, cfg.active_ring_outer(), cfg.silencing_radius};
}

}  // namespace

const char* to_string(Zone zone) noexcept {
    switch (zone) {
        case Zone::Disaster: return "disaster";
        case Zone::ActiveRing: return "active-ring";
        case Zone::Silencing: return "silencing";
        case Zone::Outer: return "outer";
    }
    return "?";
}

void ScenarioConfig::validate() const {
    require(std::isfinite(disaster_radius) && disaster_radius > 0.0,
            "geometry.disaster_radius_m must be > 0");
    require(std::isfinite(active_ring_width) && active_ring_width > 0.0,
            "geometry.active_ring_width_m must be > 0");
    require(std::isfinite(silencing_radius) && silencing_radius > active_ring_outer(),
            "geometry.silencing_radius_m must exceed disaster_radius_m + active_ring_width_m");
    require(std::isfinite(sim_radius) && sim_radius >= silencing_radius,
            "geometry.sim_radius_m must be >= silencing_radius_m");
    require(finite_nonneg(bs_density), "network.bs_density_per_m2 must be >= 0");
    require(bs_survival_prob >= 0.0 && bs_survival_prob <= 1.0,
            "network.bs_survival_prob must lie in [0, 1]");
    require(finite_nonneg(device_tx_power), "network.device_tx_power must be >= 0");
    require(finite_nonneg(bs_tx_power), "network.bs_tx_power must be >= 0");
    if (aerial_tier) {
        require(finite_nonneg(aerial_tier->density), "network.aerial_tier.density_per_m2 must be >= 0");
        require(std::isfinite(aerial_tier->altitude) && aerial_tier->altitude > 0.0,
                "network.aerial_tier.altitude_m must be > 0");
        require(finite_nonneg(aerial_tier->tx_power), "network.aerial_tier.tx_power must be >= 0");
    }
    channel.validate();
    require(n_trials >= 1, "simulation.n_trials must be >= 1");
    if (layout) {
        for (const auto& s : layout->stations) {
            require(std::isfinite(s.position.x) && std::isfinite(s.position.y) &&
                        finite_nonneg(s.altitude),
                    "layout.base_stations entries need finite x, y and altitude >= 0");
            require(s.alive || std::hypot(s.position.x, s.position.y) < disaster_radius,
                    "layout.base_stations: alive=false is only allowed inside the disaster disk");
        }
        require(std::hypot(layout->device.x, layout->device.y) <= disaster_radius,
                "layout.device must lie inside the disaster disk");
        if (layout->silencing_user) {
            require(silencing_annulus(*this).contains(*layout->silencing_user),
                    "layout.silencing_user must lie inside the silencing annulus");
        }
    }
}

SilencingPolicy SilencingPolicy::partial(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("silencing factor rho must lie in [0, 1]");
    }
    return {Kind::Partial, rho};
}

SilencingPolicy SilencingPolicy::parse(const std::string& text) {
    if (text == "none") return none();
    if (text == "complete") return complete();
    if (text == "spectrum-split") return spectrum_split();
    const std::string prefix = "partial:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string number = text.substr(prefix.size());
        char* end = nullptr;
        const double rho = std::strtod(number.c_str(), &end);
        if (!number.empty() && end == number.c_str() + number.size()) {
            return partial(rho);
        }
    }
    throw std::invalid_argument("unknown silencing policy '" + text +
                                "' (expected none, complete, spectrum-split or partial:<rho>)");
}

std::string SilencingPolicy::name() const {
    switch (kind_) {
        case Kind::None: return "none";
        case Kind::Complete: return "complete";
        case Kind::SpectrumSplit: return "spectrum-split";
        case Kind::Partial: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "partial:%.6g", rho_);
            return buf;
        }
    }
    return "?";
}

Zone classify_zone(const ScenarioConfig& cfg, double radius) noexcept {
    if (radius < cfg.disaster_radius) return Zone::Disaster;
    if (radius < cfg.active_ring_outer()) return Zone::ActiveRing;
    if (radius < cfg.silencing_radius) return Zone::Silencing;
    return Zone::Outer;
}

void assign_zones(NetworkSnapshot& net, const ScenarioConfig& cfg, std::uint64_t trial_index) {
    for (auto& s : net.stations) {
        s.zone = classify_zone(cfg, std::sqrt(radius2(s.position)));
        s.power_factor = 1.0;
        s.band = Band::Disaster;
    }
    net.silencing_band = Band::Disaster;
    if (cfg.layout && cfg.layout->silencing_user) {
        net.silencing_user = cfg.layout->silencing_user;
    } else {
        auto rng = make_rng(cfg.master_seed, trial_index, stream::kSilencingUser);
        net.silencing_user = geometry::sample_uniform(silencing_annulus(cfg), rng);
    }
}

NetworkSnapshot build_network(const ScenarioConfig& cfg, std::uint64_t trial_index) {
    NetworkSnapshot net;
    if (cfg.layout) {
        for (const auto& h : cfg.layout->stations) {
            BaseStation s;
            s.position = h.position;
            s.altitude = h.altitude;
            s.aerial = h.altitude > 0.0;
            s.tx_power = s.aerial && cfg.aerial_tier ? cfg.aerial_tier->tx_power : cfg.bs_tx_power;
            s.alive = h.alive;
            net.stations.push_back(s);
        }
        net.typical_device = cfg.layout->device;
        assign_zones(net, cfg, trial_index);
        return net;
    }

    const auto rings = static_cast<std::uint64_t>(std::ceil(cfg.sim_radius / kLayoutRingWidth));
    for (std::uint64_t k = 0; k < rings; ++k) {
        const geometry::Annulus ring({0.0, 0.0}, static_cast<double>(k) * kLayoutRingWidth,
                                     static_cast<double>(k + 1) * kLayoutRingWidth);
        auto rng = make_rng(cfg.master_seed, trial_index, stream::kRingBase + k);
        for (const auto& p : geometry::sample_ppp(ring, cfg.bs_density, rng)) {
            if (radius2(p) <= sq(cfg.sim_radius)) {
                BaseStation s;
                s.position = p;
                s.tx_power = cfg.bs_tx_power;
                net.stations.push_back(s);
            }
        }
    }

    // Survival thinning inside the disaster disk, one draw per disaster-zone station.
    std::vector<std::size_t> in_disaster;
    for (std::size_t i = 0; i < net.stations.size(); ++i) {
        const auto& p = net.stations[i].position;
        if (radius2(p) < sq(cfg.disaster_radius)) {
            in_disaster.push_back(i);
        }
    }
    {
        auto rng = make_rng(cfg.master_seed, trial_index, stream::kSurvival);
        const auto keep = geometry::thin_mask(in_disaster.size(), cfg.bs_survival_prob, rng);
        for (std::size_t k = 0; k < in_disaster.size(); ++k) {
            net.stations[in_disaster[k]].alive = keep[k];
        }
    }

    const auto disaster_disk = geometry::Annulus::disk({0.0, 0.0}, cfg.disaster_radius);
    if (cfg.aerial_tier) {
        auto rng = make_rng(cfg.master_seed, trial_index, stream::kAerial);
        for (const auto& p : geometry::sample_ppp(disaster_disk, cfg.aerial_tier->density, rng)) {
            BaseStation s;
            s.position = p;
            s.altitude = cfg.aerial_tier->altitude;
            s.tx_power = cfg.aerial_tier->tx_power;
            s.aerial = true;
            net.stations.push_back(s);
        }
    }

    auto device_rng = make_rng(cfg.master_seed, trial_index, stream::kDevice);
    net.typical_device = geometry::sample_uniform(disaster_disk, device_rng);
    assign_zones(net, cfg, trial_index);
    return net;
}

NetworkSnapshot apply_policy(const NetworkSnapshot& net, const SilencingPolicy& policy) {
    NetworkSnapshot out = net;
    out.silencing_band = policy.kind() == SilencingPolicy::Kind::SpectrumSplit ? Band::Alternate
                                                                                : Band::Disaster;
    for (auto& s : out.stations) {
        if (s.zone != Zone::Silencing) {
            continue;
        }
        if (policy.kind() == SilencingPolicy::Kind::SpectrumSplit) {
            s.band = Band::Alternate;
            s.power_factor = 1.0;
        } else {
            s.band = Band::Disaster;
            s.power_factor = policy.rho();
        }
    }
    return out;
}

std::vector<double> draw_fading(const NetworkSnapshot& net, channel::FadingModel model, Rng& rng) {
    std::vector<double> fading(net.stations.size() + 1);
    for (auto& h : fading) {
        h = channel::sample_fading(model, rng);
    }
    return fading;
}

TrialOutcome uplink_evaluate(const NetworkSnapshot& net, const ScenarioConfig& cfg,
                             std::span<const double> fading) {
    const auto& ch = cfg.channel;
    const auto& st = net.stations;

    std::size_t serving = st.size();
    double serving_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto& s = st[i];
        if (!s.alive || (s.zone != Zone::Disaster && s.zone != Zone::ActiveRing)) {
            continue;
        }
        const double d = ground_distance2(net.typical_device, s);
        if (d < serving_d2) {
            serving = i;
            serving_d2 = d;
        }
    }
    if (serving == st.size()) {
        TrialOutcome hole;
        hole.coverage_hole = true;
        return hole;
    }

    const double signal = cfg.device_tx_power * fading[0] * gain2(serving_d2, ch);
    double interference = 0.0;
    for (std::size_t j = 0; j < st.size(); ++j) {
        const auto& s = st[j];
        if (j == serving || !s.alive || s.band != Band::Disaster || !(s.power_factor > 0.0)) {
            continue;
        }
        interference +=
            s.power_factor * s.tx_power * fading[1 + j] * gain2(separation2(s, st[serving]), ch);
    }
    return judge(signal, interference, ch);
}

TrialOutcome uplink_trial(const NetworkSnapshot& net, const ScenarioConfig& cfg, Rng& rng) {
    const auto fading = draw_fading(net, cfg.channel.fading, rng);
    return uplink_evaluate(net, cfg, fading);
}

TrialOutcome downlink_evaluate(const NetworkSnapshot& net, const ScenarioConfig& cfg,
                               std::span<const double> fading) {
    const auto& ch = cfg.channel;
    const auto& st = net.stations;
    if (!net.silencing_user) {
        TrialOutcome hole;
        hole.coverage_hole = true;
        return hole;
    }
    const Point2D user = *net.silencing_user;
    const Band band = net.silencing_band;

    auto transmits = [band](const BaseStation& s) {
        return s.alive && s.band == band && s.power_factor > 0.0;
    };

    std::size_t serving = st.size();
    double serving_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.size(); ++i) {
        if (!transmits(st[i])) {
            continue;
        }
        const double d = ground_distance2(user, st[i]);
        if (d < serving_d2) {
            serving = i;
            serving_d2 = d;
        }
    }
    if (serving == st.size()) {
        TrialOutcome hole;
        hole.coverage_hole = true;
        return hole;
    }

    const auto& srv = st[serving];
    const double signal = srv.power_factor * srv.tx_power * fading[0] * gain2(serving_d2, ch);
    double interference = 0.0;
    for (std::size_t j = 0; j < st.size(); ++j) {
        if (j == serving || !transmits(st[j])) {
            continue;
        }
        const auto& s = st[j];
        interference += s.power_factor * s.tx_power * fading[1 + j] * gain2(ground_distance2(user, s), ch);
    }
    return judge(signal, interference, ch);
}

TrialOutcome downlink_trial(const NetworkSnapshot& net, const ScenarioConfig& cfg, Rng& rng) {
    const auto fading = draw_fading(net, cfg.channel.fading, rng);
    return downlink_evaluate(net, cfg, fading);
}

Estimate Estimate::from_counts(std::uint64_t successes, std::uint64_t holes,
                               std::uint64_t n_trials, std::uint64_t master_seed) {
    Estimate e;
    e.n_trials = n_trials;
    e.master_seed = master_seed;
    e.coverage_holes = holes;
    e.value = static_cast<double>(successes) / static_cast<double>(n_trials);
    e.ci_halfwidth = 1.96 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_trials));
    return e;
}

namespace {

struct Tally {
    std::uint64_t successes = 0;
    std::uint64_t holes = 0;

    void add(const TrialOutcome& o) {
        successes += o.success ? 1 : 0;
        holes += o.coverage_hole ? 1 : 0;
    }
};

struct Wanted {
    bool uplink;
    bool downlink;
};

std::vector<PolicyEstimates> run_policies(const ScenarioConfig& cfg,
                                          std::span<const SilencingPolicy> policies,
                                          unsigned workers, Wanted wanted) {
    cfg.validate();
    const std::size_t n = cfg.n_trials;
    const std::size_t m = policies.size();
    // Per block: [policy][0 = uplink, 1 = downlink]
    std::vector<std::vector<Tally>> per_block(std::max(1u, workers),
                                              std::vector<Tally>(2 * m));

    run_blocks(n, workers, [&](std::size_t block, std::size_t begin, std::size_t end) {
        auto& tallies = per_block[block];
        for (std::size_t t = begin; t < end; ++t) {
            const auto net = build_network(cfg, t);
            std::vector<double> up_fading;
            std::vector<double> down_fading;
            if (wanted.uplink) {
                auto rng = make_rng(cfg.master_seed, t, stream::kUplinkFading);
                up_fading = draw_fading(net, cfg.channel.fading, rng);
            }
            if (wanted.downlink) {
                auto rng = make_rng(cfg.master_seed, t, stream::kDownlinkFading);
                down_fading = draw_fading(net, cfg.channel.fading, rng);
            }
            for (std::size_t p = 0; p < m; ++p) {
                const auto silenced = apply_policy(net, policies[p]);
                if (wanted.uplink) {
                    tallies[2 * p].add(uplink_evaluate(silenced, cfg, up_fading));
                }
                if (wanted.downlink) {
                    tallies[2 * p + 1].add(downlink_evaluate(silenced, cfg, down_fading));
                }
            }
        }
    });

    std::vector<PolicyEstimates> out(m);
    for (std::size_t p = 0; p < m; ++p) {
        Tally up;
        Tally down;
        for (const auto& tallies : per_block) {
            up.successes += tallies[2 * p].successes;
            up.holes += tallies[2 * p].holes;
            down.successes += tallies[2 * p + 1].successes;
            down.holes += tallies[2 * p + 1].holes;
        }
        out[p].disaster_success = Estimate::from_counts(up.successes, up.holes, n, cfg.master_seed);
        out[p].silencing_coverage =
            Estimate::from_counts(down.successes, down.holes, n, cfg.master_seed);
    }
    return out;
}

}  // namespace

Estimate estimate_success(const ScenarioConfig& cfg, const SilencingPolicy& policy,
                          unsigned workers) {
    return run_policies(cfg, std::span(&policy, 1), workers, {true, false}).front().disaster_success;
}

Estimate estimate_silencing_area_coverage(const ScenarioConfig& cfg,
                                          const SilencingPolicy& policy, unsigned workers) {
    return run_policies(cfg, std::span(&policy, 1), workers, {false, true})
        .front()
        .silencing_coverage;
}

std::vector<PolicyEstimates> estimate_policies(const ScenarioConfig& cfg,
                                               std::span<const SilencingPolicy> policies,
                                               unsigned workers) {
    return run_policies(cfg, policies, workers, {true, true});
}

}  // namespace drnet::netsim
