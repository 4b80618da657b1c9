#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "drnet/netsim.hpp"

using namespace drnet;
using namespace drnet::netsim;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig cfg;
    cfg.silencing_radius = 4000.0;
    cfg.sim_radius = 8000.0;
    cfg.bs_density = 2e-6;
    cfg.n_trials = 3000;
    cfg.master_seed = 2718;
    return cfg;
}

/// Device at the origin, fading forced to 1, equal unit powers, alpha 4, no noise.
ScenarioConfig hand_config(std::vector<HandStation> stations) {
    ScenarioConfig cfg;
    cfg.device_tx_power = 1.0;
    cfg.bs_tx_power = 1.0;
    cfg.channel.fading = channel::FadingModel::None;
    cfg.channel.noise_power = 0.0;
    cfg.n_trials = 1;
    HandLayout layout;
    layout.stations = std::move(stations);
    layout.device = {0.0, 0.0};
    layout.silencing_user = Point2D{3000.0, 0.0};
    cfg.layout = layout;
    return cfg;
}

std::vector<double> unit_fading(const NetworkSnapshot& net) {
    return std::vector<double>(net.stations.size() + 1, 1.0);
}

}  // namespace

TEST_CASE("build_network with zero density has only the device") {
    auto cfg = small_config();
    cfg.bs_density = 0.0;
    const auto net = build_network(cfg, 0);
    CHECK(net.stations.empty());
    CHECK(std::hypot(net.typical_device.x, net.typical_device.y) <= cfg.disaster_radius);
    Rng rng{1};
    CHECK(uplink_trial(net, cfg, rng).coverage_hole);
}

TEST_CASE("build_network zones, survival and determinism") {
    auto cfg = small_config();
    cfg.bs_survival_prob = 0.0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto net = build_network(cfg, t);
        CHECK(net == build_network(cfg, t));
        for (const auto& s : net.stations) {
            const double r = std::hypot(s.position.x, s.position.y);
            REQUIRE(r <= cfg.sim_radius);
            REQUIRE(s.zone == classify_zone(cfg, r));
            REQUIRE(s.power_factor == 1.0);
            REQUIRE(s.band == Band::Disaster);
            if (s.zone == Zone::Disaster) {
                REQUIRE_FALSE(s.alive);
            } else {
                REQUIRE(s.alive);
            }
        }
        REQUIRE(net.silencing_user);
        const double ru = std::hypot(net.silencing_user->x, net.silencing_user->y);
        CHECK(ru >= cfg.active_ring_outer());
        CHECK(ru <= cfg.silencing_radius);
    }
    CHECK_FALSE(build_network(cfg, 0) == build_network(cfg, 1));
}

TEST_CASE("stations inside a radius do not depend on sim_radius") {
    auto cfg = small_config();
    auto big = cfg;
    big.sim_radius = 2.0 * cfg.sim_radius;
    const auto a = build_network(cfg, 11);
    const auto b = build_network(big, 11);
    REQUIRE(b.stations.size() >= a.stations.size());
    for (std::size_t i = 0; i < a.stations.size(); ++i) {
        REQUIRE(a.stations[i] == b.stations[i]);
    }
    CHECK(a.typical_device == b.typical_device);
}

TEST_CASE("apply_policy") {
    std::vector<HandStation> st;
    st.push_back({{100, 0}});
    st.push_back({{2300, 0}});  // active ring
    for (int k = 0; k < 5; ++k) st.push_back({{2700.0 + 100.0 * k, 0}});  // silencing
    st.push_back({{9000, 0}});  // outer
    const auto cfg = hand_config(st);
    const auto net = build_network(cfg, 0);

    CHECK(apply_policy(net, SilencingPolicy::partial(1.0)) == net);
    CHECK(apply_policy(net, SilencingPolicy::none()) == net);

    const auto complete = apply_policy(net, SilencingPolicy::complete());
    int silenced = 0;
    for (std::size_t i = 0; i < net.stations.size(); ++i) {
        if (net.stations[i].zone == Zone::Silencing) {
            CHECK(complete.stations[i].power_factor == 0.0);
            ++silenced;
        } else {
            CHECK(complete.stations[i] == net.stations[i]);
        }
    }
    CHECK(silenced == 5);

    const auto partial = apply_policy(net, SilencingPolicy::partial(0.25));
    const auto split = apply_policy(net, SilencingPolicy::spectrum_split());
    CHECK(split.silencing_band == Band::Alternate);
    for (std::size_t i = 0; i < net.stations.size(); ++i) {
        const bool sil = net.stations[i].zone == Zone::Silencing;
        CHECK(partial.stations[i].power_factor == (sil ? 0.25 : 1.0));
        CHECK(split.stations[i].power_factor == 1.0);
        CHECK((split.stations[i].band == Band::Alternate) == sil);
        // Disaster-band interferer sets coincide for split and complete.
        const bool split_interferes = split.stations[i].band == Band::Disaster;
        const bool complete_interferes = complete.stations[i].power_factor > 0.0;
        CHECK(split_interferes == complete_interferes);
    }
}

TEST_CASE("SilencingPolicy parse and name") {
    CHECK(SilencingPolicy::parse("none").kind() == SilencingPolicy::Kind::None);
    CHECK(SilencingPolicy::parse("spectrum-split").kind() == SilencingPolicy::Kind::SpectrumSplit);
    const auto p = SilencingPolicy::parse("partial:0.35");
    CHECK(p.kind() == SilencingPolicy::Kind::Partial);
    CHECK(p.rho() == 0.35);
    CHECK(p.name() == "partial:0.35");
    CHECK_THROWS_AS(SilencingPolicy::parse("partial:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(SilencingPolicy::parse("partial:"), std::invalid_argument);
    CHECK_THROWS_AS(SilencingPolicy::parse("off"), std::invalid_argument);
}

TEST_CASE("uplink without interferers or noise always succeeds") {
    const auto cfg = hand_config({{{250, 40}}});
    const auto net = build_network(cfg, 0);
    const auto out = uplink_evaluate(net, cfg, unit_fading(net));
    CHECK(out.success);
    CHECK(std::isinf(out.sinr));
}

TEST_CASE("hand layout: SIR = (400/100)^4 = 256") {
    // Serving station 100 m from the device; interferer 400 m from the serving
    // station; third station in the silencing annulus.
    const auto cfg = hand_config({{{100, 0}}, {{100, 400}}, {{3000, 0}}});
    const auto net = build_network(cfg, 0);
    REQUIRE(net.stations[2].zone == Zone::Silencing);

    const auto complete = uplink_evaluate(apply_policy(net, SilencingPolicy::complete()), cfg,
                                          unit_fading(net));
    CHECK(complete.sinr == 256.0);
    CHECK(channel::to_db(complete.sinr) == doctest::Approx(24.08).epsilon(1e-4));
    CHECK(complete.success);

    // Unsilenced, the third station adds (2900)^-4 at the serving station.
    const double s = std::pow(100.0, -4.0);
    const double i = std::pow(400.0, -4.0) + std::pow(2900.0, -4.0);
    const auto none = uplink_evaluate(net, cfg, unit_fading(net));
    CHECK(none.sinr == doctest::Approx(s / i).epsilon(1e-12));
    CHECK(none.sinr < complete.sinr);
}

TEST_CASE("uplink to an aerial station uses 3D distance") {
    auto cfg = hand_config({{{0, 0}, 300.0}});
    cfg.channel.noise_power = 1e-12;
    const auto net = build_network(cfg, 0);
    REQUIRE(net.stations[0].aerial);
    const auto out = uplink_evaluate(net, cfg, unit_fading(net));
    CHECK(out.sinr == doctest::Approx(std::pow(300.0, -4.0) / 1e-12).epsilon(1e-12));
}

TEST_CASE("uplink with no eligible station is a coverage hole") {
    // Dead disaster-zone station and a silencing-zone station only.
    const auto cfg = hand_config({{{100, 0}, 0.0, false}, {{3000, 0}}});
    const auto net = build_network(cfg, 0);
    const auto out = uplink_evaluate(net, cfg, unit_fading(net));
    CHECK_FALSE(out.success);
    CHECK(out.coverage_hole);
    const auto est = estimate_success(cfg, SilencingPolicy::none());
    CHECK(est.value == 0.0);
    CHECK(est.coverage_holes == 1);
}

TEST_CASE("noise-only Rayleigh outage matches exp(-tau N d0^alpha / P)") {
    auto cfg = hand_config({{{100, 0}}});
    cfg.channel.fading = channel::FadingModel::Rayleigh;
    cfg.channel.noise_power = 1e-8;  // N d0^4 / P = 1
    cfg.n_trials = 100000;
    const auto est = estimate_success(cfg, SilencingPolicy::none());
    CHECK(std::exp(-0.1) == doctest::Approx(0.9048).epsilon(1e-4));
    CHECK(std::abs(est.value - std::exp(-0.1)) < 0.01);
}

TEST_CASE("estimate_success is 1 without interference power") {
    auto cfg = small_config();
    cfg.bs_density = 1e-5;
    cfg.sim_radius = 5000.0;
    cfg.bs_tx_power = 0.0;
    cfg.n_trials = 500;
    const auto est = estimate_success(cfg, SilencingPolicy::none());
    CHECK(est.value == 1.0);
    CHECK(est.ci_halfwidth == 0.0);
}

TEST_CASE("exact policy identities at equal seeds") {
    const auto cfg = small_config();
    const auto none = estimate_success(cfg, SilencingPolicy::none());
    const auto complete = estimate_success(cfg, SilencingPolicy::complete());
    CHECK(estimate_success(cfg, SilencingPolicy::partial(1.0)).value == none.value);
    CHECK(estimate_success(cfg, SilencingPolicy::partial(0.0)).value == complete.value);
    CHECK(estimate_success(cfg, SilencingPolicy::spectrum_split()).value == complete.value);
    CHECK(none.value < complete.value);
}

TEST_CASE("uplink SINR is non-increasing in rho, trial by trial") {
    const auto cfg = small_config();
    const std::vector<double> rhos{0.0, 0.1, 0.3, 0.5, 0.9, 1.0};
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto net = build_network(cfg, t);
        auto rng = make_rng(cfg.master_seed, t, stream::kUplinkFading);
        const auto fading = draw_fading(net, cfg.channel.fading, rng);
        double prev = std::numeric_limits<double>::infinity();
        for (double rho : rhos) {
            const auto out =
                uplink_evaluate(apply_policy(net, SilencingPolicy::partial(rho)), cfg, fading);
            REQUIRE(out.sinr <= prev);
            prev = out.sinr;
        }
    }
}

TEST_CASE("estimate_success is monotone in rho and in silencing radius") {
    auto cfg = small_config();
    double prev = 2.0;
    for (double rho : {0.0, 0.2, 0.5, 1.0}) {
        const double v = estimate_success(cfg, SilencingPolicy::partial(rho)).value;
        CHECK(v <= prev);
        prev = v;
    }
    prev = -1.0;
    for (double rs : {2700.0, 3500.0, 5000.0, 8000.0}) {
        cfg.silencing_radius = rs;
        const double v = estimate_success(cfg, SilencingPolicy::complete()).value;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("estimates do not depend on the worker count") {
    const auto cfg = small_config();
    const std::vector<SilencingPolicy> pols{SilencingPolicy::none(),
                                            SilencingPolicy::partial(0.3),
                                            SilencingPolicy::spectrum_split()};
    const auto one = estimate_policies(cfg, pols, 1);
    const auto many = estimate_policies(cfg, pols, 5);
    for (std::size_t i = 0; i < pols.size(); ++i) {
        CHECK(one[i].disaster_success.value == many[i].disaster_success.value);
        CHECK(one[i].silencing_coverage.value == many[i].silencing_coverage.value);
        CHECK(one[i].disaster_success.value ==
              estimate_success(cfg, pols[i], 2).value);
        CHECK(one[i].silencing_coverage.value ==
              estimate_silencing_area_coverage(cfg, pols[i], 3).value);
    }
}

TEST_CASE("Estimate confidence half-width") {
    const auto e = Estimate::from_counts(580, 3, 1000, 9);
    CHECK(e.value == 0.58);
    CHECK(e.ci_halfwidth == doctest::Approx(1.96 * std::sqrt(0.58 * 0.42 / 1000)));
    CHECK(e.coverage_holes == 3);
    CHECK(e.master_seed == 9);
}

TEST_CASE("silencing-area coverage, single station without interferers") {
    const auto cfg = hand_config({{{3100, 0}}});
    CHECK(estimate_silencing_area_coverage(cfg, SilencingPolicy::none()).value == 1.0);
}

TEST_CASE("complete silencing can only hurt silencing-area users with no other station") {
    auto cfg = hand_config({{{3100, 0}}, {{3600, 200}}});
    cfg.channel.fading = channel::FadingModel::Rayleigh;
    cfg.channel.noise_power = 1e-14;
    cfg.n_trials = 2000;
    for (std::uint64_t t = 0; t < cfg.n_trials; ++t) {
        const auto net = build_network(cfg, t);
        auto rng = make_rng(cfg.master_seed, t, stream::kDownlinkFading);
        const auto fading = draw_fading(net, cfg.channel.fading, rng);
        const auto none = downlink_evaluate(net, cfg, fading);
        const auto complete =
            downlink_evaluate(apply_policy(net, SilencingPolicy::complete()), cfg, fading);
        REQUIRE(complete.success <= none.success);
        REQUIRE(complete.coverage_hole);
    }
    const double none = estimate_silencing_area_coverage(cfg, SilencingPolicy::none()).value;
    const double complete = estimate_silencing_area_coverage(cfg, SilencingPolicy::complete()).value;
    CHECK(complete < none);
    CHECK(complete == 0.0);
}

TEST_CASE("spectrum split serves silencing-area users like no silencing when only outer interference is removed") {
    // User at (3000, 0): serving silencing station at (3050, 0), a second
    // silencing station at (3000, 500), one outer station at (9000, 0).
    auto cfg = hand_config({{{3050, 0}}, {{3000, 500}}, {{9000, 0}}});
    const auto net = build_network(cfg, 0);
    REQUIRE(net.stations[0].zone == Zone::Silencing);
    REQUIRE(net.stations[1].zone == Zone::Silencing);
    REQUIRE(net.stations[2].zone == Zone::Outer);
    const auto f = unit_fading(net);

    const auto none = downlink_evaluate(net, cfg, f);
    const auto split = downlink_evaluate(apply_policy(net, SilencingPolicy::spectrum_split()), cfg, f);
    const double s = std::pow(50.0, -4.0);
    const double i_sil = std::pow(500.0, -4.0);
    const double i_out = std::pow(6000.0, -4.0);
    CHECK(split.sinr == doctest::Approx(s / i_sil).epsilon(1e-12));
    CHECK(none.sinr == doctest::Approx(s / (i_sil + i_out)).epsilon(1e-12));
    CHECK(split.success == none.success);
    CHECK(estimate_silencing_area_coverage(cfg, SilencingPolicy::spectrum_split()).value ==
          estimate_silencing_area_coverage(cfg, SilencingPolicy::none()).value);
}

TEST_CASE("ScenarioConfig validation names the field") {
    auto cfg = small_config();
    cfg.silencing_radius = 2500.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("silencing_radius_m"),
                         std::invalid_argument);
    cfg = small_config();
    cfg.bs_survival_prob = 1.2;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("bs_survival_prob"),
                         std::invalid_argument);
    cfg = small_config();
    cfg.n_trials = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_trials"), std::invalid_argument);
    cfg = small_config();
    cfg.sim_radius = 3000.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("sim_radius_m"), std::invalid_argument);
}
