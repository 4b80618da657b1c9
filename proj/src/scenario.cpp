#include "drnet/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "drnet/channel.hpp"

namespace drnet::scenario {

namespace {

using channel::dbm_to_watts;
using channel::from_db;

/// Walks a mapping node with a dotted field path for diagnostics.
class Section {
public:
    Section(YAML::Node node, std::string path, std::string source)
        : node_(std::move(node)), path_(std::move(path)), source_(std::move(source)) {
        if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap()) {
            fail(path_ + ": expected a mapping");
        }
    }

    explicit operator bool() const { return node_.IsDefined() && node_.IsMap(); }

    void allow(std::initializer_list<const char*> keys) const {
        if (!*this) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
                fail_at(kv.first, "unknown key '" + field(key) + "'");
            }
        }
    }

    bool has(const char* key) const { return *this && node_[key]; }

    Section child(const char* key) const {
        return {*this ? node_[key] : YAML::Node{}, field(key), source_};
    }

    YAML::Node raw(const char* key) const { return *this ? node_[key] : YAML::Node{}; }

    /// Mapping element of a list held by this section.
    Section item(const YAML::Node& node, const std::string& path) const {
        return {node, path, source_};
    }

    template <class T>
    T get(const char* key, T fallback) const {
        if (!has(key)) return fallback;
        return convert<T>(node_[key], field(key));
    }

    template <class T>
    std::vector<T> list(const char* key, std::vector<T> fallback) const {
        if (!has(key)) return fallback;
        const YAML::Node seq = node_[key];
        if (!seq.IsSequence()) {
            fail_at(seq, field(key) + ": expected a list");
        }
        std::vector<T> out;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            out.push_back(convert<T>(seq[i], field(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    /// Power given as <stem>_w or <stem>_dbm (at most one of them).
    double power(const std::string& stem, double fallback_w) const {
        const std::string w = stem + "_w";
        const std::string dbm = stem + "_dbm";
        const bool has_w = has(w.c_str());
        const bool has_dbm = has(dbm.c_str());
        if (has_w && has_dbm) {
            fail("give only one of " + field(w) + " and " + field(dbm));
        }
        if (has_w) return get<double>(w.c_str(), 0.0);
        if (has_dbm) return dbm_to_watts(get<double>(dbm.c_str(), 0.0));
        return fallback_w;
    }

    std::string field(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(node_, msg); }

    [[noreturn]] void fail_at(const YAML::Node& at, const std::string& msg) const {
        std::string where = source_;
        if (at && at.Mark().line >= 0) {
            where += ":" + std::to_string(at.Mark().line + 1);
        }
        throw ScenarioError(where + ": " + msg);
    }

private:
    template <class T>
    T convert(const YAML::Node& n, const std::string& name) const {
        try {
            return n.as<T>();
        } catch (const YAML::BadConversion&) {
            fail_at(n, name + ": invalid value '" + (n.IsScalar() ? n.Scalar() : "<non-scalar>") + "'");
        }
    }

    YAML::Node node_;
    std::string path_;
    std::string source_;
};

geometry::Point2D point(const Section& s) {
    s.allow({"x_m", "y_m"});
    if (!s.has("x_m") || !s.has("y_m")) {
        s.fail(s.field("x_m") + " and " + s.field("y_m") + " are required");
    }
    return {s.get<double>("x_m", 0.0), s.get<double>("y_m", 0.0)};
}

netsim::ScenarioConfig parse_network(const Section& root) {
    netsim::ScenarioConfig cfg;

    const auto geo = root.child("geometry");
    geo.allow({"disaster_radius_m", "active_ring_width_m", "silencing_radius_m", "sim_radius_m"});
    cfg.disaster_radius = geo.get("disaster_radius_m", cfg.disaster_radius);
    cfg.active_ring_width = geo.get("active_ring_width_m", cfg.active_ring_width);
    cfg.silencing_radius = geo.get("silencing_radius_m", cfg.silencing_radius);
    cfg.sim_radius = geo.get("sim_radius_m", cfg.sim_radius);

    const auto net = root.child("network");
    net.allow({"bs_density_per_m2", "bs_survival_prob", "device_tx_power_w", "device_tx_power_dbm",
               "bs_tx_power_w", "bs_tx_power_dbm", "aerial_tier"});
    cfg.bs_density = net.get("bs_density_per_m2", cfg.bs_density);
    cfg.bs_survival_prob = net.get("bs_survival_prob", cfg.bs_survival_prob);
    cfg.device_tx_power = net.power("device_tx_power", cfg.device_tx_power);
    cfg.bs_tx_power = net.power("bs_tx_power", cfg.bs_tx_power);
    if (net.has("aerial_tier")) {
        const auto air = net.child("aerial_tier");
        air.allow({"density_per_m2", "altitude_m", "tx_power_w", "tx_power_dbm"});
        netsim::AerialTier tier;
        tier.density = air.get("density_per_m2", tier.density);
        tier.altitude = air.get("altitude_m", tier.altitude);
        tier.tx_power = air.power("tx_power", tier.tx_power);
        cfg.aerial_tier = tier;
    }

    const auto ch = root.child("channel");
    ch.allow({"path_loss_exponent", "reference_gain_db", "noise_w", "noise_dbm",
              "sinr_threshold_db", "min_distance_m", "fading"});
    cfg.channel.path_loss_exponent = ch.get("path_loss_exponent", cfg.channel.path_loss_exponent);
    if (ch.has("reference_gain_db")) {
        cfg.channel.reference_gain = from_db(ch.get("reference_gain_db", 0.0));
    }
    cfg.channel.noise_power = ch.power("noise", cfg.channel.noise_power);
    if (ch.has("sinr_threshold_db")) {
        cfg.channel.sinr_threshold = from_db(ch.get("sinr_threshold_db", -10.0));
    }
    cfg.channel.min_distance = ch.get("min_distance_m", cfg.channel.min_distance);
    const auto fading = ch.get<std::string>("fading", "rayleigh");
    if (fading == "rayleigh") {
        cfg.channel.fading = channel::FadingModel::Rayleigh;
    } else if (fading == "none") {
        cfg.channel.fading = channel::FadingModel::None;
    } else {
        ch.fail_at(ch.raw("fading"), ch.field("fading") + ": expected rayleigh or none");
    }

    const auto sim = root.child("simulation");
    sim.allow({"n_trials", "master_seed"});
    cfg.n_trials = sim.get<std::uint64_t>("n_trials", cfg.n_trials);
    cfg.master_seed = sim.get<std::uint64_t>("master_seed", cfg.master_seed);

    if (root.has("layout")) {
        const auto lay = root.child("layout");
        lay.allow({"base_stations", "device", "silencing_user"});
        netsim::HandLayout layout;
        const YAML::Node list = lay.raw("base_stations");
        if (list) {
            if (!list.IsSequence()) {
                lay.fail_at(list, "layout.base_stations: expected a list");
            }
            for (std::size_t i = 0; i < list.size(); ++i) {
                const auto st = lay.item(list[i], "layout.base_stations[" + std::to_string(i) + "]");
                st.allow({"x_m", "y_m", "altitude_m", "alive"});
                netsim::HandStation h;
                h.position = {st.get<double>("x_m", 0.0), st.get<double>("y_m", 0.0)};
                h.altitude = st.get("altitude_m", 0.0);
                h.alive = st.get("alive", true);
                layout.stations.push_back(h);
            }
        }
        if (!lay.has("device")) {
            lay.fail("layout.device is required when a layout is given");
        }
        layout.device = point(lay.child("device"));
        if (lay.has("silencing_user")) {
            layout.silencing_user = point(lay.child("silencing_user"));
        }
        cfg.layout = layout;
    }
    return cfg;
}

SatWetScenario parse_satwet(const Section& s) {
    s.allow({"frequency_hz", "sat_tx_power_w", "sat_tx_power_dbm", "sat_tx_gain_db",
             "ground_rx_gain_db", "efficiency", "earth_radius_m", "min_elevation_deg",
             "integration_steps", "energy_per_bit_j", "heights_m", "payloads_bits", "modes"});
    SatWetScenario out;
    auto& p = out.params;
    p.frequency = s.get("frequency_hz", p.frequency);
    p.sat_tx_power = s.power("sat_tx_power", p.sat_tx_power);
    if (s.has("sat_tx_gain_db")) p.sat_tx_gain = from_db(s.get("sat_tx_gain_db", 50.0));
    if (s.has("ground_rx_gain_db")) p.ground_rx_gain = from_db(s.get("ground_rx_gain_db", 0.0));
    p.efficiency = s.get("efficiency", p.efficiency);
    p.earth_radius = s.get("earth_radius_m", p.earth_radius);
    p.min_elevation_deg = s.get("min_elevation_deg", p.min_elevation_deg);
    p.integration_steps = s.get<std::size_t>("integration_steps", p.integration_steps);
    out.energy_per_bit = s.get("energy_per_bit_j", out.energy_per_bit);
    out.heights = s.list<double>("heights_m", out.heights);
    out.payloads = s.list<double>("payloads_bits", out.payloads);
    if (s.has("modes")) {
        out.modes.clear();
        for (const auto& m : s.list<std::string>("modes", {})) {
            try {
                out.modes.push_back(satwet::parse_power_mode(m));
            } catch (const std::invalid_argument& e) {
                s.fail_at(s.raw("modes"), s.field("modes") + ": " + e.what());
            }
        }
    }
    if (out.heights.empty() || out.payloads.empty() || out.modes.empty()) {
        s.fail(s.field("heights_m") + ", payloads_bits and modes must be nonempty");
    }
    for (double h : out.heights) {
        if (!(h > 0.0)) s.fail(s.field("heights_m") + ": heights must be > 0");
    }
    for (double b : out.payloads) {
        if (!(b >= 0.0)) s.fail(s.field("payloads_bits") + ": payloads must be >= 0");
    }
    return out;
}

AcbScenario parse_acb(const Section& s) {
    s.allow({"capacity_per_s", "horizon_s", "seed", "enforce_monotone", "classes"});
    AcbScenario out;
    out.capacity = s.get("capacity_per_s", out.capacity);
    out.horizon = s.get("horizon_s", out.horizon);
    if (s.has("seed")) out.seed = s.get<std::uint64_t>("seed", 0);
    out.profile.enforce_monotone = s.get("enforce_monotone", true);
    const YAML::Node list = s.raw("classes");
    if (!list || !list.IsSequence() || list.size() == 0) {
        s.fail(s.field("classes") + ": expected a nonempty list");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto c = s.item(list[i], s.field("classes[" + std::to_string(i) + "]"));
        c.allow({"name", "acdc_category", "arrival_rate_per_s", "barring_prob"});
        acb::AcdcClass cls;
        cls.name = c.get<std::string>("name", "class" + std::to_string(i));
        cls.acdc_category = c.get("acdc_category", cls.acdc_category);
        cls.arrival_rate = c.get("arrival_rate_per_s", cls.arrival_rate);
        cls.barring_prob = c.get("barring_prob", cls.barring_prob);
        out.profile.classes.push_back(cls);
    }
    return out;
}

template <class Fn>
void validated(const std::string& source, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(source + ": " + e.what());
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(source_name + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!doc || doc.IsNull()) {
        throw ScenarioError(source_name + ":1: empty scenario");
    }

    Scenario sc;
    {
        const Section root(doc, "", source_name);
        root.allow({"name", "geometry", "network", "channel", "simulation", "policies", "sweep",
                    "layout", "satwet", "acb"});
        sc.name = root.get<std::string>("name", "unnamed");
        sc.network = parse_network(root);

        for (const auto& p : root.list<std::string>("policies", {"none", "complete"})) {
            try {
                sc.policies.push_back(netsim::SilencingPolicy::parse(p));
            } catch (const std::invalid_argument& e) {
                root.fail_at(root.raw("policies"), std::string("policies: ") + e.what());
            }
        }

        if (root.has("sweep")) {
            const auto sw = root.child("sweep");
            sw.allow({"rho_values", "silencing_radii_m", "weights"});
            planner::SweepGrid grid;
            grid.rho_values = sw.list<double>("rho_values", {0.0, 0.5, 1.0});
            grid.silencing_radii = sw.list<double>("silencing_radii_m", {sc.network.silencing_radius});
            sc.sweep = grid;
            const auto w = sw.child("weights");
            w.allow({"disaster", "silencing_area"});
            sc.weights.w_disaster = w.get("disaster", sc.weights.w_disaster);
            sc.weights.w_silencing_area = w.get("silencing_area", sc.weights.w_silencing_area);
        }
        if (root.has("satwet")) sc.satwet = parse_satwet(root.child("satwet"));
        if (root.has("acb")) sc.acb = parse_acb(root.child("acb"));
    }

    validated(source_name, [&] { sc.network.validate(); });
    if (sc.sweep) {
        validated(source_name, [&] {
            sc.sweep->validate(sc.network);
            sc.weights.validate();
        });
    }
    if (sc.satwet) {
        validated(source_name, [&] {
            for (double h : sc.satwet->heights) {
                auto p = sc.satwet->params;
                p.altitude = h;
                p.validate();
            }
            satwet::ChargingModel{sc.satwet->energy_per_bit, 0.0}.validate();
        });
    }
    if (sc.acb) {
        validated(source_name, [&] {
            sc.acb->profile.validate();
            if (!(sc.acb->capacity > 0.0)) throw std::invalid_argument("acb.capacity_per_s must be > 0");
            if (!(sc.acb->horizon > 0.0)) throw std::invalid_argument("acb.horizon_s must be > 0");
        });
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError(path.string() + ": cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string to_yaml(const Scenario& sc) {
    const auto& cfg = sc.network;
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << sc.name;

    out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "disaster_radius_m" << YAML::Value << cfg.disaster_radius;
    out << YAML::Key << "active_ring_width_m" << YAML::Value << cfg.active_ring_width;
    out << YAML::Key << "silencing_radius_m" << YAML::Value << cfg.silencing_radius;
    out << YAML::Key << "sim_radius_m" << YAML::Value << cfg.sim_radius;
    out << YAML::EndMap;

    out << YAML::Key << "network" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "bs_density_per_m2" << YAML::Value << cfg.bs_density;
    out << YAML::Key << "bs_survival_prob" << YAML::Value << cfg.bs_survival_prob;
    out << YAML::Key << "device_tx_power_w" << YAML::Value << cfg.device_tx_power;
    out << YAML::Key << "bs_tx_power_w" << YAML::Value << cfg.bs_tx_power;
    if (cfg.aerial_tier) {
        out << YAML::Key << "aerial_tier" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "density_per_m2" << YAML::Value << cfg.aerial_tier->density;
        out << YAML::Key << "altitude_m" << YAML::Value << cfg.aerial_tier->altitude;
        out << YAML::Key << "tx_power_w" << YAML::Value << cfg.aerial_tier->tx_power;
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "path_loss_exponent" << YAML::Value << cfg.channel.path_loss_exponent;
    out << YAML::Key << "reference_gain_db" << YAML::Value << channel::to_db(cfg.channel.reference_gain);
    out << YAML::Key << "noise_w" << YAML::Value << cfg.channel.noise_power;
    out << YAML::Key << "sinr_threshold_db" << YAML::Value << channel::to_db(cfg.channel.sinr_threshold);
    out << YAML::Key << "min_distance_m" << YAML::Value << cfg.channel.min_distance;
    out << YAML::Key << "fading" << YAML::Value
        << (cfg.channel.fading == channel::FadingModel::Rayleigh ? "rayleigh" : "none");
    out << YAML::EndMap;

    out << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_trials" << YAML::Value << cfg.n_trials;
    out << YAML::Key << "master_seed" << YAML::Value << cfg.master_seed;
    out << YAML::EndMap;

    out << YAML::Key << "policies" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& p : sc.policies) out << p.name();
    out << YAML::EndSeq;

    if (cfg.layout) {
        out << YAML::Key << "layout" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "base_stations" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : cfg.layout->stations) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "x_m" << YAML::Value << s.position.x;
            out << YAML::Key << "y_m" << YAML::Value << s.position.y;
            out << YAML::Key << "altitude_m" << YAML::Value << s.altitude;
            out << YAML::Key << "alive" << YAML::Value << s.alive;
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
        auto emit_point = [&](const char* key, geometry::Point2D p) {
            out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "x_m" << YAML::Value << p.x;
            out << YAML::Key << "y_m" << YAML::Value << p.y;
            out << YAML::EndMap;
        };
        emit_point("device", cfg.layout->device);
        if (cfg.layout->silencing_user) emit_point("silencing_user", *cfg.layout->silencing_user);
        out << YAML::EndMap;
    }

    if (sc.sweep) {
        out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "rho_values" << YAML::Value << YAML::Flow << sc.sweep->rho_values;
        out << YAML::Key << "silencing_radii_m" << YAML::Value << YAML::Flow
            << sc.sweep->silencing_radii;
        out << YAML::Key << "weights" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "disaster" << YAML::Value << sc.weights.w_disaster;
        out << YAML::Key << "silencing_area" << YAML::Value << sc.weights.w_silencing_area;
        out << YAML::EndMap << YAML::EndMap;
    }

    if (sc.satwet) {
        const auto& s = *sc.satwet;
        out << YAML::Key << "satwet" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "frequency_hz" << YAML::Value << s.params.frequency;
        out << YAML::Key << "sat_tx_power_w" << YAML::Value << s.params.sat_tx_power;
        out << YAML::Key << "sat_tx_gain_db" << YAML::Value << channel::to_db(s.params.sat_tx_gain);
        out << YAML::Key << "ground_rx_gain_db" << YAML::Value
            << channel::to_db(s.params.ground_rx_gain);
        out << YAML::Key << "efficiency" << YAML::Value << s.params.efficiency;
        out << YAML::Key << "earth_radius_m" << YAML::Value << s.params.earth_radius;
        out << YAML::Key << "min_elevation_deg" << YAML::Value << s.params.min_elevation_deg;
        out << YAML::Key << "integration_steps" << YAML::Value << s.params.integration_steps;
        out << YAML::Key << "energy_per_bit_j" << YAML::Value << s.energy_per_bit;
        out << YAML::Key << "heights_m" << YAML::Value << YAML::Flow << s.heights;
        out << YAML::Key << "payloads_bits" << YAML::Value << YAML::Flow << s.payloads;
        out << YAML::Key << "modes" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (auto m : s.modes) out << satwet::to_string(m);
        out << YAML::EndSeq << YAML::EndMap;
    }

    if (sc.acb) {
        const auto& a = *sc.acb;
        out << YAML::Key << "acb" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "capacity_per_s" << YAML::Value << a.capacity;
        out << YAML::Key << "horizon_s" << YAML::Value << a.horizon;
        if (a.seed) out << YAML::Key << "seed" << YAML::Value << *a.seed;
        out << YAML::Key << "enforce_monotone" << YAML::Value << a.profile.enforce_monotone;
        out << YAML::Key << "classes" << YAML::Value << YAML::BeginSeq;
        for (const auto& c : a.profile.classes) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "name" << YAML::Value << c.name;
            out << YAML::Key << "acdc_category" << YAML::Value << c.acdc_category;
            out << YAML::Key << "arrival_rate_per_s" << YAML::Value << c.arrival_rate;
            out << YAML::Key << "barring_prob" << YAML::Value << c.barring_prob;
            out << YAML::EndMap;
        }
        out << YAML::EndSeq << YAML::EndMap;
    }

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace drnet::scenario
