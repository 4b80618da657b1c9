#include "drnet/satwet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drnet/channel.hpp"

namespace drnet::satwet {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(field) + " must be > 0");
    }
}

double received_power(const SatWetParams& p, double distance) {
    return p.efficiency * p.sat_tx_power * p.sat_tx_gain * p.ground_rx_gain *
           channel::friis_gain(distance, p.frequency);
}

}  // namespace

void SatWetParams::validate() const {
    require_positive(frequency, "satwet.frequency_hz");
    require_positive(sat_tx_power, "satwet.sat_tx_power");
    require_positive(sat_tx_gain, "satwet.sat_tx_gain");
    require_positive(ground_rx_gain, "satwet.ground_rx_gain");
    require_positive(altitude, "satwet.altitude_m");
    require_positive(earth_radius, "satwet.earth_radius_m");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw std::invalid_argument("satwet.efficiency must lie in (0, 1]");
    }
    if (!(min_elevation_deg >= 0.0 && min_elevation_deg <= 90.0)) {
        throw std::invalid_argument("satwet.min_elevation_deg must lie in [0, 90]");
    }
    if (integration_steps < 1000) {
        throw std::invalid_argument("satwet.integration_steps must be >= 1000");
    }
}

void ChargingModel::validate() const {
    require_positive(energy_per_bit, "satwet.energy_per_bit_j");
    if (!(payload_bits >= 0.0) || !std::isfinite(payload_bits)) {
        throw std::invalid_argument("payload bits must be >= 0");
    }
}

double slant_distance(double altitude, double elevation_deg, double earth_radius) {
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) {
        throw std::invalid_argument("elevation must lie in [0, 90] degrees");
    }
    if (elevation_deg == 90.0) {
        return altitude;
    }
    const double s = std::sin(elevation_deg * kDegToRad);
    const double r = earth_radius;
    return -r * s + std::sqrt(r * r * s * s + altitude * altitude + 2.0 * r * altitude);
}

double zenith_harvested_power(const SatWetParams& p) {
    p.validate();
    return received_power(p, p.altitude);
}

double pass_average_power(const SatWetParams& p) {
    p.validate();
    if (p.min_elevation_deg == 90.0) {
        return zenith_harvested_power(p);
    }
    const double r = p.earth_radius;
    const double orbit = r + p.altitude;
    const double eps = p.min_elevation_deg * kDegToRad;
    // Earth-central angle between the ground node and the sub-satellite point
    // when the satellite sits at elevation eps.
    const double phi_max = std::acos(r * std::cos(eps) / orbit) - eps;

    const std::size_t n = p.integration_steps;
    const double step = phi_max / static_cast<double>(n);
    auto power_at = [&](double phi) {
        const double d2 = r * r + orbit * orbit - 2.0 * r * orbit * std::cos(phi);
        return received_power(p, std::sqrt(d2));
    };
    double sum = 0.5 * (power_at(0.0) + power_at(phi_max));
    for (std::size_t i = 1; i < n; ++i) {
        sum += power_at(static_cast<double>(i) * step);
    }
    return sum * step / phi_max;
}

double charging_time(const ChargingModel& model, double harvested_power) {
    model.validate();
    if (!(harvested_power > 0.0)) {
        throw std::domain_error("charging time needs a positive harvested power");
    }
    return model.energy_per_bit * model.payload_bits / harvested_power;
}

const char* to_string(PowerMode mode) noexcept {
    return mode == PowerMode::Zenith ? "zenith" : "pass-average";
}

PowerMode parse_power_mode(const std::string& text) {
    if (text == "zenith") return PowerMode::Zenith;
    if (text == "pass-average") return PowerMode::PassAverage;
    throw std::invalid_argument("unknown power mode '" + text +
                                "' (expected zenith or pass-average)");
}

std::vector<ChargeRow> charge_curve(const std::vector<double>& heights,
                                    const std::vector<double>& payloads, const SatWetParams& p,
                                    double energy_per_bit, const std::vector<PowerMode>& modes) {
    if (heights.empty() || payloads.empty() || modes.empty()) {
        throw std::invalid_argument("charge curve needs nonempty heights, payloads and modes");
    }
    std::vector<ChargeRow> rows;
    rows.reserve(heights.size() * payloads.size() * modes.size());
    for (double h : heights) {
        SatWetParams at = p;
        at.altitude = h;
        for (double bits : payloads) {
            for (PowerMode mode : modes) {
                ChargeRow row;
                row.height = h;
                row.payload_bits = bits;
                row.mode = mode;
                row.harvested_power =
                    mode == PowerMode::Zenith ? zenith_harvested_power(at) : pass_average_power(at);
                row.charging_time = charging_time({energy_per_bit, bits}, row.harvested_power);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace drnet::satwet
