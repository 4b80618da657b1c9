#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace drnet::satwet {

/// Satellite-to-ground power link. Linear gains, watts, meters, degrees.
struct SatWetParams {
    double frequency = 868e6;
    double sat_tx_power = 100.0;  ///< 50 dBm
    double sat_tx_gain = 1e5;     ///< 50 dB
    double ground_rx_gain = 1.0;  ///< 0 dBi
    double efficiency = 1.0;      ///< RF-to-DC, (0, 1]
    double altitude = 200e3;
    double earth_radius = 6.371e6;
    double min_elevation_deg = 0.0;  ///< lower end of the averaged pass
    std::size_t integration_steps = 2000;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct ChargingModel {
    double energy_per_bit = 4.5e-11;  ///< J/bit
    double payload_bits = 0.0;

    void validate() const;
};

/// Ground-to-satellite range at elevation angle `elevation_deg` in [0, 90].
double slant_distance(double altitude, double elevation_deg, double earth_radius = 6.371e6);

/// Harvested DC power with the satellite at zenith.
double zenith_harvested_power(const SatWetParams& p);

/// Time-averaged harvested power over a directly overhead circular-orbit pass
/// from min_elevation up to zenith and back down. Constant angular rate, so the
/// average is taken over the Earth-central angle with the trapezoidal rule.
double pass_average_power(const SatWetParams& p);

/// E_b * B / P. Throws std::domain_error for harvested_power <= 0.
double charging_time(const ChargingModel& model, double harvested_power);

enum class PowerMode { Zenith, PassAverage };

const char* to_string(PowerMode mode) noexcept;
/// "zenith" or "pass-average"; throws std::invalid_argument otherwise.
PowerMode parse_power_mode(const std::string& text);

struct ChargeRow {
    double height = 0.0;
    double payload_bits = 0.0;
    PowerMode mode = PowerMode::Zenith;
    double harvested_power = 0.0;
    double charging_time = 0.0;
};

/// Cross product heights x payloads x modes, in that nesting order.
std::vector<ChargeRow> charge_curve(const std::vector<double>& heights,
                                    const std::vector<double>& payloads, const SatWetParams& p,
                                    double energy_per_bit,
                                    const std::vector<PowerMode>& modes = {PowerMode::Zenith});

}  // namespace drnet::satwet
