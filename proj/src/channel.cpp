#include "drnet/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace drnet::channel {

double to_db(double linear) {
    if (!(linear > 0.0)) {
        throw std::domain_error("dB conversion needs a positive linear value");
    }
    return 10.0 * std::log10(linear);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return 1e-3 * from_db(dbm); }

double watts_to_dbm(double watts) { return to_db(watts / 1e-3); }

void ChannelParams::validate() const {
    if (!(path_loss_exponent > 2.0) || !std::isfinite(path_loss_exponent)) {
        throw std::invalid_argument("channel.path_loss_exponent must be > 2");
    }
    if (!(reference_gain > 0.0) || !std::isfinite(reference_gain)) {
        throw std::invalid_argument("channel.reference_gain must be > 0");
    }
    if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
        throw std::invalid_argument("channel.noise must be >= 0");
    }
    if (!(sinr_threshold > 0.0) || !std::isfinite(sinr_threshold)) {
        throw std::invalid_argument("channel.sinr_threshold must be > 0 (linear)");
    }
    if (!(min_distance > 0.0) || !std::isfinite(min_distance)) {
        throw std::invalid_argument("channel.min_distance_m must be > 0");
    }
}

double path_gain(double distance, const ChannelParams& params) {
    if (!(distance > 0.0)) {
        throw std::domain_error("path gain needs a positive distance");
    }
    const double d = distance < params.min_distance ? params.min_distance : distance;
    return params.reference_gain * std::pow(d, -params.path_loss_exponent);
}

double friis_gain(double distance, double frequency) {
    if (!(distance > 0.0) || !(frequency > 0.0)) {
        throw std::domain_error("Friis gain needs positive distance and frequency");
    }
    const double wavelength = kSpeedOfLight / frequency;
    const double ratio = wavelength / (4.0 * std::numbers::pi * distance);
    return ratio * ratio;
}

double compute_sinr(const LinkSample& link) {
    if (link.signal_power < 0.0 || link.interference_power < 0.0 || link.noise_power < 0.0) {
        throw std::domain_error("link powers must be non-negative");
    }
    const double denom = link.interference_power + link.noise_power;
    if (denom == 0.0) {
        if (link.signal_power == 0.0) {
            throw std::domain_error("SINR undefined: signal, interference and noise are all zero");
        }
        return std::numeric_limits<double>::infinity();
    }
    return link.signal_power / denom;
}

}  // namespace drnet::channel
