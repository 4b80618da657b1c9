#pragma once

#include <random>

#include "drnet/rng.hpp"

namespace drnet::channel {

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

/// 10*log10(x). Throws std::domain_error for x <= 0.
double to_db(double linear);
double from_db(double db);
/// Power in dBm to watts (0 dBm = 1 mW).
double dbm_to_watts(double dbm);
/// Throws std::domain_error for watts <= 0.
double watts_to_dbm(double watts);

enum class FadingModel { Rayleigh, None };

struct ChannelParams {
    double path_loss_exponent = 4.0;
    double reference_gain = 1.0;  ///< linear gain at 1 m
    double noise_power = 0.0;     ///< watts; 0 gives pure SIR
    double sinr_threshold = 0.1;  ///< linear, -10 dB
    double min_distance = 1.0;    ///< meters; shorter links are clamped here
    FadingModel fading = FadingModel::Rayleigh;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// reference_gain * max(d, min_distance)^-alpha. Throws std::domain_error for d <= 0.
double path_gain(double distance, const ChannelParams& params);

/// Free-space (lambda / (4 pi d))^2 with lambda = c / f.
/// Throws std::domain_error for non-positive inputs.
double friis_gain(double distance, double frequency);

/// Exp(1) power gain of a Rayleigh-faded link.
template <class Urbg>
double sample_fading(Urbg& rng) {
    std::exponential_distribution<double> exp1(1.0);
    return exp1(rng);
}

inline double sample_fading(FadingModel model, Rng& rng) {
    return model == FadingModel::Rayleigh ? sample_fading(rng) : 1.0;
}

struct LinkSample {
    double signal_power = 0.0;
    double interference_power = 0.0;
    double noise_power = 0.0;
};

/// S / (I + N). +inf when I = N = 0 and S > 0; throws std::domain_error when all
/// three are zero or any is negative.
double compute_sinr(const LinkSample& link);

}  // namespace drnet::channel
