#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "drnet/rng.hpp"

namespace drnet::acb {

struct AcdcClass {
    std::string name;
    int acdc_category = 1;      ///< 1 is the highest priority
    double arrival_rate = 0.0;  ///< requests/s
    double barring_prob = 1.0;  ///< probability a request passes barring
};

struct AcdcProfile {
    std::vector<AcdcClass> classes;
    /// When set, a lower category must never be barred harder than a higher one.
    bool enforce_monotone = true;

    /// Throws std::invalid_argument naming the offending class.
    void validate() const;
};

struct AccessMetrics {
    std::vector<double> admitted_rate;  ///< per class, requests/s
    double total_admitted = 0.0;
    double overload_ratio = 0.0;  ///< offered-after-barring / capacity
};

/// Mean-value admitted load: barring_prob * arrival_rate per class.
AccessMetrics admitted_load(const AcdcProfile& profile,
                            double capacity = std::numeric_limits<double>::infinity());

struct ClassAccess {
    std::uint64_t arrivals = 0;
    std::uint64_t passed_barring = 0;
    std::uint64_t served = 0;

    /// Fraction of arrivals that were not served (0 without arrivals).
    double blocking_prob() const noexcept;
    double admission_prob() const noexcept { return 1.0 - blocking_prob(); }
};

struct AccessRun {
    AccessMetrics metrics;  ///< admitted_rate counts served requests only
    std::vector<ClassAccess> per_class;
};

/// Poisson arrivals over the horizon, Bernoulli barring per request, then at
/// most floor(capacity * horizon) requests served in ascending acdc_category
/// (class order breaks ties). Throws std::invalid_argument for capacity <= 0
/// or horizon <= 0.
AccessRun simulate_access(const AcdcProfile& profile, double capacity, double horizon, Rng& rng);

}  // namespace drnet::acb
