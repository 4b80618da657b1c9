#include "drnet/acb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace drnet::acb {

void AcdcProfile::validate() const {
    for (const auto& c : classes) {
        const std::string where = "acb.classes['" + c.name + "']";
        if (c.acdc_category < 1) {
            throw std::invalid_argument(where + ".acdc_category must be >= 1");
        }
        if (!(c.arrival_rate >= 0.0) || !std::isfinite(c.arrival_rate)) {
            throw std::invalid_argument(where + ".arrival_rate_per_s must be >= 0");
        }
        if (!(c.barring_prob >= 0.0 && c.barring_prob <= 1.0)) {
            throw std::invalid_argument(where + ".barring_prob must lie in [0, 1]");
        }
    }
    if (!enforce_monotone) {
        return;
    }
    for (const auto& hi : classes) {
        for (const auto& lo : classes) {
            if (hi.acdc_category < lo.acdc_category && hi.barring_prob < lo.barring_prob) {
                throw std::invalid_argument(
                    "acb.classes['" + hi.name + "'].barring_prob is below that of lower-priority '" +
                    lo.name + "' (monotone profile required)");
            }
        }
    }
}

AccessMetrics admitted_load(const AcdcProfile& profile, double capacity) {
    profile.validate();
    AccessMetrics m;
    for (const auto& c : profile.classes) {
        const double rate = c.barring_prob * c.arrival_rate;
        m.admitted_rate.push_back(rate);
        m.total_admitted += rate;
    }
    m.overload_ratio = m.total_admitted / capacity;
    return m;
}

double ClassAccess::blocking_prob() const noexcept {
    if (arrivals == 0) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(served) / static_cast<double>(arrivals);
}

AccessRun simulate_access(const AcdcProfile& profile, double capacity, double horizon, Rng& rng) {
    profile.validate();
    if (!(capacity > 0.0) || !(horizon > 0.0)) {
        throw std::invalid_argument("acb.capacity_per_s and acb.horizon_s must be > 0");
    }
    const std::size_t n = profile.classes.size();
    AccessRun run;
    run.per_class.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = profile.classes[i];
        auto& acc = run.per_class[i];
        if (c.arrival_rate > 0.0) {
            std::poisson_distribution<std::uint64_t> arrivals(c.arrival_rate * horizon);
            acc.arrivals = arrivals(rng);
        }
        std::bernoulli_distribution pass(c.barring_prob);
        for (std::uint64_t k = 0; k < acc.arrivals; ++k) {
            acc.passed_barring += pass(rng) ? 1 : 0;
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return profile.classes[a].acdc_category < profile.classes[b].acdc_category;
    });
    auto slots = static_cast<std::uint64_t>(std::floor(capacity * horizon));
    for (std::size_t i : order) {
        auto& acc = run.per_class[i];
        acc.served = std::min(acc.passed_barring, slots);
        slots -= acc.served;
    }

    std::uint64_t offered = 0;
    for (const auto& acc : run.per_class) {
        const double rate = static_cast<double>(acc.served) / horizon;
        run.metrics.admitted_rate.push_back(rate);
        run.metrics.total_admitted += rate;
        offered += acc.passed_barring;
    }
    run.metrics.overload_ratio = static_cast<double>(offered) / horizon / capacity;
    return run;
}

}  // namespace drnet::acb
