#include "drnet/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace drnet::geometry {

double distance(Point2D a, Point2D b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

Annulus::Annulus(Point2D center, double r_inner, double r_outer)
    : center_(center), r_inner_(r_inner), r_outer_(r_outer) {
    if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
        throw std::invalid_argument("annulus center must be finite");
    }
    if (!std::isfinite(r_inner) || !std::isfinite(r_outer) || r_inner < 0.0 ||
        !(r_inner < r_outer)) {
        throw std::invalid_argument("annulus requires 0 <= r_inner < r_outer, got r_inner=" +
                                    std::to_string(r_inner) +
                                    " r_outer=" + std::to_string(r_outer));
    }
}

bool Annulus::contains(Point2D p) const noexcept {
    const double r = distance(p, center_);
    return r >= r_inner_ && r <= r_outer_;
}

double region_area(const Annulus& region) noexcept {
    return std::numbers::pi *
           (region.r_outer() * region.r_outer() - region.r_inner() * region.r_inner());
}

Point2D sample_uniform(const Annulus& region, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double ri2 = region.r_inner() * region.r_inner();
    const double ro2 = region.r_outer() * region.r_outer();
    double r = std::sqrt(ri2 + unit(rng) * (ro2 - ri2));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Point2D center = region.center();

    // Rounding in the translation can push |p - center| a few ulps past the
    // bounds; walk the radius back inside.
    Point2D p{center.x + r * c, center.y + r * s};
    for (int guard = 0; guard < 64 && !region.contains(p); ++guard) {
        const double d = distance(p, center);
        r = d > region.r_outer() ? std::nextafter(r, 0.0) : std::nextafter(r, ro2);
        p = {center.x + r * c, center.y + r * s};
    }
    return p;
}

PointSet sample_ppp(const Annulus& region, double density, Rng& rng) {
    if (!std::isfinite(density) || density < 0.0) {
        throw std::invalid_argument("PPP density must be finite and >= 0");
    }
    PointSet points;
    if (density == 0.0) {
        return points;
    }
    std::poisson_distribution<long long> count_dist(density * region_area(region));
    const long long n = count_dist(rng);
    points.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        points.push_back(sample_uniform(region, rng));
    }
    return points;
}

std::vector<bool> thin_mask(std::size_t count, double keep_prob, Rng& rng) {
    if (!(keep_prob >= 0.0 && keep_prob <= 1.0)) {
        throw std::invalid_argument("keep probability must lie in [0, 1]");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<bool> keep(count);
    for (std::size_t i = 0; i < count; ++i) {
        keep[i] = unit(rng) < keep_prob;
    }
    return keep;
}

PointSet thin(const PointSet& points, double keep_prob, Rng& rng) {
    const auto keep = thin_mask(points.size(), keep_prob, rng);
    PointSet out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i]) {
            out.push_back(points[i]);
        }
    }
    return out;
}

std::optional<Nearest> nearest_point(Point2D query, std::span<const Point2D> candidates) {
    if (candidates.empty()) {
        return std::nullopt;
    }
    Nearest best{0, distance(query, candidates[0])};
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double d = distance(query, candidates[i]);
        if (d < best.distance) {
            best = {i, d};
        }
    }
    return best;
}

}  // namespace drnet::geometry
