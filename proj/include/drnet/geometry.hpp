#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "drnet/rng.hpp"

namespace drnet::geometry {

/// Planar position in meters.
struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b) noexcept;

/// Ring {p : r_inner <= |p - center| <= r_outer}. A disk has r_inner = 0.
class Annulus {
public:
    /// Throws std::invalid_argument unless 0 <= r_inner < r_outer (all finite).
    Annulus(Point2D center, double r_inner, double r_outer);

    static Annulus disk(Point2D center, double radius) { return {center, 0.0, radius}; }

    Point2D center() const noexcept { return center_; }
    double r_inner() const noexcept { return r_inner_; }
    double r_outer() const noexcept { return r_outer_; }

    bool contains(Point2D p) const noexcept;

private:
    Point2D center_;
    double r_inner_;
    double r_outer_;
};

/// Points in generation order. The index of a point is its tie-break key.
using PointSet = std::vector<Point2D>;

double region_area(const Annulus& region) noexcept;

/// One point uniform on the region (inverse CDF on the radius).
Point2D sample_uniform(const Annulus& region, Rng& rng);

/// Homogeneous PPP: Poisson(density * area) points, each uniform on the region.
/// Throws std::invalid_argument for a negative or non-finite density.
PointSet sample_ppp(const Annulus& region, double density, Rng& rng);

/// Independent Bernoulli(keep_prob) retention mask, one draw per point.
std::vector<bool> thin_mask(std::size_t count, double keep_prob, Rng& rng);

/// Retains each point independently with probability keep_prob, preserving order.
PointSet thin(const PointSet& points, double keep_prob, Rng& rng);

struct Nearest {
    std::size_t index;
    double distance;
};

/// Closest candidate; ties go to the lowest index. nullopt when candidates is
/// empty (no serving station).
std::optional<Nearest> nearest_point(Point2D query, std::span<const Point2D> candidates);

}  // namespace drnet::geometry
