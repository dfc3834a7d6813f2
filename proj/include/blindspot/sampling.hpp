#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blindspot/geometry.hpp"
#include "blindspot/rng.hpp"

namespace blindspot::sampling {

using geom::FootPoint;
using geom::ObstacleLine;
using geom::ObstacleSegment;
using geom::Point2;

// Homogeneous PPP on the disk of the given radius around the origin.
// Count is Poisson(intensity * pi * radius^2); positions are uniform
// (angle uniform, radius = R * sqrt(U)).
inline std::vector<Point2> sample_ppp_disk(double intensity, double radius,
                                           rng::RngStream& stream) {
    if (!(intensity >= 0.0)) throw std::invalid_argument("sample_ppp_disk: negative intensity");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_ppp_disk: radius must be > 0");

    const std::uint64_t count = stream.next_poisson(intensity * M_PI * radius * radius);
    std::vector<Point2> points;
    points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double angle = 2.0 * M_PI * stream.next_double();
        const double dist = radius * std::sqrt(stream.next_double());
        points.push_back({dist * std::cos(angle), dist * std::sin(angle)});
    }
    return points;
}

// Line process via its foot-point PPP of intensity lambda0. Feet farther than
// `radius` from the origin are not sampled: such lines never enter the disk
// of radius `radius`, so truncation is exact. Feet at the origin (probability
// zero) are redrawn.
inline std::vector<ObstacleLine> sample_obstacle_lines(double lambda0, double radius,
                                                       rng::RngStream& stream) {
    if (!(lambda0 >= 0.0))
        throw std::invalid_argument("sample_obstacle_lines: negative intensity");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_obstacle_lines: radius must be > 0");

    const double tol = geom::kGeomTolBase * radius;
    const std::uint64_t count = stream.next_poisson(lambda0 * M_PI * radius * radius);
    std::vector<ObstacleLine> lines;
    lines.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        double r = 0.0, phi = 0.0;
        do {
            phi = 2.0 * M_PI * stream.next_double();
            r = radius * std::sqrt(stream.next_double());
        } while (r <= tol);
        lines.push_back({FootPoint{r, phi}});
    }
    return lines;
}

// Same foot process, truncated to segments of half-length L/2 about the foot.
inline std::vector<ObstacleSegment> sample_obstacle_segments(double lambda0, double length,
                                                             double radius,
                                                             rng::RngStream& stream) {
    if (!(length > 0.0))
        throw std::invalid_argument("sample_obstacle_segments: length must be > 0");
    const auto lines = sample_obstacle_lines(lambda0, radius, stream);
    std::vector<ObstacleSegment> segments;
    segments.reserve(lines.size());
    for (const auto& line : lines) segments.push_back({line.foot, 0.5 * length});
    return segments;
}

}  // namespace blindspot::sampling
