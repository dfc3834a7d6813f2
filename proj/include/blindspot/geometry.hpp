#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace blindspot::geom {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator*(double s, const Point2& p) { return {s * p.x, s * p.y}; }
inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }

// Perpendicular foot of the origin on an obstacle line, in polar form.
// phi is kept in [0, 2*pi).
struct FootPoint {
    double r = 0.0;
    double phi = 0.0;

    FootPoint() = default;
    FootPoint(double r_, double phi_) : r(r_), phi(phi_) {
        if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(phi))
            throw std::invalid_argument("FootPoint: r must be finite and >= 0");
        constexpr double two_pi = 2.0 * M_PI;
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) phi += two_pi;
    }

    Point2 cartesian() const { return {r * std::cos(phi), r * std::sin(phi)}; }
};

// The line x*cos(phi) + y*sin(phi) = r.
struct ObstacleLine {
    FootPoint foot;
};

// Segment of length 2*half_length centered at the foot point, lying on the
// foot's line.
struct ObstacleSegment {
    FootPoint foot;
    double half_length = 0.0;

    Point2 endpoint_a() const {
        const Point2 p = foot.cartesian();
        return {p.x + half_length * std::sin(foot.phi), p.y - half_length * std::cos(foot.phi)};
    }
    Point2 endpoint_b() const {
        const Point2 p = foot.cartesian();
        return {p.x - half_length * std::sin(foot.phi), p.y + half_length * std::cos(foot.phi)};
    }
};

// Convex polygon, vertices counter-clockwise. Empty vertex list = empty set.
struct ConvexPolygon {
    std::vector<Point2> vertices;

    bool empty() const { return vertices.size() < 3; }

    static ConvexPolygon axis_aligned_square(double halfwidth) {
        return {{{-halfwidth, -halfwidth},
                 {halfwidth, -halfwidth},
                 {halfwidth, halfwidth},
                 {-halfwidth, halfwidth}}};
    }
};

inline constexpr double kGeomTolBase = 1e-9;

// Point on the line plus its (unit) direction.
struct LinePointDir {
    Point2 point;
    Point2 direction;
};

inline LinePointDir line_from_foot(const FootPoint& foot) {
    return {{foot.r * std::cos(foot.phi), foot.r * std::sin(foot.phi)},
            {-std::sin(foot.phi), std::cos(foot.phi)}};
}

namespace detail {

inline double scale_of(std::initializer_list<Point2> pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max({s, std::fabs(p.x), std::fabs(p.y)});
    return s;
}

}  // namespace detail

// Closed-segment intersection test. Endpoint touching counts.
inline bool segments_intersect(const Point2& a1, const Point2& a2,
                               const Point2& b1, const Point2& b2) {
    const double tol = kGeomTolBase * detail::scale_of({a1, a2, b1, b2});

    const Point2 da = a2 - a1;
    const Point2 db = b2 - b1;
    const double d1 = cross(da, b1 - a1);
    const double d2 = cross(da, b2 - a1);
    const double d3 = cross(db, a1 - b1);
    const double d4 = cross(db, a2 - b1);

    const auto sgn = [tol](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
    const int s1 = sgn(d1), s2 = sgn(d2), s3 = sgn(d3), s4 = sgn(d4);

    if (s1 * s2 < 0 && s3 * s4 < 0) return true;

    // Collinear / touching cases: check 1D overlap along the dominant axis.
    const auto on_segment = [tol](const Point2& p, const Point2& q1, const Point2& q2) {
        return p.x >= std::min(q1.x, q2.x) - tol && p.x <= std::max(q1.x, q2.x) + tol &&
               p.y >= std::min(q1.y, q2.y) - tol && p.y <= std::max(q1.y, q2.y) + tol;
    };
    if (s1 == 0 && on_segment(b1, a1, a2)) return true;
    if (s2 == 0 && on_segment(b2, a1, a2)) return true;
    if (s3 == 0 && on_segment(a1, b1, b2)) return true;
    if (s4 == 0 && on_segment(a2, b1, b2)) return true;
    return false;
}

// LoS between target and anchor against infinite-line obstacles.
// Blocked iff target and anchor are on opposite sides of (or on) some line.
inline bool los_visible(const Point2& target, const Point2& anchor,
                        const std::vector<ObstacleLine>& obstacles) {
    const double tol = kGeomTolBase * detail::scale_of({target, anchor});
    if (norm(anchor - target) <= tol)
        throw std::invalid_argument("los_visible: target and anchor coincide");
    for (const auto& ob : obstacles) {
        const Point2 n{std::cos(ob.foot.phi), std::sin(ob.foot.phi)};
        const double st = dot(target, n) - ob.foot.r;
        const double sa = dot(anchor, n) - ob.foot.r;
        // Same strict side of the line keeps LoS; anything else blocks.
        if (!(st < 0.0 && sa < 0.0) && !(st > 0.0 && sa > 0.0)) return false;
    }
    return true;
}

inline bool los_visible(const Point2& target, const Point2& anchor,
                        const std::vector<ObstacleSegment>& obstacles) {
    const double tol = kGeomTolBase * detail::scale_of({target, anchor});
    if (norm(anchor - target) <= tol)
        throw std::invalid_argument("los_visible: target and anchor coincide");
    for (const auto& ob : obstacles) {
        if (segments_intersect(target, anchor, ob.endpoint_a(), ob.endpoint_b())) return false;
    }
    return true;
}

// Sutherland-Hodgman step for the half-plane {q : q.n <= r} containing the
// origin (r > 0).
inline ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const ObstacleLine& line) {
    if (poly.vertices.empty()) return {};
    const Point2 n{std::cos(line.foot.phi), std::sin(line.foot.phi)};
    const double r = line.foot.r;

    ConvexPolygon out;
    out.vertices.reserve(poly.vertices.size() + 1);
    const size_t m = poly.vertices.size();
    for (size_t i = 0; i < m; ++i) {
        const Point2& cur = poly.vertices[i];
        const Point2& nxt = poly.vertices[(i + 1) % m];
        const double sc = dot(cur, n) - r;
        const double sn = dot(nxt, n) - r;
        if (sc <= 0.0) out.vertices.push_back(cur);
        if ((sc < 0.0) != (sn < 0.0) && sc != sn) {
            const double t = sc / (sc - sn);
            if (t > 0.0 && t < 1.0) out.vertices.push_back(cur + t * (nxt - cur));
        }
    }
    if (out.vertices.size() < 3) return {};
    return out;
}

// Shoelace area; CCW input gives a non-negative result.
inline double polygon_area(const ConvexPolygon& poly) {
    if (poly.vertices.size() < 3) return 0.0;
    double twice = 0.0;
    const size_t m = poly.vertices.size();
    for (size_t i = 0; i < m; ++i) {
        const Point2& a = poly.vertices[i];
        const Point2& b = poly.vertices[(i + 1) % m];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

struct OriginCell {
    ConvexPolygon cell;
    // True if some vertex lies on the bounding window, i.e. the cell may be
    // window-truncated rather than closed by the lines alone.
    bool touches_window = false;
};

// Cell of the line tessellation containing the origin, clipped to the square
// window [-W, W]^2. Lines are processed nearest-first so that lines farther
// than every current vertex can be skipped outright.
inline OriginCell cell_containing_origin(std::vector<ObstacleLine> lines,
                                         double window_halfwidth) {
    if (!(window_halfwidth > 0.0))
        throw std::invalid_argument("cell_containing_origin: window halfwidth must be > 0");
    for (const auto& l : lines) {
        if (l.foot.r <= kGeomTolBase * std::max(1.0, window_halfwidth))
            throw std::invalid_argument("cell_containing_origin: line through the origin");
    }
    std::sort(lines.begin(), lines.end(),
              [](const ObstacleLine& a, const ObstacleLine& b) { return a.foot.r < b.foot.r; });

    OriginCell result;
    result.cell = ConvexPolygon::axis_aligned_square(window_halfwidth);
    double max_vertex_norm = window_halfwidth * std::sqrt(2.0);
    for (const auto& line : lines) {
        if (line.foot.r >= max_vertex_norm) break;
        result.cell = clip_halfplane(result.cell, line);
        max_vertex_norm = 0.0;
        for (const auto& v : result.cell.vertices)
            max_vertex_norm = std::max(max_vertex_norm, norm(v));
    }

    const double tol = kGeomTolBase * std::max(1.0, window_halfwidth);
    for (const auto& v : result.cell.vertices) {
        if (std::fabs(std::fabs(v.x) - window_halfwidth) <= tol ||
            std::fabs(std::fabs(v.y) - window_halfwidth) <= tol) {
            result.touches_window = true;
            break;
        }
    }
    return result;
}

inline bool contains(const ConvexPolygon& poly, const Point2& p) {
    if (poly.vertices.size() < 3) return false;
    const size_t m = poly.vertices.size();
    for (size_t i = 0; i < m; ++i) {
        const Point2& a = poly.vertices[i];
        const Point2& b = poly.vertices[(i + 1) % m];
        if (cross(b - a, p - a) < 0.0) return false;
    }
    return true;
}

}  // namespace blindspot::geom
