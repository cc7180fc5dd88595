#include "ward/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ward {

double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(a - b); }

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

double angle_diff(double a, double b) {
    double d = std::fmod(b - a, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    if (d > kPi) d -= kTwoPi;
    return d;
}

double signed_area(std::span<const Point> pts) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % pts.size()];
        acc += cross(p, q);
    }
    return 0.5 * acc;
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]) < kGeomEps)
            throw GeometryError("polygon has repeated consecutive vertices");
    }
    const double a = signed_area(vertices_);
    if (std::abs(a) < 1e-12) throw GeometryError("degenerate polygon (zero area)");
    if (a < 0.0) throw GeometryError("polygon must be counter-clockwise");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Segment s{vertices_[i], vertices_[(i + 1) % n]};
            const Segment t{vertices_[j], vertices_[(j + 1) % n]};
            if (segments_touch(s, t)) throw GeometryError("polygon is self-intersecting");
        }
    }
}

Polygon Polygon::rectangle(double x0, double y0, double x1, double y1) {
    return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

double Polygon::area() const { return signed_area(vertices_); }

bool Polygon::is_convex() const {
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = vertices_[i];
        const Point b = vertices_[(i + 1) % n];
        const Point c = vertices_[(i + 2) % n];
        if (cross(b - a, c - b) < -kGeomEps) return false;
    }
    return true;
}

Polygon::Box Polygon::bounds() const {
    Box b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : vertices_) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

Point Segment::direction() const {
    const double len = length();
    return {(b.x - a.x) / len, (b.y - a.y) / len};
}

double point_segment_distance(Point p, const Segment& s) {
    const Point d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, s.a);
    const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return distance(p, s.a + t * d);
}

bool segments_touch(const Segment& s, const Segment& t) {
    if (point_segment_distance(s.a, t) < kGeomEps || point_segment_distance(s.b, t) < kGeomEps ||
        point_segment_distance(t.a, s) < kGeomEps || point_segment_distance(t.b, s) < kGeomEps)
        return true;
    return segments_cross_properly(s, t);
}

bool segments_cross_properly(const Segment& s, const Segment& t) {
    const double d1 = cross(s.b - s.a, t.a - s.a);
    const double d2 = cross(s.b - s.a, t.b - s.a);
    const double d3 = cross(t.b - t.a, s.a - t.a);
    const double d4 = cross(t.b - t.a, s.b - t.a);
    return ((d1 > kGeomEps && d2 < -kGeomEps) || (d1 < -kGeomEps && d2 > kGeomEps)) &&
           ((d3 > kGeomEps && d4 < -kGeomEps) || (d3 < -kGeomEps && d4 > kGeomEps));
}

std::optional<double> segment_intersection_param(const Segment& s, const Segment& t) {
    const Point r = s.b - s.a;
    const Point q = t.b - t.a;
    const double denom = cross(r, q);
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const double u = cross(t.a - s.a, q) / denom;
    const double v = cross(t.a - s.a, r) / denom;
    const double tol = 1e-12;
    if (u < -tol || u > 1.0 + tol || v < -tol || v > 1.0 + tol) return std::nullopt;
    return std::clamp(u, 0.0, 1.0);
}

std::string to_string(SubRoom r) { return r == SubRoom::main ? "main" : "bathroom"; }

std::size_t WallChain::segment_index_at(double s) const {
    if (segments_.empty() || !(s >= 0.0) || s >= total_length_)
        throw std::domain_error("wall coordinate out of range");
    auto it = std::upper_bound(segments_.begin(), segments_.end(), s,
                               [](double v, const WallSegment& w) { return v < w.start_s; });
    return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

void WallChain::append(const WallChain& other) {
    for (WallSegment w : other.segments_) {
        w.start_s += total_length_;
        segments_.push_back(w);
    }
    total_length_ += other.total_length_;
}

WallChain unwrap_walls(const Polygon& polygon, std::span<const EdgeTag> tags, SubRoom owner) {
    if (polygon.size() < 3 || std::abs(polygon.area()) < 1e-12)
        throw GeometryError("cannot unwrap a degenerate polygon");
    if (!tags.empty() && tags.size() != polygon.size())
        throw GeometryError("edge tag count does not match polygon edge count");
    WallChain chain;
    double s = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        WallSegment w;
        w.seg = {polygon[i], polygon[(i + 1) % polygon.size()]};
        const Point d = w.seg.direction();
        w.inward_normal = {-d.y, d.x};  // left of travel for CCW
        w.owner = owner;
        w.edge_index = i;
        if (!tags.empty()) {
            w.shared = tags[i].shared;
            w.hallway = tags[i].hallway;
        }
        w.start_s = s;
        s += w.length();
        chain.segments_.push_back(w);
    }
    chain.total_length_ = s;
    return chain;
}

Pose wall_point(const WallChain& chain, double s) {
    const WallSegment& w = chain.segment_at(s);
    const Point d = w.seg.direction();
    const Point p = w.seg.a + (s - w.start_s) * d;
    return Pose(p.x, p.y, std::atan2(w.inward_normal.y, w.inward_normal.x));
}

double wall_coord(const WallChain& chain, Point p, std::optional<SubRoom> side) {
    double best_dist = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    for (const WallSegment& w : chain.segments()) {
        if (side && w.owner != *side) continue;
        const double dist = point_segment_distance(p, w.seg);
        if (dist < best_dist) {
            best_dist = dist;
            const double t = std::clamp(dot(p - w.seg.a, w.seg.direction()), 0.0, w.length());
            best_s = w.start_s + t;
        }
    }
    if (best_dist > 1e-6) throw GeometryError("point is not on any wall");
    if (best_s >= chain.total_length()) best_s -= chain.total_length();
    return best_s;
}

Polygon oriented_rect(Point center, double theta, double width, double depth) {
    const Point u{std::cos(theta), std::sin(theta)};
    const Point v{-u.y, u.x};
    const double hw = 0.5 * width;
    const double hd = 0.5 * depth;
    return Polygon({center - hw * u - hd * v, center + hw * u - hd * v, center + hw * u + hd * v,
                    center - hw * u + hd * v});
}

namespace {

void project(std::span<const Point> pts, Point axis, double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const Point& p : pts) {
        const double v = dot(p, axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}

bool separated_on_edges(std::span<const Point> src, std::span<const Point> a, std::span<const Point> b) {
    const std::size_t n = src.size();
    const std::size_t edges = n == 2 ? 1 : n;
    for (std::size_t i = 0; i < edges; ++i) {
        const Point e = src[(i + 1) % n] - src[i];
        const double len = norm(e);
        if (len < 1e-15) continue;
        const Point axis{-e.y / len, e.x / len};
        double alo, ahi, blo, bhi;
        project(a, axis, alo, ahi);
        project(b, axis, blo, bhi);
        if (ahi <= blo + kGeomEps || bhi <= alo + kGeomEps) return true;
    }
    return false;
}

}  // namespace

bool convex_overlap(std::span<const Point> a, std::span<const Point> b) {
    if (a.size() < 2 || b.size() < 2) return false;
    return !separated_on_edges(a, a, b) && !separated_on_edges(b, a, b);
}

bool polys_overlap(const Polygon& a, const Polygon& b) { return convex_overlap(a.vertices(), b.vertices()); }

bool contains(const Polygon& region, Point p) {
    const std::size_t n = region.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_distance(p, {region[i], region[(i + 1) % n]}) < kGeomEps) return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& pi = region[i];
        const Point& pj = region[j];
        if ((pi.y > p.y) != (pj.y > p.y)) {
            const double x_cross = pj.x + (p.y - pj.y) * (pi.x - pj.x) / (pi.y - pj.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool point_strictly_inside(const Polygon& poly, Point p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_distance(p, {poly[i], poly[(i + 1) % n]}) < kGeomEps) return false;
    }
    return contains(poly, p);
}

bool contains_poly(const Polygon& region, const Polygon& poly) {
    const std::size_t n = poly.size();
    const std::size_t m = region.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Segment e{poly[i], poly[(i + 1) % n]};
        const Point d = e.b - e.a;
        const double len2 = dot(d, d);
        // Split the edge wherever it meets the region boundary and test each piece's midpoint.
        std::vector<double> cuts{0.0, 1.0};
        for (std::size_t j = 0; j < m; ++j) {
            const Segment r{region[j], region[(j + 1) % m]};
            if (auto t = segment_intersection_param(e, r)) cuts.push_back(*t);
            for (Point q : {r.a, r.b}) {
                if (point_segment_distance(q, e) < kGeomEps && len2 > 0.0)
                    cuts.push_back(std::clamp(dot(q - e.a, d) / len2, 0.0, 1.0));
            }
        }
        std::sort(cuts.begin(), cuts.end());
        if (!contains(region, e.a)) return false;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            if (cuts[k + 1] - cuts[k] < 1e-12) continue;
            const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
            if (!contains(region, e.a + mid * d)) return false;
        }
    }
    return true;
}

double point_polygon_distance(Point p, const Polygon& poly) {
    if (contains(poly, p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, point_segment_distance(p, {poly[i], poly[(i + 1) % n]}));
    return best;
}

}  // namespace ward
