#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ward {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Geometric tolerance used for on-wall, touching and containment decisions.
constexpr double kGeomEps = 1e-9;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double distance(Point a, Point b);

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double theta);

/// Signed smallest difference b - a, in (-pi, pi].
double angle_diff(double a, double b);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // radians, [0, 2*pi)

    Pose() = default;
    Pose(double x_, double y_, double theta_) : x(x_), y(y_), theta(normalize_angle(theta_)) {}

    Point position() const { return {x, y}; }
    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Simple counter-clockwise polygon. Construction validates the invariants.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point> vertices);

    /// Axis-aligned rectangle [x0, x1] x [y0, y1].
    static Polygon rectangle(double x0, double y0, double x1, double y1);

    std::span<const Point> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    bool empty() const { return vertices_.empty(); }

    double area() const;
    bool is_convex() const;

    struct Box {
        double min_x, min_y, max_x, max_y;
    };
    Box bounds() const;

private:
    std::vector<Point> vertices_;
};

double signed_area(std::span<const Point> pts);

struct Segment {
    Point a;
    Point b;

    double length() const { return distance(a, b); }
    Point direction() const;  // unit vector a -> b
};

double point_segment_distance(Point p, const Segment& s);

/// True when the closed segments share at least one point.
bool segments_touch(const Segment& s, const Segment& t);

/// True when the segments cross at a single point interior to both.
bool segments_cross_properly(const Segment& s, const Segment& t);

/// Intersection parameter along s (0..1) if the segments intersect at a single point.
std::optional<double> segment_intersection_param(const Segment& s, const Segment& t);

enum class SubRoom { main, bathroom };

std::string to_string(SubRoom r);

/// One wall of a sub-room perimeter on the unwrapped chain.
struct WallSegment {
    Segment seg;
    Point inward_normal;
    SubRoom owner = SubRoom::main;
    std::size_t edge_index = 0;  // index of the edge in its owner polygon
    bool shared = false;         // edge also bounds the other sub-room
    bool hallway = false;        // main-door placement is permitted here
    double start_s = 0.0;        // arc length at seg.a

    double length() const { return seg.length(); }
    double end_s() const { return start_s + length(); }
};

struct EdgeTag {
    bool shared = false;
    bool hallway = false;
};

/// Sub-room perimeters laid end to end on a single arc-length axis.
class WallChain {
public:
    std::span<const WallSegment> segments() const { return segments_; }
    double total_length() const { return total_length_; }
    std::size_t segment_index_at(double s) const;
    const WallSegment& segment_at(double s) const { return segments_[segment_index_at(s)]; }

    /// Appends another perimeter, shifting its arc lengths after the current end.
    void append(const WallChain& other);

    friend WallChain unwrap_walls(const Polygon& polygon, std::span<const EdgeTag> tags, SubRoom owner);

private:
    std::vector<WallSegment> segments_;
    double total_length_ = 0.0;
};

/// Unwraps a CCW polygon's edges into a chain starting at vertex 0. `tags` may be empty.
WallChain unwrap_walls(const Polygon& polygon, std::span<const EdgeTag> tags = {},
                       SubRoom owner = SubRoom::main);

/// Point at arc length s, facing into the owning sub-room.
Pose wall_point(const WallChain& chain, double s);

/// Inverse of wall_point. `side` disambiguates walls that appear in both sub-room perimeters.
double wall_coord(const WallChain& chain, Point p, std::optional<SubRoom> side = std::nullopt);

/// Rectangle of size width x depth centred at `center`; width runs along the heading `theta`.
Polygon oriented_rect(Point center, double theta, double width, double depth);

/// Interiors of two convex point sets intersect. Sets of two points are treated as segments.
bool convex_overlap(std::span<const Point> a, std::span<const Point> b);

/// Interior overlap of convex polygons; touching boundaries do not count.
bool polys_overlap(const Polygon& a, const Polygon& b);

/// Point in polygon, boundary inclusive.
bool contains(const Polygon& region, Point p);

/// Every point of `poly` lies in `region` (boundary inclusive). `region` may be non-convex.
bool contains_poly(const Polygon& region, const Polygon& poly);

/// Distance from p to the polygon; zero inside.
double point_polygon_distance(Point p, const Polygon& poly);

bool point_strictly_inside(const Polygon& poly, Point p);

}  // namespace ward
