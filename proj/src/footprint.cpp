#include "ward/footprint.hpp"

#include <cmath>

namespace ward {

ObjectFrame object_frame(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room) {
    if (const auto* pose = std::get_if<Pose>(&placement)) return {pose->position(), pose->theta, std::nullopt};
    if (const auto* pt = std::get_if<Point>(&placement)) return {*pt, 0.0, std::nullopt};
    const double s = std::get<WallCoord>(placement).s;
    const WallChain& chain = room.walls();
    const std::size_t idx = chain.segment_index_at(s);
    const WallSegment& w = chain.segments()[idx];
    const Point d = w.seg.direction();
    const Point on_wall = w.seg.a + (s - w.start_s) * d;
    return {on_wall + (0.5 * obj.depth) * w.inward_normal, std::atan2(d.y, d.x), idx};
}

Polygon footprint(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room) {
    const ObjectFrame f = object_frame(obj, placement, room);
    return oriented_rect(f.center, f.theta, obj.width, obj.depth);
}

std::vector<Polygon> clearance_region(const ObjectSpec& obj, const ObjectFrame& frame) {
    std::vector<Polygon> out;
    if (!obj.clearance || obj.clearance->depth <= 0.0) return out;
    const double c = obj.clearance->depth;
    const Point u{std::cos(frame.theta), std::sin(frame.theta)};
    const Point v{-u.y, u.x};
    for (Side side : obj.clearance->sides) {
        switch (side) {
            case Side::front:
                out.push_back(oriented_rect(frame.center + (0.5 * (obj.depth + c)) * v, frame.theta, obj.width, c));
                break;
            case Side::back:
                out.push_back(oriented_rect(frame.center - (0.5 * (obj.depth + c)) * v, frame.theta, obj.width, c));
                break;
            case Side::right:
                out.push_back(oriented_rect(frame.center + (0.5 * (obj.width + c)) * u, frame.theta, c, obj.depth));
                break;
            case Side::left:
                out.push_back(oriented_rect(frame.center - (0.5 * (obj.width + c)) * u, frame.theta, c, obj.depth));
                break;
        }
    }
    return out;
}

std::vector<Polygon> clearance_region(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room) {
    return clearance_region(obj, object_frame(obj, placement, room));
}

std::optional<Point> interaction_point(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room) {
    if (!obj.interaction_offset) return std::nullopt;
    const ObjectFrame f = object_frame(obj, placement, room);
    const Point u{std::cos(f.theta), std::sin(f.theta)};
    const Point v{-u.y, u.x};
    return f.center + obj.interaction_offset->x * u + obj.interaction_offset->y * v;
}

Segment door_opening(const ObjectSpec& door, const Placement& placement, const RoomSpec& room) {
    const double s = std::get<WallCoord>(placement).s;
    const WallSegment& w = room.walls().segment_at(s);
    const Point d = w.seg.direction();
    const Point mid = w.seg.a + (s - w.start_s) * d;
    return {mid - (0.5 * door.width) * d, mid + (0.5 * door.width) * d};
}

std::vector<Polygon> door_clear_zones(const ObjectSpec& door, const Placement& placement, const RoomSpec& room,
                                      double clear_depth) {
    std::vector<Polygon> out;
    if (clear_depth <= 0.0) return out;
    const double s = std::get<WallCoord>(placement).s;
    const WallSegment& w = room.walls().segment_at(s);
    const Point d = w.seg.direction();
    const Point mid = w.seg.a + (s - w.start_s) * d;
    const double theta = std::atan2(d.y, d.x);
    out.push_back(oriented_rect(mid + (0.5 * clear_depth) * w.inward_normal, theta, door.width, clear_depth));
    if (w.shared)
        out.push_back(oriented_rect(mid - (0.5 * clear_depth) * w.inward_normal, theta, door.width, clear_depth));
    return out;
}

SwingArc door_swing_arc(const ObjectSpec& door, const Placement& placement, const RoomSpec& room) {
    const Segment opening = door_opening(door, placement, room);
    const Point d = opening.direction();
    return {opening.a, door.width, std::atan2(d.y, d.x), kPi / 2.0};
}

Polygon swing_region(const SwingArc& arc, int segments) {
    const double step = arc.sweep / segments;
    auto at = [&](double angle, double r) { return arc.hinge + r * Point{std::cos(angle), std::sin(angle)}; };
    std::vector<Point> v{arc.hinge, at(arc.start_angle, arc.radius)};
    for (int k = 0; k < segments; ++k) v.push_back(at(arc.start_angle + (k + 0.5) * step, arc.radius / std::cos(0.5 * step)));
    v.push_back(at(arc.start_angle + arc.sweep, arc.radius));
    return Polygon(std::move(v));
}

bool SwingArc::contains(Point p) const {
    const Point r = p - hinge;
    const double dist = norm(r);
    if (dist > radius + kGeomEps) return false;
    if (dist < kGeomEps) return true;
    const double rel = normalize_angle(std::atan2(r.y, r.x) - start_angle);
    return rel <= sweep + 1e-12;
}

}  // namespace ward
