#pragma once

#include <optional>
#include <vector>

#include "ward/geometry.hpp"
#include "ward/room_model.hpp"

namespace ward {

/// Footprint-centred frame of a placed object: centre plus heading of the width axis.
struct ObjectFrame {
    Point center;
    double theta = 0.0;  // direction of the +u (width) axis
    std::optional<std::size_t> wall_segment;  // chain index for wall objects and doors
};

ObjectFrame object_frame(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room);

/// Rectangle occupied by the object. Wall objects sit flush with the wall, extruded inward.
Polygon footprint(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room);

/// Rectangles abutting the clearance sides of the footprint; empty without a clearance spec.
std::vector<Polygon> clearance_region(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room);

/// Same as above for a bare frame, used where no room is involved.
std::vector<Polygon> clearance_region(const ObjectSpec& obj, const ObjectFrame& frame);

/// Where the patient stands or sits when using the object.
std::optional<Point> interaction_point(const ObjectSpec& obj, const Placement& placement, const RoomSpec& room);

/// The wall span a door occupies.
Segment door_opening(const ObjectSpec& door, const Placement& placement, const RoomSpec& room);

/// Rectangles in front of a door that must stay free: the owning side, plus the far side when the
/// door sits on a wall shared by both sub-rooms.
std::vector<Polygon> door_clear_zones(const ObjectSpec& door, const Placement& placement, const RoomSpec& room,
                                      double clear_depth);

/// Quarter disc swept by a swinging door leaf, hinged at the start of the opening.
struct SwingArc {
    Point hinge;
    double radius = 0.0;
    double start_angle = 0.0;  // along the wall
    double sweep = kPi / 2.0;  // counter-clockwise toward the room

    bool contains(Point p) const;
};

SwingArc door_swing_arc(const ObjectSpec& door, const Placement& placement, const RoomSpec& room);

/// Convex polygon circumscribing the swept quarter disc.
Polygon swing_region(const SwingArc& arc, int segments = 12);

}  // namespace ward
