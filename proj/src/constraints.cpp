#include "ward/constraints.hpp"

#include <algorithm>
#include <optional>

#include "ward/footprint.hpp"

namespace ward {

std::string to_string(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::in_bounds: return "InBounds";
        case ConstraintKind::no_overlap: return "NoOverlap";
        case ConstraintKind::clearance: return "Clearance";
        case ConstraintKind::sub_room_membership: return "SubRoomMembership";
        case ConstraintKind::wall_adjacency: return "WallAdjacency";
        case ConstraintKind::one_light_per_sub_room: return "OneLightPerSubRoom";
        case ConstraintKind::bathroom_door_on_shared_wall: return "BathroomDoorOnSharedWall";
        case ConstraintKind::hallway_door_typology: return "HallwayDoorTypology";
        case ConstraintKind::door_not_blocked: return "DoorNotBlocked";
    }
    return "?";
}

bool involves(const Constraint& c, std::size_t index) {
    if (c.kind == ConstraintKind::clearance || c.kind == ConstraintKind::door_not_blocked) return true;
    return std::find(c.objects.begin(), c.objects.end(), index) != c.objects.end();
}

namespace {

struct Sink {
    std::vector<Violation>* out = nullptr;
    const Problem* problem = nullptr;

    // Returns false so callers can `return sink.fail(...)`.
    bool fail(const Constraint& c, std::vector<std::size_t> objs, std::string msg) const {
        if (out) {
            Violation v{c.kind, {}, std::move(msg)};
            for (std::size_t i : objs) v.object_ids.push_back(problem->objects[i].id);
            out->push_back(std::move(v));
        }
        return false;
    }
};

bool in_required_room(const ObjectSpec& obj, RoomClass cls) {
    switch (obj.sub_room) {
        case RoomRequirement::main: return cls == RoomClass::main;
        case RoomRequirement::bathroom: return cls == RoomClass::bathroom;
        case RoomRequirement::either: return cls == RoomClass::main || cls == RoomClass::bathroom;
    }
    return false;
}

RoomClass classify(const ObjectSpec& obj, const Placement& pl, const RoomSpec& room) {
    if (const auto* pt = std::get_if<Point>(&pl)) {
        if (contains(room.main_room(), *pt)) return RoomClass::main;
        if (contains(room.bathroom(), *pt)) return RoomClass::bathroom;
        return RoomClass::outside;
    }
    return sub_room_of(footprint(obj, pl, room), room);
}

// Footprints of every assigned, colliding object except `skip`.
std::vector<std::pair<std::size_t, Polygon>> obstacles(const PartialLayout& layout, const Problem& p,
                                                       std::size_t skip) {
    std::vector<std::pair<std::size_t, Polygon>> out;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (i == skip || !layout[i] || !p.objects[i].has_footprint_collisions()) continue;
        out.emplace_back(i, footprint(p.objects[i], *layout[i], p.room));
    }
    return out;
}

bool evaluate(const Constraint& c, const PartialLayout& layout, const Problem& p, const Sink& sink) {
    const RoomSpec& room = p.room;
    auto assigned = [&](std::size_t i) { return i < layout.size() && layout[i].has_value(); };

    switch (c.kind) {
        case ConstraintKind::in_bounds: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            const RoomClass cls = classify(p.objects[i], *layout[i], room);
            if (cls == RoomClass::main || cls == RoomClass::bathroom) return true;
            return sink.fail(c, {i}, cls == RoomClass::outside ? "object lies outside the room"
                                                               : "object straddles the two sub-rooms");
        }
        case ConstraintKind::sub_room_membership: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            const RoomClass cls = classify(p.objects[i], *layout[i], room);
            if (in_required_room(p.objects[i], cls)) return true;
            return sink.fail(c, {i}, "object lies in " + to_string(cls) + ", requires " + to_string(p.objects[i].sub_room));
        }
        case ConstraintKind::wall_adjacency: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            const ObjectSpec& obj = p.objects[i];
            const auto* wc = std::get_if<WallCoord>(&*layout[i]);
            if (!wc) return sink.fail(c, {i}, "placement is not a wall coordinate");
            if (!(wc->s >= 0.0 && wc->s < room.walls().total_length()))
                return sink.fail(c, {i}, "wall coordinate out of range");
            const WallSegment& w = room.walls().segment_at(wc->s);
            const bool owner_ok = obj.sub_room == RoomRequirement::either ||
                                  (obj.sub_room == RoomRequirement::main) == (w.owner == SubRoom::main);
            if (!owner_ok) return sink.fail(c, {i}, "mounted on a " + to_string(w.owner) + " wall");
            const double half = 0.5 * obj.width;
            if (wc->s - w.start_s < half - kGeomEps || w.end_s() - wc->s < half - kGeomEps)
                return sink.fail(c, {i}, "overhangs the end of its wall segment");
            const Polygon fp = footprint(obj, *layout[i], room);
            const Point back_mid = 0.5 * (fp[0] + fp[1]);
            if (point_segment_distance(back_mid, w.seg) > 1e-6) return sink.fail(c, {i}, "back edge is off the wall");
            return true;
        }
        case ConstraintKind::no_overlap: {
            bool ok = true;
            std::vector<std::pair<std::size_t, Polygon>> fps;
            for (std::size_t i : c.objects)
                if (assigned(i)) fps.emplace_back(i, footprint(p.objects[i], *layout[i], room));
            for (std::size_t a = 0; a < fps.size(); ++a) {
                for (std::size_t b = a + 1; b < fps.size(); ++b) {
                    if (polys_overlap(fps[a].second, fps[b].second)) {
                        ok = sink.fail(c, {fps[a].first, fps[b].first}, "footprints overlap");
                        if (!sink.out) return false;
                    }
                }
            }
            return ok;
        }
        case ConstraintKind::clearance: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            ObjectSpec obj = p.objects[i];
            if (!obj.clearance) return true;
            obj.clearance->depth = c.distance;
            const auto regions = clearance_region(obj, *layout[i], room);
            bool ok = true;
            for (const Polygon& r : regions) {
                if (!contains_poly(room.main_room(), r) && !contains_poly(room.bathroom(), r)) {
                    ok = sink.fail(c, {i}, "clearance area extends outside the sub-room");
                    if (!sink.out) return false;
                }
            }
            for (const auto& [j, fp] : obstacles(layout, p, i)) {
                for (const Polygon& r : regions) {
                    if (polys_overlap(r, fp)) {
                        ok = sink.fail(c, {i, j}, "object intrudes on the clearance area");
                        if (!sink.out) return false;
                        break;
                    }
                }
            }
            return ok;
        }
        case ConstraintKind::one_light_per_sub_room: {
            std::size_t in_main = 0, in_bath = 0;
            for (std::size_t i : c.objects) {
                if (!assigned(i)) return true;
                const RoomClass cls = classify(p.objects[i], *layout[i], room);
                in_main += cls == RoomClass::main;
                in_bath += cls == RoomClass::bathroom;
            }
            if (in_main == 1 && in_bath == 1) return true;
            return sink.fail(c, c.objects,
                             std::to_string(in_main) + " light(s) in the main room, " + std::to_string(in_bath) +
                                 " in the bathroom");
        }
        case ConstraintKind::bathroom_door_on_shared_wall: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            const auto* wc = std::get_if<WallCoord>(&*layout[i]);
            if (!wc) return sink.fail(c, {i}, "placement is not a wall coordinate");
            const WallSegment& w = room.walls().segment_at(wc->s);
            if (w.shared && w.owner == SubRoom::main) return true;
            return sink.fail(c, {i}, "door is not on a wall between the bathroom and the main room");
        }
        case ConstraintKind::hallway_door_typology: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            const auto* wc = std::get_if<WallCoord>(&*layout[i]);
            if (!wc) return sink.fail(c, {i}, "placement is not a wall coordinate");
            const WallSegment& w = room.walls().segment_at(wc->s);
            if (c.typology == room.typology() && w.owner == SubRoom::main && w.hallway &&
                room.typology_walls().count(w.edge_index))
                return true;
            return sink.fail(c, {i}, "door is on a wall not permitted for the room typology");
        }
        case ConstraintKind::door_not_blocked: {
            const std::size_t i = c.objects.at(0);
            if (!assigned(i)) return true;
            auto zones = door_clear_zones(p.objects[i], *layout[i], room, c.distance);
            if (room.door_operation() == DoorOperation::swinging)
                zones.push_back(swing_region(door_swing_arc(p.objects[i], *layout[i], room)));
            bool ok = true;
            for (const auto& [j, fp] : obstacles(layout, p, i)) {
                for (const Polygon& z : zones) {
                    if (polys_overlap(z, fp)) {
                        ok = sink.fail(c, {i, j}, "object blocks the doorway");
                        if (!sink.out) return false;
                        break;
                    }
                }
            }
            return ok;
        }
    }
    return true;
}

}  // namespace

bool check(const Constraint& c, const PartialLayout& layout, const Problem& problem) {
    return evaluate(c, layout, problem, Sink{nullptr, &problem});
}

std::vector<Violation> validate(const Layout& layout, const ConstraintSet& cs, const Problem& problem) {
    std::vector<Violation> out;
    if (layout.placements.size() != problem.objects.size()) {
        out.push_back({ConstraintKind::in_bounds, {}, "layout size does not match the object list"});
        return out;
    }
    for (std::size_t i = 0; i < layout.placements.size(); ++i) {
        if (!placement_matches(problem.objects[i], layout.placements[i])) {
            out.push_back({ConstraintKind::in_bounds, {problem.objects[i].id}, "placement kind does not match the object"});
        }
    }
    if (!out.empty()) return out;
    const PartialLayout partial = to_partial(layout);
    for (const Constraint& c : cs) evaluate(c, partial, problem, Sink{&out, &problem});
    return out;
}

ConstraintSet default_constraints(const Problem& problem) {
    ConstraintSet cs;
    std::vector<std::size_t> colliding;
    std::vector<std::size_t> lights;
    for (std::size_t i = 0; i < problem.objects.size(); ++i) {
        const ObjectSpec& o = problem.objects[i];
        cs.push_back({ConstraintKind::in_bounds, {i}});
        cs.push_back({ConstraintKind::sub_room_membership, {i}});
        if (o.on_wall()) cs.push_back({ConstraintKind::wall_adjacency, {i}});
        if (o.clearance && !o.clearance->sides.empty())
            cs.push_back({ConstraintKind::clearance, {i}, o.clearance->depth});
        if (o.kind == DomainKind::door) {
            if (o.door_role == DoorRole::bathroom) cs.push_back({ConstraintKind::bathroom_door_on_shared_wall, {i}});
            if (o.door_role == DoorRole::hallway)
                cs.push_back({ConstraintKind::hallway_door_typology, {i}, 0.0, problem.room.typology()});
            cs.push_back({ConstraintKind::door_not_blocked, {i}, problem.constraint_options.door_clear_depth});
        }
        if (o.kind == DomainKind::ceiling_light) lights.push_back(i);
        if (o.has_footprint_collisions()) colliding.push_back(i);
    }
    if (colliding.size() >= 2) cs.push_back({ConstraintKind::no_overlap, colliding});
    if (!lights.empty()) cs.push_back({ConstraintKind::one_light_per_sub_room, lights});
    return cs;
}

}  // namespace ward
