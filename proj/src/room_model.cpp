#include "ward/room_model.hpp"

#include <algorithm>
#include <cmath>

namespace ward {

namespace {

bool collinear_touching(const Segment& a, const Segment& b) {
    const Point da = a.b - a.a;
    if (std::abs(cross(da, b.a - a.a)) > 1e-9 * norm(da) || std::abs(cross(da, b.b - a.a)) > 1e-9 * norm(da))
        return false;
    return distance(a.a, b.a) < kGeomEps || distance(a.a, b.b) < kGeomEps || distance(a.b, b.a) < kGeomEps ||
           distance(a.b, b.b) < kGeomEps;
}

Segment edge(const Polygon& p, std::size_t i) { return {p[i], p[(i + 1) % p.size()]}; }

bool interiors_disjoint(const Polygon& a, const Polygon& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (segments_cross_properly(edge(a, i), edge(b, j))) return false;
    for (Point p : a.vertices())
        if (point_strictly_inside(b, p)) return false;
    for (Point p : b.vertices())
        if (point_strictly_inside(a, p)) return false;
    // Identical or nested-with-shared-vertices polygons: test an interior point of each.
    auto interior_probe = [](const Polygon& p) {
        const Point a0 = p[0], a1 = p[1], a2 = p[2];
        return Point{(a0.x + a1.x + a2.x) / 3.0, (a0.y + a1.y + a2.y) / 3.0};
    };
    if (a.is_convex() && point_strictly_inside(b, interior_probe(a))) return false;
    if (b.is_convex() && point_strictly_inside(a, interior_probe(b))) return false;
    return true;
}

}  // namespace

RoomSpec::RoomSpec(Polygon main_room, Polygon bathroom, Options options)
    : main_(std::move(main_room)), bath_(std::move(bathroom)), opts_(std::move(options)) {
    if (!(opts_.grid_resolution > 0.0)) throw ValidationError("grid_resolution must be positive");
    if (opts_.flooring_factor < 0.0) throw ValidationError("flooring_factor must be non-negative");
    if (!interiors_disjoint(main_, bath_)) throw ValidationError("bathroom overlaps the main room");

    std::vector<bool> bath_shared(bath_.size(), false);
    for (std::size_t i = 0; i < main_.size(); ++i) {
        const Segment m = edge(main_, i);
        for (std::size_t j = 0; j < bath_.size(); ++j) {
            const Segment b = edge(bath_, j);
            if (distance(m.a, b.b) < kGeomEps && distance(m.b, b.a) < kGeomEps) {
                shared_.insert(i);
                bath_shared[j] = true;
            }
        }
    }
    if (shared_.empty()) throw ValidationError("bathroom shares no wall with the main room");

    for (std::size_t i = 0; i < main_.size(); ++i) {
        if (shared_.count(i)) continue;
        bool along_bathroom = false;
        for (std::size_t j = 0; j < bath_.size(); ++j)
            if (!bath_shared[j] && collinear_touching(edge(main_, i), edge(bath_, j))) along_bathroom = true;
        if (along_bathroom == (opts_.typology == Typology::inboard)) typology_walls_.insert(i);
    }
    if (opts_.hallway_wall_ids) {
        for (std::size_t id : *opts_.hallway_wall_ids) {
            if (id >= main_.size()) throw ValidationError("hallway wall id " + std::to_string(id) + " out of range");
            if (!typology_walls_.count(id))
                throw ValidationError("hallway wall " + std::to_string(id) + " is inconsistent with the typology");
        }
        hallway_ = *opts_.hallway_wall_ids;
    } else {
        hallway_ = typology_walls_;
    }
    if (hallway_.empty()) throw ValidationError("no wall admits a hallway door for this typology");

    std::vector<EdgeTag> main_tags(main_.size());
    for (std::size_t i = 0; i < main_.size(); ++i) main_tags[i] = {shared_.count(i) > 0, hallway_.count(i) > 0};
    std::vector<EdgeTag> bath_tags(bath_.size());
    for (std::size_t j = 0; j < bath_.size(); ++j) bath_tags[j] = {bath_shared[j], false};
    chain_ = unwrap_walls(main_, main_tags, SubRoom::main);
    chain_.append(unwrap_walls(bath_, bath_tags, SubRoom::bathroom));
}

Polygon::Box RoomSpec::bounds() const {
    auto a = main_.bounds();
    const auto b = bath_.bounds();
    a.min_x = std::min(a.min_x, b.min_x);
    a.min_y = std::min(a.min_y, b.min_y);
    a.max_x = std::max(a.max_x, b.max_x);
    a.max_y = std::max(a.max_y, b.max_y);
    return a;
}

PartialLayout to_partial(const Layout& layout) {
    return PartialLayout(layout.placements.begin(), layout.placements.end());
}

std::size_t Problem::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw ValidationError("unknown object id '" + std::string(id) + "'");
}

std::optional<std::size_t> Problem::find(std::string_view id) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i].id == id) return i;
    return std::nullopt;
}

bool placement_matches(const ObjectSpec& obj, const Placement& placement) {
    switch (obj.kind) {
        case DomainKind::free_pose: return std::holds_alternative<Pose>(placement);
        case DomainKind::wall:
        case DomainKind::door: return std::holds_alternative<WallCoord>(placement);
        case DomainKind::ceiling_light: return std::holds_alternative<Point>(placement);
    }
    return false;
}

RoomClass sub_room_of(const Polygon& footprint, const RoomSpec& room) {
    if (contains_poly(room.main_room(), footprint)) return RoomClass::main;
    if (contains_poly(room.bathroom(), footprint)) return RoomClass::bathroom;
    const bool inside_some = !interiors_disjoint(footprint, room.main_room()) ||
                             !interiors_disjoint(footprint, room.bathroom());
    return inside_some ? RoomClass::straddling : RoomClass::outside;
}

std::string to_string(RoomClass c) {
    switch (c) {
        case RoomClass::main: return "main";
        case RoomClass::bathroom: return "bathroom";
        case RoomClass::straddling: return "straddling";
        case RoomClass::outside: return "outside";
    }
    return "?";
}

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::free_pose: return "free";
        case DomainKind::wall: return "wall";
        case DomainKind::ceiling_light: return "ceiling_light";
        case DomainKind::door: return "door";
    }
    return "?";
}

std::string to_string(RoomRequirement r) {
    switch (r) {
        case RoomRequirement::main: return "main";
        case RoomRequirement::bathroom: return "bathroom";
        case RoomRequirement::either: return "either";
    }
    return "?";
}

std::string to_string(Side s) {
    switch (s) {
        case Side::front: return "front";
        case Side::back: return "back";
        case Side::left: return "left";
        case Side::right: return "right";
    }
    return "?";
}

PerturbationSpec PerturbationSpec::defaults() {
    PerturbationSpec p;
    const double thirty = deg_to_rad(30.0);
    p.main.furniture = {1.0, 1.0, thirty, 0.0};
    p.main.wall_furniture = {0.0, 0.0, 0.0, 5.0};
    p.main.light = {1.0, 1.0, 0.0, 0.0};
    p.main.door = {0.0, 0.0, 0.0, 4.0};
    p.bathroom.furniture = {0.5, 0.5, thirty, 0.0};
    p.bathroom.wall_furniture = {0.0, 0.0, 0.0, 1.0};
    p.bathroom.light = {1.0, 1.0, 0.0, 0.0};
    p.bathroom.door = {0.0, 0.0, 0.0, 2.0};
    return p;
}

}  // namespace ward
