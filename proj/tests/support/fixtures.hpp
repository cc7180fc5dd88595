#pragma once

#include <string>
#include <vector>

#include "ward/room_model.hpp"

namespace ward::testing {

inline std::string data_path(const std::string& name) { return std::string(WARD_DATA_DIR) + "/" + name; }

inline Problem shipped(const std::string& typology) { return load_problem(data_path(typology + ".room")); }

inline Layout traditional(const Problem& p, const std::string& typology) {
    return load_layout(data_path(typology + "_traditional.layout"), p);
}

/// Main room [0,w]x[0,h] with a bathroom [-bath_w,0]x[0,h] sharing its left wall.
inline RoomSpec box_room(double w, double h, double bath_w = 1.0, double res = 0.25) {
    Polygon main = Polygon::rectangle(0.0, 0.0, w, h);
    Polygon bath = Polygon::rectangle(-bath_w, 0.0, 0.0, h);
    RoomSpec::Options opts;
    opts.typology = Typology::outboard;
    opts.grid_resolution = res;
    return RoomSpec(main, bath, opts);
}

inline Problem bare_problem(RoomSpec room) {
    return Problem{"test", std::move(room), {}, {}, {}, {}, {}, {}, PerturbationSpec::defaults(), {}};
}

inline ObjectSpec free_object(const std::string& id, double w, double d) {
    ObjectSpec o;
    o.id = id;
    o.name = id;
    o.width = w;
    o.depth = d;
    o.kind = DomainKind::free_pose;
    return o;
}

inline ObjectSpec light(const std::string& id, RoomRequirement r) {
    ObjectSpec o;
    o.id = id;
    o.name = id;
    o.width = 0.3;
    o.depth = 0.3;
    o.kind = DomainKind::ceiling_light;
    o.sub_room = r;
    return o;
}

}  // namespace ward::testing
