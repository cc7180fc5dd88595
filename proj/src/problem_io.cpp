#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ward/room_model.hpp"

namespace ward {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(child(path, key), "missing required field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "expected a finite number");
    return v;
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& path) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_number(*it, child(path, key));
}

double non_negative(double v, const std::string& path) {
    if (v < 0.0) throw ParseError(path, "must be non-negative");
    return v;
}

std::size_t count_or(const json& j, const std::string& key, std::size_t fallback, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 0)
        throw ParseError(child(path, key), "expected a non-negative integer");
    return it->get<std::size_t>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

template <typename E>
E as_enum(const json& j, const std::string& path, std::initializer_list<std::pair<const char*, E>> table) {
    const std::string s = as_string(j, path);
    std::string options;
    for (const auto& [name, value] : table) {
        if (s == name) return value;
        options += options.empty() ? name : std::string(", ") + name;
    }
    throw ParseError(path, "unknown value '" + s + "' (expected one of: " + options + ")");
}

Polygon parse_polygon(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of [x, y] vertices");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& v = j[i];
        if (!v.is_array() || v.size() != 2) throw ParseError(child(path, i), "expected [x, y]");
        pts.push_back({as_number(v[0], child(path, i)), as_number(v[1], child(path, i))});
    }
    try {
        return Polygon(std::move(pts));
    } catch (const GeometryError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

ordered_json polygon_json(const Polygon& p) {
    ordered_json arr = ordered_json::array();
    for (Point v : p.vertices()) arr.push_back({v.x, v.y});
    return arr;
}

Sigma parse_sigma(const json& j, const std::string& path, Sigma base) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    base.x = non_negative(number_or(j, "x", base.x, path), child(path, "x"));
    base.y = non_negative(number_or(j, "y", base.y, path), child(path, "y"));
    if (j.contains("theta_deg"))
        base.theta = deg_to_rad(non_negative(as_number(j["theta_deg"], child(path, "theta_deg")), child(path, "theta_deg")));
    base.w = non_negative(number_or(j, "w", base.w, path), child(path, "w"));
    return base;
}

ordered_json sigma_json(const Sigma& s) {
    return {{"x", s.x}, {"y", s.y}, {"theta_deg", rad_to_deg(s.theta)}, {"w", s.w}};
}

PerturbationSpec::Row parse_row(const json& j, const std::string& path, PerturbationSpec::Row row) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    if (j.contains("furniture")) row.furniture = parse_sigma(j["furniture"], child(path, "furniture"), row.furniture);
    if (j.contains("wall_furniture"))
        row.wall_furniture = parse_sigma(j["wall_furniture"], child(path, "wall_furniture"), row.wall_furniture);
    if (j.contains("light")) row.light = parse_sigma(j["light"], child(path, "light"), row.light);
    if (j.contains("door")) row.door = parse_sigma(j["door"], child(path, "door"), row.door);
    return row;
}

ordered_json row_json(const PerturbationSpec::Row& r) {
    return {{"furniture", sigma_json(r.furniture)},
            {"wall_furniture", sigma_json(r.wall_furniture)},
            {"light", sigma_json(r.light)},
            {"door", sigma_json(r.door)}};
}

ObjectSpec parse_object(const json& j, const std::string& path) {
    ObjectSpec o;
    o.id = as_string(require(j, "id", path), child(path, "id"));
    if (o.id.empty()) throw ParseError(child(path, "id"), "must not be empty");
    o.name = j.contains("name") ? as_string(j["name"], child(path, "name")) : o.id;
    o.kind = as_enum<DomainKind>(require(j, "kind", path), child(path, "kind"),
                                 {{"free", DomainKind::free_pose},
                                  {"wall", DomainKind::wall},
                                  {"ceiling_light", DomainKind::ceiling_light},
                                  {"door", DomainKind::door}});
    o.width = as_number(require(j, "width", path), child(path, "width"));
    o.depth = as_number(require(j, "depth", path), child(path, "depth"));
    if (!(o.width > 0.0)) throw ParseError(child(path, "width"), "must be positive");
    if (!(o.depth > 0.0)) throw ParseError(child(path, "depth"), "must be positive");
    if (j.contains("sub_room"))
        o.sub_room = as_enum<RoomRequirement>(j["sub_room"], child(path, "sub_room"),
                                              {{"main", RoomRequirement::main},
                                               {"bathroom", RoomRequirement::bathroom},
                                               {"either", RoomRequirement::either}});
    if (j.contains("clearance")) {
        const std::string cp = child(path, "clearance");
        const json& c = j["clearance"];
        ClearanceSpec spec;
        spec.depth = non_negative(as_number(require(c, "depth", cp), child(cp, "depth")), child(cp, "depth"));
        const json& sides = require(c, "sides", cp);
        if (!sides.is_array()) throw ParseError(child(cp, "sides"), "expected an array");
        for (std::size_t i = 0; i < sides.size(); ++i)
            spec.sides.push_back(as_enum<Side>(sides[i], child(child(cp, "sides"), i),
                                               {{"front", Side::front},
                                                {"back", Side::back},
                                                {"left", Side::left},
                                                {"right", Side::right}}));
        o.clearance = spec;
    }
    if (j.contains("support")) {
        const std::string sp = child(path, "support");
        const json& s = j["support"];
        o.support.profile = as_enum<SupportProfile>(require(s, "profile", sp), child(sp, "profile"),
                                                    {{"neutral", SupportProfile::neutral},
                                                     {"supportive", SupportProfile::supportive},
                                                     {"hazardous", SupportProfile::hazardous}});
        o.support.reach = non_negative(number_or(s, "reach", o.support.reach, sp), child(sp, "reach"));
        o.support.strength = non_negative(number_or(s, "strength", o.support.strength, sp), child(sp, "strength"));
    }
    if (j.contains("interaction_offset")) {
        const json& v = j["interaction_offset"];
        const std::string ip = child(path, "interaction_offset");
        if (!v.is_array() || v.size() != 2) throw ParseError(ip, "expected [u, v]");
        o.interaction_offset = Point{as_number(v[0], ip), as_number(v[1], ip)};
    }
    if (j.contains("door")) {
        if (o.kind != DomainKind::door) throw ParseError(child(path, "door"), "only door objects take a door role");
        o.door_role = as_enum<DoorRole>(j["door"], child(path, "door"),
                                        {{"hallway", DoorRole::hallway}, {"bathroom", DoorRole::bathroom}});
    } else if (o.kind == DomainKind::door) {
        throw ParseError(child(path, "door"), "door objects need a role (hallway or bathroom)");
    }
    return o;
}

ordered_json object_json(const ObjectSpec& o) {
    ordered_json j;
    j["id"] = o.id;
    j["name"] = o.name;
    j["kind"] = to_string(o.kind);
    j["width"] = o.width;
    j["depth"] = o.depth;
    j["sub_room"] = o.sub_room == RoomRequirement::main ? "main"
                    : o.sub_room == RoomRequirement::bathroom ? "bathroom"
                                                              : "either";
    if (o.clearance) {
        ordered_json sides = ordered_json::array();
        for (Side s : o.clearance->sides) sides.push_back(to_string(s));
        j["clearance"] = {{"sides", sides}, {"depth", o.clearance->depth}};
    }
    const char* profile = o.support.profile == SupportProfile::supportive  ? "supportive"
                          : o.support.profile == SupportProfile::hazardous ? "hazardous"
                                                                           : "neutral";
    j["support"] = {{"profile", profile}, {"reach", o.support.reach}, {"strength", o.support.strength}};
    if (o.interaction_offset) j["interaction_offset"] = {o.interaction_offset->x, o.interaction_offset->y};
    if (o.door_role != DoorRole::none) j["door"] = o.door_role == DoorRole::hallway ? "hallway" : "bathroom";
    return j;
}

RiskFactors parse_risk(const json& j, const std::string& path) {
    RiskFactors f;
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto nn = [&](const char* key, double fallback) {
        return non_negative(number_or(j, key, fallback, path), child(path, key));
    };
    f.support_strength = nn("support_strength", f.support_strength);
    f.hazard_strength = nn("hazard_strength", f.hazard_strength);
    f.lighting_radius = nn("lighting_radius", f.lighting_radius);
    f.lighting_dim_penalty = nn("lighting_dim_penalty", f.lighting_dim_penalty);
    f.door_swing_penalty = nn("door_swing_penalty", f.door_swing_penalty);
    f.sit_to_stand = nn("sit_to_stand", f.sit_to_stand);
    f.stand_to_sit = nn("stand_to_sit", f.stand_to_sit);
    f.walk = nn("walk", f.walk);
    f.turn_base = nn("turn_base", f.turn_base);
    f.turn_angle_gain = nn("turn_angle_gain", f.turn_angle_gain);
    f.trajectories_per_scenario = count_or(j, "trajectories_per_scenario", f.trajectories_per_scenario, path);
    if (j.contains("compound_support")) {
        if (!j["compound_support"].is_boolean()) throw ParseError(child(path, "compound_support"), "expected a boolean");
        f.compound_support = j["compound_support"].get<bool>();
    }
    return f;
}

ordered_json risk_json(const RiskFactors& f) {
    return {{"support_strength", f.support_strength},
            {"hazard_strength", f.hazard_strength},
            {"lighting_radius", f.lighting_radius},
            {"lighting_dim_penalty", f.lighting_dim_penalty},
            {"door_swing_penalty", f.door_swing_penalty},
            {"sit_to_stand", f.sit_to_stand},
            {"stand_to_sit", f.stand_to_sit},
            {"walk", f.walk},
            {"turn_base", f.turn_base},
            {"turn_angle_gain", f.turn_angle_gain},
            {"trajectories_per_scenario", f.trajectories_per_scenario},
            {"compound_support", f.compound_support}};
}

CostSpec parse_cost(const json& j, const std::string& path) {
    CostSpec c;
    if (!j.is_object()) throw ParseError(path, "expected an object");
    if (j.contains("weights")) {
        const json& w = j["weights"];
        const std::string wp = child(path, "weights");
        if (!w.is_array() || w.size() != 3) throw ParseError(wp, "expected [w_median, w_max, w_tail]");
        c.w_median = non_negative(as_number(w[0], child(wp, 0)), child(wp, 0));
        c.w_max = non_negative(as_number(w[1], child(wp, 1)), child(wp, 1));
        c.w_tail = non_negative(as_number(w[2], child(wp, 2)), child(wp, 2));
    }
    if (j.contains("alpha")) {
        const json& a = j["alpha"];
        const std::string ap = child(path, "alpha");
        if (a.contains("fraction_of_max")) {
            const double f = as_number(a["fraction_of_max"], child(ap, "fraction_of_max"));
            if (!(f > 0.0 && f <= 1.0)) throw ParseError(child(ap, "fraction_of_max"), "must be in (0, 1]");
            c.alpha = AlphaRule::fraction(f);
        } else if (a.contains("fixed")) {
            c.alpha = AlphaRule::fixed_value(as_number(a["fixed"], child(ap, "fixed")));
        } else {
            throw ParseError(ap, "expected fraction_of_max or fixed");
        }
    }
    if (j.contains("tail_mode"))
        c.tail_mode = as_enum<TailMode>(j["tail_mode"], child(path, "tail_mode"),
                                        {{"eq1_verbatim", TailMode::eq1_verbatim}, {"cvar", TailMode::cvar}});
    return c;
}

ordered_json cost_json(const CostSpec& c) {
    ordered_json alpha = c.alpha.kind == AlphaRule::Kind::fraction_of_max ? ordered_json{{"fraction_of_max", c.alpha.value}}
                                                                   : ordered_json{{"fixed", c.alpha.value}};
    return {{"weights", {c.w_median, c.w_max, c.w_tail}},
            {"alpha", alpha},
            {"tail_mode", c.tail_mode == TailMode::cvar ? "cvar" : "eq1_verbatim"}};
}

SAParams parse_annealing(const json& j, const std::string& path) {
    SAParams p;
    if (!j.is_object()) throw ParseError(path, "expected an object");
    p.t0 = number_or(j, "t0", p.t0, path);
    p.k = number_or(j, "k", p.k, path);
    p.kappa = number_or(j, "kappa", p.kappa, path);
    p.num_cycles = count_or(j, "cycles", p.num_cycles, path);
    p.num_trials = count_or(j, "trials", p.num_trials, path);
    if (!(p.t0 > 0.0)) throw ParseError(child(path, "t0"), "must be positive");
    if (!(p.k > 0.0 && p.k < 1.0)) throw ParseError(child(path, "k"), "must be in (0, 1)");
    if (!(p.kappa > 0.0)) throw ParseError(child(path, "kappa"), "must be positive");
    return p;
}

ordered_json annealing_json(const SAParams& p) {
    return {{"t0", p.t0}, {"k", p.k}, {"kappa", p.kappa}, {"cycles", p.num_cycles}, {"trials", p.num_trials}};
}

SamplerBudget parse_sampler(const json& j, const std::string& path) {
    SamplerBudget b;
    if (!j.is_object()) throw ParseError(path, "expected an object");
    b.timeout_s = number_or(j, "timeout_s", b.timeout_s, path);
    if (!(b.timeout_s > 0.0)) throw ParseError(child(path, "timeout_s"), "must be positive");
    b.max_attempts_per_variable = count_or(j, "max_attempts_per_variable", b.max_attempts_per_variable, path);
    if (b.max_attempts_per_variable == 0) throw ParseError(child(path, "max_attempts_per_variable"), "must be positive");
    if (j.contains("max_backtrack_depth") && !j["max_backtrack_depth"].is_null())
        b.max_backtrack_depth = count_or(j, "max_backtrack_depth", 0, path);
    if (j.contains("order"))
        b.order = as_enum<VariableOrder>(j["order"], child(path, "order"),
                                         {{"wall_free_door_light", VariableOrder::wall_free_door_light},
                                          {"as_listed", VariableOrder::as_listed}});
    return b;
}

ordered_json sampler_json(const SamplerBudget& b) {
    ordered_json j{{"timeout_s", b.timeout_s},
           {"max_attempts_per_variable", b.max_attempts_per_variable},
           {"order", b.order == VariableOrder::as_listed ? "as_listed" : "wall_free_door_light"}};
    j["max_backtrack_depth"] = b.max_backtrack_depth ? ordered_json(*b.max_backtrack_depth) : ordered_json(nullptr);
    return j;
}

RoomSpec parse_room(const json& j, const std::string& path) {
    RoomSpec::Options opts;
    opts.typology = as_enum<Typology>(require(j, "typology", path), child(path, "typology"),
                                      {{"inboard", Typology::inboard}, {"outboard", Typology::outboard}});
    opts.flooring_factor = non_negative(number_or(j, "flooring_factor", opts.flooring_factor, path),
                                        child(path, "flooring_factor"));
    if (j.contains("door_operation"))
        opts.door_operation = as_enum<DoorOperation>(j["door_operation"], child(path, "door_operation"),
                                                     {{"swinging", DoorOperation::swinging},
                                                      {"sliding", DoorOperation::sliding}});
    opts.grid_resolution = number_or(j, "grid_resolution", opts.grid_resolution, path);
    if (!(opts.grid_resolution > 0.0)) throw ParseError(child(path, "grid_resolution"), "must be positive");
    if (j.contains("hallway_walls")) {
        const json& h = j["hallway_walls"];
        if (!h.is_array()) throw ParseError(child(path, "hallway_walls"), "expected an array of edge indices");
        std::set<std::size_t> ids;
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (!h[i].is_number_integer() || h[i].get<long long>() < 0)
                throw ParseError(child(child(path, "hallway_walls"), i), "expected an edge index");
            ids.insert(h[i].get<std::size_t>());
        }
        opts.hallway_wall_ids = ids;
    }
    Polygon main_room = parse_polygon(require(j, "main_room", path), child(path, "main_room"));
    Polygon bathroom = parse_polygon(require(j, "bathroom", path), child(path, "bathroom"));
    return RoomSpec(std::move(main_room), std::move(bathroom), opts);
}

ordered_json room_json(const RoomSpec& r) {
    ordered_json hallway = ordered_json::array();
    for (std::size_t id : r.hallway_wall_ids()) hallway.push_back(id);
    return {{"typology", r.typology() == Typology::inboard ? "inboard" : "outboard"},
            {"main_room", polygon_json(r.main_room())},
            {"bathroom", polygon_json(r.bathroom())},
            {"hallway_walls", hallway},
            {"flooring_factor", r.flooring_factor()},
            {"door_operation", r.door_operation() == DoorOperation::swinging ? "swinging" : "sliding"},
            {"grid_resolution", r.grid_resolution()}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Problem parse_problem(std::string_view json_text) {
    const json j = parse_json_text(json_text);
    if (!j.is_object()) throw ParseError("", "expected a top-level object");
    const std::string name = j.contains("name") ? as_string(j["name"], "name") : std::string("problem");
    Problem p{name, parse_room(require(j, "room", ""), "room"), {}, {}, {}, {}, {}, {}, PerturbationSpec::defaults(), {}};

    const json& objects = require(j, "objects", "");
    if (!objects.is_array()) throw ParseError("objects", "expected an array");
    for (std::size_t i = 0; i < objects.size(); ++i) {
        ObjectSpec o = parse_object(objects[i], child("objects", i));
        if (p.find(o.id)) throw ParseError(child(child("objects", i), "id"), "duplicate id '" + o.id + "'");
        p.objects.push_back(std::move(o));
    }

    if (j.contains("scenarios")) {
        const json& sc = j["scenarios"];
        if (!sc.is_array()) throw ParseError("scenarios", "expected an array");
        for (std::size_t i = 0; i < sc.size(); ++i) {
            const std::string sp = child("scenarios", i);
            Scenario s{as_string(require(sc[i], "from", sp), child(sp, "from")),
                       as_string(require(sc[i], "to", sp), child(sp, "to"))};
            for (const auto& [key, id] : {std::pair{"from", s.from}, std::pair{"to", s.to}}) {
                auto idx = p.find(id);
                if (!idx) throw ParseError(child(sp, key), "unknown object id '" + id + "'");
                if (!p.objects[*idx].is_interaction_target())
                    throw ParseError(child(sp, key), "object '" + id + "' has no interaction_offset");
            }
            p.scenarios.push_back(std::move(s));
        }
    }
    if (j.contains("constraints")) {
        const json& c = j["constraints"];
        if (!c.is_object()) throw ParseError("constraints", "expected an object");
        p.constraint_options.door_clear_depth =
            non_negative(number_or(c, "door_clear_depth", p.constraint_options.door_clear_depth, "constraints"),
                         "constraints.door_clear_depth");
    }
    if (j.contains("risk")) p.risk = parse_risk(j["risk"], "risk");
    if (j.contains("cost")) p.cost = parse_cost(j["cost"], "cost");
    if (j.contains("annealing")) p.annealing = parse_annealing(j["annealing"], "annealing");
    if (j.contains("perturbation")) {
        const json& pt = j["perturbation"];
        if (!pt.is_object()) throw ParseError("perturbation", "expected an object");
        if (pt.contains("main")) p.perturbation.main = parse_row(pt["main"], "perturbation.main", p.perturbation.main);
        if (pt.contains("bathroom"))
            p.perturbation.bathroom = parse_row(pt["bathroom"], "perturbation.bathroom", p.perturbation.bathroom);
    }
    if (j.contains("sampler")) p.sampler = parse_sampler(j["sampler"], "sampler");
    return p;
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::string serialize_problem(const Problem& p) {
    ordered_json j;
    j["name"] = p.name;
    j["room"] = room_json(p.room);
    ordered_json objects = ordered_json::array();
    for (const ObjectSpec& o : p.objects) objects.push_back(object_json(o));
    j["objects"] = objects;
    ordered_json scenarios = ordered_json::array();
    for (const Scenario& s : p.scenarios) scenarios.push_back({{"from", s.from}, {"to", s.to}});
    j["scenarios"] = scenarios;
    j["constraints"] = {{"door_clear_depth", p.constraint_options.door_clear_depth}};
    j["risk"] = risk_json(p.risk);
    j["cost"] = cost_json(p.cost);
    j["annealing"] = annealing_json(p.annealing);
    j["perturbation"] = {{"main", row_json(p.perturbation.main)}, {"bathroom", row_json(p.perturbation.bathroom)}};
    j["sampler"] = sampler_json(p.sampler);
    return j.dump(2) + "\n";
}

std::string serialize_layout(const Layout& layout, const Problem& problem) {
    if (layout.placements.size() != problem.objects.size())
        throw ValidationError("layout has " + std::to_string(layout.placements.size()) + " placements but the problem has " +
                              std::to_string(problem.objects.size()) + " objects");
    ordered_json placements = ordered_json::object();
    for (std::size_t i = 0; i < layout.placements.size(); ++i) {
        const Placement& pl = layout.placements[i];
        ordered_json e;
        if (const auto* pose = std::get_if<Pose>(&pl)) {
            e["x"] = pose->x;
            e["y"] = pose->y;
            e["theta_rad"] = pose->theta;
        } else if (const auto* w = std::get_if<WallCoord>(&pl)) {
            e["s"] = w->s;
        } else {
            const Point& pt = std::get<Point>(pl);
            e["x"] = pt.x;
            e["y"] = pt.y;
        }
        placements[problem.objects[i].id] = e;
    }
    ordered_json j;
    j["problem"] = problem.name;
    j["placements"] = placements;
    return j.dump(2) + "\n";
}

Layout parse_layout(std::string_view json_text, const Problem& problem) {
    const json j = parse_json_text(json_text);
    const json& placements = require(j, "placements", "");
    if (!placements.is_object()) throw ParseError("placements", "expected an object keyed by object id");
    if (placements.size() != problem.objects.size())
        throw ValidationError("layout has " + std::to_string(placements.size()) + " placements but the problem has " +
                              std::to_string(problem.objects.size()) + " objects");
    Layout layout;
    for (const ObjectSpec& o : problem.objects) {
        const std::string path = child("placements", o.id);
        auto it = placements.find(o.id);
        if (it == placements.end()) throw ParseError(path, "missing placement");
        const json& e = *it;
        switch (o.kind) {
            case DomainKind::free_pose: {
                double theta = 0.0;
                if (e.contains("theta_rad")) theta = as_number(e["theta_rad"], child(path, "theta_rad"));
                else if (e.contains("theta_deg")) theta = deg_to_rad(as_number(e["theta_deg"], child(path, "theta_deg")));
                layout.placements.emplace_back(Pose(as_number(require(e, "x", path), child(path, "x")),
                                                    as_number(require(e, "y", path), child(path, "y")), theta));
                break;
            }
            case DomainKind::wall:
            case DomainKind::door: {
                double s = as_number(require(e, "s", path), child(path, "s"));
                const double total = problem.room.walls().total_length();
                if (s < 0.0 || s >= total) s = std::fmod(std::fmod(s, total) + total, total);
                layout.placements.emplace_back(WallCoord{s});
                break;
            }
            case DomainKind::ceiling_light:
                layout.placements.emplace_back(Point{as_number(require(e, "x", path), child(path, "x")),
                                                     as_number(require(e, "y", path), child(path, "y"))});
                break;
        }
    }
    return layout;
}

Layout load_layout(const std::string& path, const Problem& problem) { return parse_layout(read_file(path), problem); }

}  // namespace ward
