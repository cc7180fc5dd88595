#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ward/geometry.hpp"
#include "ward/params.hpp"

namespace ward {

/// Schema violation in a problem or layout file. `path` names the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Typology { inboard, outboard };
enum class DoorOperation { swinging, sliding };

class RoomSpec {
public:
    struct Options {
        Typology typology = Typology::inboard;
        double flooring_factor = 1.0;
        DoorOperation door_operation = DoorOperation::swinging;
        double grid_resolution = 0.25;
        std::optional<std::set<std::size_t>> hallway_wall_ids;  // main-room edge indices
    };

    /// Validates the pair of sub-rooms and derives shared walls and the wall chain.
    RoomSpec(Polygon main_room, Polygon bathroom, Options options);

    const Polygon& main_room() const { return main_; }
    const Polygon& bathroom() const { return bath_; }
    const Polygon& sub_room(SubRoom r) const { return r == SubRoom::main ? main_ : bath_; }
    Typology typology() const { return opts_.typology; }
    double flooring_factor() const { return opts_.flooring_factor; }
    DoorOperation door_operation() const { return opts_.door_operation; }
    double grid_resolution() const { return opts_.grid_resolution; }
    const std::set<std::size_t>& shared_wall_ids() const { return shared_; }
    const std::set<std::size_t>& hallway_wall_ids() const { return hallway_; }

    /// Main-room walls where a hallway door is legal for the room's typology.
    const std::set<std::size_t>& typology_walls() const { return typology_walls_; }

    /// Main-room perimeter followed by the bathroom perimeter.
    const WallChain& walls() const { return chain_; }

    Polygon::Box bounds() const;

private:
    Polygon main_;
    Polygon bath_;
    Options opts_;
    std::set<std::size_t> shared_;
    std::set<std::size_t> hallway_;
    std::set<std::size_t> typology_walls_;
    WallChain chain_;
};

enum class DomainKind { free_pose, wall, ceiling_light, door };
enum class RoomRequirement { main, bathroom, either };
enum class Side { front, back, left, right };
enum class SupportProfile { neutral, supportive, hazardous };
enum class DoorRole { none, hallway, bathroom };

struct ClearanceSpec {
    std::vector<Side> sides;
    double depth = 0.0;
};

struct SupportSpec {
    SupportProfile profile = SupportProfile::neutral;
    double reach = 0.6;
    double strength = 1.0;
};

// Local object frame: width runs along +u, depth along +v; the front is the +v edge.
// Wall-mounted objects and doors have their back edge on the wall.
struct ObjectSpec {
    std::string id;
    std::string name;
    double width = 0.5;
    double depth = 0.5;
    DomainKind kind = DomainKind::free_pose;
    RoomRequirement sub_room = RoomRequirement::main;
    std::optional<ClearanceSpec> clearance;
    SupportSpec support;
    std::optional<Point> interaction_offset;  // (u, v) from the footprint centre
    DoorRole door_role = DoorRole::none;

    bool is_interaction_target() const { return interaction_offset.has_value(); }
    bool on_wall() const { return kind == DomainKind::wall || kind == DomainKind::door; }
    bool has_footprint_collisions() const { return kind != DomainKind::ceiling_light; }
};

struct WallCoord {
    double s = 0.0;
    friend bool operator==(const WallCoord&, const WallCoord&) = default;
};

/// d_i: a pose for free objects, a wall coordinate for wall objects and doors, a point for lights.
using Placement = std::variant<Pose, WallCoord, Point>;

struct Layout {
    std::vector<Placement> placements;
    friend bool operator==(const Layout&, const Layout&) = default;
};

using PartialLayout = std::vector<std::optional<Placement>>;

PartialLayout to_partial(const Layout& layout);

struct Scenario {
    std::string from;
    std::string to;
};

struct ConstraintOptions {
    double door_clear_depth = 0.9;
};

/// Everything needed to generate, score and optimize layouts for one room.
struct Problem {
    std::string name;
    RoomSpec room;
    std::vector<ObjectSpec> objects;
    std::vector<Scenario> scenarios;
    ConstraintOptions constraint_options;
    RiskFactors risk;
    CostSpec cost;
    SAParams annealing;
    PerturbationSpec perturbation = PerturbationSpec::defaults();
    SamplerBudget sampler;

    std::size_t index_of(std::string_view id) const;
    std::optional<std::size_t> find(std::string_view id) const;
};

/// Whether `placement` is the variant the object's domain calls for.
bool placement_matches(const ObjectSpec& obj, const Placement& placement);

enum class RoomClass { main, bathroom, straddling, outside };

RoomClass sub_room_of(const Polygon& footprint, const RoomSpec& room);
std::string to_string(RoomClass c);

Problem parse_problem(std::string_view json_text);
Problem load_problem(const std::string& path);
std::string serialize_problem(const Problem& problem);

std::string serialize_layout(const Layout& layout, const Problem& problem);
Layout parse_layout(std::string_view json_text, const Problem& problem);
Layout load_layout(const std::string& path, const Problem& problem);

std::string to_string(DomainKind k);
std::string to_string(Side s);
std::string to_string(RoomRequirement r);

}  // namespace ward
