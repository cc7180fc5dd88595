#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ward/room_model.hpp"

namespace ward {

enum class ConstraintKind {
    in_bounds,
    no_overlap,
    clearance,
    sub_room_membership,
    wall_adjacency,
    one_light_per_sub_room,
    bathroom_door_on_shared_wall,
    hallway_door_typology,
    door_not_blocked,
};

std::string to_string(ConstraintKind k);

/// One member of C. `objects` lists the variables the predicate reads; a predicate whose
/// variables are not all assigned is vacuously satisfied, except for the pairwise ones
/// (no_overlap, clearance, door_not_blocked), which check whatever is assigned.
struct Constraint {
    ConstraintKind kind;
    std::vector<std::size_t> objects;
    double distance = 0.0;  // clearance depth or door clear depth
    Typology typology = Typology::inboard;
};

using ConstraintSet = std::vector<Constraint>;

struct Violation {
    ConstraintKind kind;
    std::vector<std::string> object_ids;
    std::string message;
};

bool check(const Constraint& c, const PartialLayout& layout, const Problem& problem);

/// Violations of a complete layout; empty iff the layout is feasible.
std::vector<Violation> validate(const Layout& layout, const ConstraintSet& cs, const Problem& problem);

/// The standard constraint set for the problem's objects.
ConstraintSet default_constraints(const Problem& problem);

/// Whether `c` reads variable `index`. Clearance and doorway checks read every footprint.
bool involves(const Constraint& c, std::size_t index);

}  // namespace ward
