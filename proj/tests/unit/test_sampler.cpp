#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "ward/constraints.hpp"
#include "ward/footprint.hpp"
#include "ward/sampler.hpp"
#include "../support/fixtures.hpp"

using namespace ward;

namespace {

double sample_sd(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return std::sqrt(v / static_cast<double>(xs.size() - 1));
}

double wrapped(double a) { return std::remainder(a, kTwoPi); }

ObjectSpec wall_object(const std::string& id, double w, double d, RoomRequirement r, double clear) {
    ObjectSpec o = testing::free_object(id, w, d);
    o.kind = DomainKind::wall;
    o.sub_room = r;
    o.clearance = ClearanceSpec{{Side::front}, clear};
    return o;
}

// Bathroom 1.1 x 1.2 m holding a 0.45 x 0.7 toilet (0.4 m in front) and a 0.6 x 0.5 sink (0.35 m).
Problem tight_bathroom(double bath_w = 1.1) {
    Problem p = testing::bare_problem(testing::box_room(4, 1.2, bath_w));
    p.objects = {wall_object("toilet", 0.45, 0.7, RoomRequirement::bathroom, 0.4),
                 wall_object("sink", 0.6, 0.5, RoomRequirement::bathroom, 0.35)};
    return p;
}

}  // namespace

TEST_CASE("single chair in an empty room") {
    Problem p = testing::bare_problem(testing::box_room(5, 4));
    p.objects = {testing::free_object("chair", 0.5, 0.5)};
    const ConstraintSet cs = default_constraints(p);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const Layout l = sample_initial(p, cs, rng, p.sampler);
        REQUIRE(l.placements.size() == 1);
        const Polygon fp = footprint(p.objects[0], l.placements[0], p.room);
        CHECK(contains_poly(p.room.main_room(), fp));
    }
}

TEST_CASE("sample_initial is feasible on the shipped rooms") {
    for (const char* t : {"inboard", "outboard"}) {
        const Problem p = testing::shipped(t);
        const ConstraintSet cs = default_constraints(p);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            const Layout l = sample_initial(p, cs, rng, p.sampler);
            CHECK(validate(l, cs, p).empty());
        }
    }
}

TEST_CASE("sampling is deterministic per seed") {
    const Problem p = testing::shipped("inboard");
    const ConstraintSet cs = default_constraints(p);
    Rng a(42), b(42), c(43);
    const Layout la = sample_initial(p, cs, a, p.sampler);
    CHECK(la == sample_initial(p, cs, b, p.sampler));
    CHECK_FALSE(la == sample_initial(p, cs, c, p.sampler));
    Rng na(5), nb(5);
    CHECK(nearby_layout(p, la, p.perturbation, cs, na, p.sampler) ==
          nearby_layout(p, la, p.perturbation, cs, nb, p.sampler));
}

TEST_CASE("nearby layouts stay feasible") {
    const Problem p = testing::shipped("outboard");
    const ConstraintSet cs = default_constraints(p);
    Rng rng(8);
    Layout cur = testing::traditional(p, "outboard");
    for (int i = 0; i < 30; ++i) {
        cur = nearby_layout(p, cur, p.perturbation, cs, rng, p.sampler);
        CHECK(validate(cur, cs, p).empty());
    }
}

TEST_CASE("zero perturbation returns the current layout") {
    const Problem p = testing::shipped("inboard");
    const ConstraintSet cs = default_constraints(p);
    const Layout trad = testing::traditional(p, "inboard");
    Rng rng(1);
    CHECK(nearby_layout(p, trad, PerturbationSpec::zeros(), cs, rng, p.sampler) == trad);
}

TEST_CASE("perturbation table lookup") {
    const Problem p = testing::shipped("inboard");
    const PerturbationSpec d = PerturbationSpec::defaults();
    CHECK(sigma_for(p, p.index_of("bed"), d).w == 5.0);
    CHECK(sigma_for(p, p.index_of("sofa"), d).w == 5.0);
    CHECK(sigma_for(p, p.index_of("toilet"), d).w == 1.0);
    CHECK(sigma_for(p, p.index_of("sink"), d).w == 1.0);
    CHECK(sigma_for(p, p.index_of("main_door"), d).w == 4.0);
    CHECK(sigma_for(p, p.index_of("bathroom_door"), d).w == 2.0);
    const Sigma chair = sigma_for(p, p.index_of("patient_chair"), d);
    CHECK(chair.x == 1.0);
    CHECK(chair.y == 1.0);
    CHECK(chair.theta == doctest::Approx(deg_to_rad(30.0)));
    CHECK(sigma_for(p, p.index_of("main_light"), d).x == 1.0);
}

TEST_CASE("bed moves along the wall with sigma 5 m") {
    const Problem p = testing::shipped("inboard");
    const ConstraintSet cs = default_constraints(p);
    const Layout trad = testing::traditional(p, "inboard");
    const std::size_t bed = p.index_of("bed");
    const double s0 = std::get<WallCoord>(trad.placements[bed]).s;
    Rng rng(12);
    std::set<std::size_t> segments;
    for (int i = 0; i < 200; ++i) {
        const auto prop = gaussian_proposal(p, bed, trad.placements[bed], p.perturbation, rng);
        REQUIRE(prop.has_value());
        const double s = std::get<WallCoord>(*prop).s;
        CHECK(s >= 0.0);
        CHECK(s < p.room.walls().total_length());
        const WallSegment& w = p.room.walls().segment_at(s);
        CHECK(w.owner == SubRoom::main);
        segments.insert(p.room.walls().segment_index_at(s));
        if (s != s0) CHECK(contains_poly(p.room.main_room(), footprint(p.objects[bed], *prop, p.room)));
    }
    CHECK(segments.size() >= 3);  // 5 m spread reaches several walls
}

TEST_CASE("empirical spread of free-object perturbations") {
    Problem p = testing::bare_problem(testing::box_room(200, 200));
    p.objects = {testing::free_object("chair", 0.5, 0.5)};
    const Placement centre = Pose(100, 100, 1.0);
    Rng rng(99);
    std::vector<double> dx, dy, dt;
    for (int i = 0; i < 20000; ++i) {
        const Pose q = std::get<Pose>(*gaussian_proposal(p, 0, centre, p.perturbation, rng));
        dx.push_back(q.x - 100);
        dy.push_back(q.y - 100);
        dt.push_back(wrapped(q.theta - 1.0));
    }
    CHECK(std::abs(sample_sd(dx) - 1.0) < 0.05);
    CHECK(std::abs(sample_sd(dy) - 1.0) < 0.05);
    CHECK(std::abs(sample_sd(dt) - deg_to_rad(30.0)) < 0.05 * deg_to_rad(30.0));
}

TEST_CASE("variable order: wall, free, door, light; larger first") {
    const Problem p = testing::shipped("inboard");
    const auto order = variable_order(p, VariableOrder::wall_free_door_light);
    REQUIRE(order.size() == p.objects.size());
    auto group = [&](std::size_t i) {
        switch (p.objects[i].kind) {
            case DomainKind::wall: return 0;
            case DomainKind::free_pose: return 1;
            case DomainKind::door: return 2;
            default: return 3;
        }
    };
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto a = order[k - 1], b = order[k];
        CHECK(group(a) <= group(b));
        if (group(a) == group(b))
            CHECK(p.objects[a].width * p.objects[a].depth >= p.objects[b].width * p.objects[b].depth);
    }
    const auto listed = variable_order(p, VariableOrder::as_listed);
    for (std::size_t k = 0; k < listed.size(); ++k) CHECK(listed[k] == k);
}

TEST_CASE("independent variables are placed without backtracking") {
    Problem p = testing::bare_problem(testing::box_room(6, 6));
    p.objects = {testing::free_object("a", 0.4, 0.4), testing::free_object("b", 0.4, 0.4)};
    const ConstraintSet cs{{ConstraintKind::in_bounds, {0}}, {ConstraintKind::in_bounds, {1}}};
    // proposals that are always valid
    std::vector<std::size_t> calls;
    const Proposal prop = [&](std::size_t i, Rng&) -> std::optional<Placement> {
        calls.push_back(i);
        return Pose(1.0 + 3.0 * static_cast<double>(i), 3.0, 0.0);
    };
    const std::vector<std::size_t> order{0, 1};
    Rng rng(0);
    const Layout l = place_with_backtracking(p, cs, PartialLayout(2), order, prop, rng, p.sampler);
    CHECK(calls == std::vector<std::size_t>{0, 1});
    CHECK(validate(l, cs, p).empty());
}

TEST_CASE("backtracking finds a tight bathroom arrangement") {
    const Problem p = tight_bathroom();
    const ConstraintSet cs = default_constraints(p);
    const double total = p.room.walls().total_length();
    const int lattice = static_cast<int>(std::floor(total / 0.1 + 1e-9));
    auto s_at = [](int k) { return 0.1 * static_cast<double>(k); };

    // oracle: every lattice pair
    std::set<std::pair<int, int>> feasible;
    std::size_t toilet_alone = 0;
    for (int a = 0; a < lattice; ++a) {
        PartialLayout part{Placement{WallCoord{s_at(a)}}, std::nullopt};
        const bool a_ok = std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) { return check(c, part, p); });
        if (!a_ok) continue;
        ++toilet_alone;
        for (int b = 0; b < lattice; ++b)
            if (validate(Layout{{WallCoord{s_at(a)}, WallCoord{s_at(b)}}}, cs, p).empty()) feasible.insert({a, b});
    }
    REQUIRE_FALSE(feasible.empty());
    std::set<int> extendable;
    for (const auto& f : feasible) extendable.insert(f.first);
    // most toilet positions that are fine on their own admit no sink
    CHECK(extendable.size() * 2 < toilet_alone);

    const Proposal prop = [&](std::size_t, Rng& r) -> std::optional<Placement> {
        return WallCoord{s_at(std::uniform_int_distribution<int>(0, lattice - 1)(r))};
    };
    SamplerBudget budget = p.sampler;
    budget.max_attempts_per_variable = 400;
    budget.max_backtrack_depth = 1000;
    const std::vector<std::size_t> order{0, 1};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const Layout l = place_with_backtracking(p, cs, PartialLayout(2), order, prop, rng, budget);
        const int a = static_cast<int>(std::lround(std::get<WallCoord>(l.placements[0]).s / 0.1));
        const int b = static_cast<int>(std::lround(std::get<WallCoord>(l.placements[1]).s / 0.1));
        CHECK(feasible.count({a, b}) == 1);
    }
}

TEST_CASE("a bathroom too small for the toilet is reported infeasible") {
    Problem p = tight_bathroom(0.4);
    SamplerBudget budget = p.sampler;
    budget.timeout_s = 0.3;
    Rng rng(0);
    const auto start = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(sample_initial(p, default_constraints(p), rng, budget), InfeasibleError);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(3));
}

TEST_CASE("held variables outside the order stay fixed") {
    const Problem p = testing::shipped("inboard");
    const ConstraintSet cs = default_constraints(p);
    const Layout trad = testing::traditional(p, "inboard");
    PartialLayout partial = to_partial(trad);
    const std::vector<std::size_t> order{p.index_of("patient_chair")};
    const Proposal prop = [&](std::size_t i, Rng& r) { return uniform_proposal(p, i, r); };
    Rng rng(4);
    const Layout l = place_with_backtracking(p, cs, partial, order, prop, rng, p.sampler);
    for (std::size_t i = 0; i < p.objects.size(); ++i)
        if (i != order[0]) CHECK(l.placements[i] == trad.placements[i]);
    CHECK(validate(l, cs, p).empty());
}
