#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "ward/constraints.hpp"
#include "ward/footprint.hpp"
#include "ward/risk.hpp"
#include "ward/sampler.hpp"
#include "../support/fixtures.hpp"

using namespace ward;

namespace {

// Diagonal cut at the lower right corner; bathroom strip on the left.
RoomSpec chamfered_room() {
    const Polygon main({{0, 0}, {4, 0}, {6, 2}, {6, 6}, {0, 6}});
    const Polygon bath({{-1, 0}, {0, 0}, {0, 6}, {-1, 6}});
    RoomSpec::Options opts;
    opts.typology = Typology::outboard;
    opts.grid_resolution = 0.25;
    return RoomSpec(main, bath, opts);
}

bool chamfered_inside(Point c) { return c.x > -1 && c.x < 6 && c.y > 0 && c.y < 6 && c.y > c.x - 4 - 1e-9; }

Problem lit_room(double w, double h) {
    Problem p = testing::bare_problem(testing::box_room(w, h));
    p.objects = {testing::light("main_light", RoomRequirement::main), testing::light("bath_light", RoomRequirement::bathroom)};
    return p;
}

struct Rect {
    double x0, y0, x1, y1;
    bool strictly_inside(Point p) const { return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1; }
};

// Exact shortest path among axis-aligned rectangles: Dijkstra over the visibility graph of their corners.
double visibility_shortest(Point a, Point b, const std::vector<Rect>& rects) {
    std::vector<Point> nodes{a, b};
    for (const Rect& r : rects)
        for (Point c : {Point{r.x0, r.y0}, Point{r.x1, r.y0}, Point{r.x1, r.y1}, Point{r.x0, r.y1}}) nodes.push_back(c);
    auto visible = [&](Point p, Point q) {
        const int steps = 4000;
        for (int k = 1; k < steps; ++k) {
            const Point m = p + (static_cast<double>(k) / steps) * (q - p);
            for (const Rect& r : rects)
                if (r.strictly_inside(m)) return false;
        }
        return true;
    };
    std::vector<double> dist(nodes.size(), INFINITY);
    std::vector<bool> done(nodes.size(), false);
    dist[0] = 0;
    for (std::size_t it = 0; it < nodes.size(); ++it) {
        std::size_t u = nodes.size();
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (!done[i] && (u == nodes.size() || dist[i] < dist[u])) u = i;
        done[u] = true;
        for (std::size_t v = 0; v < nodes.size(); ++v)
            if (!done[v] && visible(nodes[u], nodes[v]))
                dist[v] = std::min(dist[v], dist[u] + distance(nodes[u], nodes[v]));
    }
    return dist[1];
}

double path_length(const std::vector<Point>& pts) {
    double len = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
    return len;
}

Layout random_layout(const Problem& p, std::uint64_t seed) {
    Rng rng(seed);
    return sample_initial(p, default_constraints(p), rng, p.sampler);
}

}  // namespace

TEST_CASE("grid dimensions") {
    const RiskGrid g = make_grid(testing::box_room(3, 4, 1, 0.25));
    CHECK(g.cols == 16);
    CHECK(g.rows == 16);
    CHECK(g.unmasked_count() == 256);
    const RiskGrid h = make_grid(testing::box_room(3, 4, 1, 0.5));
    CHECK(h.cols == 8);
    CHECK(h.rows == 8);
    CHECK_THROWS_AS(make_grid(testing::box_room(3, 4, 1, 5.0)), ValidationError);
}

TEST_CASE("grid mask follows the room outline") {
    const RiskGrid g = make_grid(chamfered_room());
    CHECK(g.cols == 28);
    CHECK(g.rows == 24);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < g.cells.size(); ++i) agree += (g.mask[i] == 1) == chamfered_inside(g.cell_center(i));
    CHECK(agree == g.cells.size());
    const double area = static_cast<double>(g.unmasked_count()) * g.resolution * g.resolution;
    CHECK(std::abs(area - 40.0) < 0.5);
}

TEST_CASE("a fully lit room without supports or hazards is neutral") {
    const Problem p = lit_room(4, 4);
    const Layout l{{Point{2, 2}, Point{-0.5, 2}}};
    const RiskGrid r = baseline_risk(make_grid(p.room), l, p, p.risk);
    for (std::size_t i = 0; i < r.cells.size(); ++i)
        if (r.mask[i]) CHECK(r.cells[i] == doctest::Approx(1.0));
}

TEST_CASE("cells next to a supportive object drop to 1 - strength") {
    Problem p = lit_room(4, 4);
    ObjectSpec rail = testing::free_object("rail", 2.0, 0.5);
    rail.support = {SupportProfile::supportive, 0.6, 1.0};
    p.objects.push_back(rail);
    const Layout l{{Point{2, 2}, Point{-0.5, 2}, Pose(2, 2, 0)}};
    const RiskGrid g = make_grid(p.room);
    const RiskGrid r = baseline_risk(g, l, p, p.risk);
    CHECK(r.cells[*g.cell_of({2.1, 2.1})] == doctest::Approx(0.7));     // under the footprint
    CHECK(r.cells[*g.cell_of({2.1, 2.35})] == doctest::Approx(1.0 - 0.3 * (1 - 0.125 / 0.6)));
    CHECK(r.cells[*g.cell_of({2.1, 3.6})] == doctest::Approx(1.0));     // out of reach
}

TEST_CASE("hazards raise risk symmetrically") {
    Problem p = lit_room(4, 4);
    ObjectSpec stand = testing::free_object("stand", 0.5, 0.5);
    stand.support = {SupportProfile::hazardous, 0.6, 1.0};
    p.objects.push_back(stand);
    const Layout l{{Point{2, 2}, Point{-0.5, 2}, Pose(2, 2, 0)}};
    const RiskGrid g = make_grid(p.room);
    const RiskGrid r = baseline_risk(g, l, p, p.risk);
    CHECK(r.cells[*g.cell_of({2.1, 2.1})] == doctest::Approx(1.3));
}

TEST_CASE("cells beyond every light's radius are dimmed") {
    Problem p = lit_room(10, 2);
    const Layout l{{Point{0.5, 1}, Point{-0.5, 1}}};
    const RiskGrid g = make_grid(p.room);
    const RiskGrid r = baseline_risk(g, l, p, p.risk);
    CHECK(r.cells[*g.cell_of({1.1, 1.1})] == doctest::Approx(1.0));
    CHECK(r.cells[*g.cell_of({8.6, 1.1})] == doctest::Approx(1.2));
}

TEST_CASE("flooring factor scales every cell") {
    RoomSpec::Options opts;
    opts.typology = Typology::outboard;
    opts.flooring_factor = 1.1;
    Problem p = testing::bare_problem(
        RoomSpec(Polygon::rectangle(0, 0, 4, 4), Polygon::rectangle(-1, 0, 0, 4), opts));
    p.objects = {testing::light("l1", RoomRequirement::main), testing::light("l2", RoomRequirement::bathroom)};
    const RiskGrid r = baseline_risk(make_grid(p.room), Layout{{Point{2, 2}, Point{-0.5, 2}}}, p, p.risk);
    for (std::size_t i = 0; i < r.cells.size(); ++i)
        if (r.mask[i]) CHECK(r.cells[i] == doctest::Approx(1.1));
}

TEST_CASE("straight trajectory across an empty room") {
    const Problem p = lit_room(4, 4);
    const Layout l{{Point{2, 2}, Point{-0.5, 2}}};
    const NavMap nav(make_grid(p.room), l, p);
    const auto path = nav.shortest_path({0.5, 2.1}, {3.5, 2.1});
    const auto smooth = smooth_path(nav, path);
    REQUIRE(smooth.size() == 2);
    Rng rng(1);
    const Trajectory t = sample_trajectory(nav, smooth, rng);
    CHECK(t.length() == doctest::Approx(3.0));
    CHECK(t.waypoints.front().activity == Activity::sit_to_stand);
    CHECK(t.waypoints.back().activity == Activity::stand_to_sit);
    for (std::size_t k = 1; k + 1 < t.waypoints.size(); ++k) {
        CHECK(t.waypoints[k].activity == Activity::walk);
        CHECK(t.waypoints[k].turn_angle == doctest::Approx(0.0));
        CHECK(distance(t.waypoints[k - 1].p, t.waypoints[k].p) <= 0.25 + 1e-9);
    }
}

TEST_CASE("trajectory between coincident points") {
    const Problem p = lit_room(4, 4);
    const NavMap nav(make_grid(p.room), Layout{{Point{2, 2}, Point{-0.5, 2}}}, p);
    const auto path = nav.shortest_path({1, 1}, {1, 1});
    Rng rng(0);
    const Trajectory t = sample_trajectory(nav, smooth_path(nav, path), rng);
    CHECK(t.length() == doctest::Approx(0.0));
    CHECK_FALSE(t.waypoints.empty());
}

TEST_CASE("path through a gap is close to the true shortest path") {
    Problem p = lit_room(6, 4);
    p.objects.push_back(testing::free_object("a", 0.4, 1.5));
    p.objects.push_back(testing::free_object("b", 0.4, 1.6));
    const Layout l{{Point{3, 2}, Point{-0.5, 2}, Pose(3, 0.75, 0), Pose(3, 3.2, 0)}};
    const NavMap nav(make_grid(p.room), l, p);
    const Point from{1, 0.5}, to{5, 0.5};
    const auto smooth = smooth_path(nav, nav.shortest_path(from, to));
    const double oracle = visibility_shortest(from, to, {{2.8, -1, 3.2, 1.5}, {2.8, 2.4, 3.2, 5}});
    CHECK(oracle == doctest::Approx(2 * std::hypot(1.8, 1.0) + 0.4));
    CHECK(std::abs(path_length(smooth) - oracle) < 0.1 * oracle);
    for (std::size_t k = 1; k < smooth.size(); ++k) CHECK(nav.clear_line(smooth[k - 1], smooth[k]));
}

TEST_CASE("wall-blocked room is unreachable") {
    Problem p = lit_room(6, 4);
    p.objects.push_back(testing::free_object("barrier", 0.4, 4.0));
    const Layout l{{Point{3, 2}, Point{-0.5, 2}, Pose(3, 2, 0)}};
    const NavMap nav(make_grid(p.room), l, p);
    CHECK_THROWS_AS(nav.shortest_path({1, 2}, {5, 2}), UnreachableError);
}

TEST_CASE("motion risk per activity") {
    const RiskFactors f;
    Trajectory t;
    t.waypoints = {{{0, 0}, Activity::sit_to_stand, 0.0},
                   {{1, 0}, Activity::walk, 0.0},
                   {{2, 0}, Activity::turn, kPi / 2},
                   {{2, 1}, Activity::stand_to_sit, 0.0}};
    const auto r = motion_risk(t, f);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == doctest::Approx(1.5));
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(r[2] == doctest::Approx(1.2 * (1 + 0.3 * kPi / 2)));
    CHECK(r[2] == doctest::Approx(1.77).epsilon(0.005));
    CHECK(r[3] == doctest::Approx(1.4));
}

TEST_CASE("labelling marks turns above 15 degrees") {
    const Trajectory t = label_trajectory({{0, 0}, {1, 0}, {2, 0.1}, {2, 1}, {2, 2}});
    CHECK(t.waypoints[1].activity == Activity::walk);
    CHECK(t.waypoints[2].activity == Activity::turn);
    CHECK(t.waypoints[2].turn_angle > deg_to_rad(15.0));
    CHECK(t.waypoints[3].activity == Activity::walk);
}

TEST_CASE("combining one trajectory point with a neutral cell") {
    const RiskGrid g = make_grid(testing::box_room(3, 4, 1, 0.25));
    Trajectory t;
    t.waypoints = {{{1.1, 1.1}, Activity::sit_to_stand, 0.0}};
    const std::vector<Trajectory> ts{t};
    const RiskGrid c = combined_risk(g, ts, RiskFactors{});
    CHECK(c.cells[*g.cell_of({1.1, 1.1})] == doctest::Approx(1.25));
    CHECK(c.cells[*g.cell_of({2.1, 1.1})] == doctest::Approx(1.0));
}

TEST_CASE("combined risk agrees with a brute-force per-cell average") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> base(0.5, 2.0), px(-1.0, 3.0), py(0.0, 4.0);
    std::uniform_int_distribution<int> act(0, 3);
    const RiskFactors f;
    for (int trial = 0; trial < 30; ++trial) {
        RiskGrid g = make_grid(testing::box_room(3, 4, 1, 0.5));
        for (double& v : g.cells) v = base(rng);
        std::vector<Trajectory> ts(3);
        for (Trajectory& t : ts)
            for (int k = 0; k < 20; ++k)
                t.waypoints.push_back({{px(rng), py(rng)}, static_cast<Activity>(act(rng)), 0.3 * (k % 3)});
        const RiskGrid c = combined_risk(g, ts, f);
        for (std::size_t col = 0; col < g.cols; ++col) {
            for (std::size_t row = 0; row < g.rows; ++row) {
                double sum = 0;
                int n = 0;
                for (const Trajectory& t : ts) {
                    const auto r = motion_risk(t, f);
                    for (std::size_t k = 0; k < r.size(); ++k) {
                        const Point q = t.waypoints[k].p;
                        if (std::floor((q.x + 1.0) / 0.5) == col && std::floor(q.y / 0.5) == row) {
                            sum += r[k];
                            ++n;
                        }
                    }
                }
                const double b = g.cells[g.index(col, row)];
                const double expect = n == 0 ? b : 0.5 * (b + sum / n);
                CHECK(c.cells[g.index(col, row)] == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("risk statistics") {
    const std::vector<double> even{4, 1, 3, 2};
    const RiskStats s = risk_stats(even);
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.max == 4.0);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.std == doctest::Approx(std::sqrt(1.25)));
    const std::vector<double> odd{3, 1, 2};
    CHECK(risk_stats(odd).median == 2.0);
    CHECK_THROWS_AS(risk_stats(std::vector<double>{}), std::invalid_argument);

    RiskGrid g = make_grid(chamfered_room());
    for (std::size_t i = 0; i < g.cells.size(); ++i) g.cells[i] = g.mask[i] ? 1.0 : 99.0;
    CHECK(risk_stats(g).max == 1.0);  // masked cells ignored
    CHECK(risk_stats(g).count == g.unmasked_count());
}

TEST_CASE("supports never raise and hazards never lower the baseline") {
    for (const char* t : {"inboard", "outboard"}) {
        const Problem p = testing::shipped(t);
        const RiskGrid g = make_grid(p.room);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Layout l = random_layout(p, seed);
            const RiskGrid full = baseline_risk(g, l, p, p.risk);
            for (std::size_t i = 0; i < p.objects.size(); ++i) {
                const SupportProfile prof = p.objects[i].support.profile;
                if (prof == SupportProfile::neutral) continue;
                Problem without = p;
                without.objects[i].support.profile = SupportProfile::neutral;
                const RiskGrid r = baseline_risk(g, l, without, p.risk);
                for (std::size_t c = 0; c < g.cells.size(); ++c) {
                    if (!g.mask[c]) continue;
                    if (prof == SupportProfile::supportive) CHECK(full.cells[c] <= r.cells[c] + 1e-12);
                    else CHECK(full.cells[c] >= r.cells[c] - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("trajectories never pass through furniture") {
    for (const char* t : {"inboard", "outboard"}) {
        const Problem p = testing::shipped(t);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Layout l = random_layout(p, seed);
            std::vector<Polygon> fps;
            for (std::size_t i = 0; i < p.objects.size(); ++i)
                if (p.objects[i].kind == DomainKind::free_pose || p.objects[i].kind == DomainKind::wall)
                    fps.push_back(footprint(p.objects[i], l.placements[i], p.room));
            std::vector<Trajectory> ts;
            const RiskGrid r = evaluate_risk(p, l, seed, &ts);
            CHECK_FALSE(r.unreachable);
            CHECK(ts.size() == p.scenarios.size() * p.risk.trajectories_per_scenario);
            for (const Trajectory& tr : ts)
                for (std::size_t k = 1; k < tr.waypoints.size(); ++k)
                    for (int m = 0; m <= 10; ++m) {
                        const Point q = tr.waypoints[k - 1].p + (m / 10.0) * (tr.waypoints[k].p - tr.waypoints[k - 1].p);
                        for (const Polygon& fp : fps) CHECK_FALSE(point_strictly_inside(fp, q));
                    }
        }
    }
}

TEST_CASE("risk does not depend on object order") {
    const Problem p = testing::shipped("outboard");
    const Layout l = random_layout(p, 3);
    Problem q = p;
    Layout m = l;
    std::reverse(q.objects.begin(), q.objects.end());
    std::reverse(m.placements.begin(), m.placements.end());
    const RiskGrid a = evaluate_risk(p, l, 11), b = evaluate_risk(q, m, 11);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(a.cells[i] == doctest::Approx(b.cells[i]).epsilon(1e-12));
}

TEST_CASE("evaluation is deterministic per seed") {
    const Problem p = testing::shipped("inboard");
    const Layout l = testing::traditional(p, "inboard");
    CHECK(evaluate_risk(p, l, 5).cells == evaluate_risk(p, l, 5).cells);
    CHECK_FALSE(evaluate_risk(p, l, 5).cells == evaluate_risk(p, l, 6).cells);
}
