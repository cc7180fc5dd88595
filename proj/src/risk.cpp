#include "ward/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ward/footprint.hpp"

namespace ward {

std::optional<std::size_t> RiskGrid::cell_of(Point p) const {
    const double fx = (p.x - origin.x) / resolution;
    const double fy = (p.y - origin.y) / resolution;
    if (fx < 0.0 || fy < 0.0) return std::nullopt;
    const auto c = static_cast<std::size_t>(fx);
    const auto r = static_cast<std::size_t>(fy);
    if (c >= cols || r >= rows) return std::nullopt;
    return index(c, r);
}

std::size_t RiskGrid::unmasked_count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

RiskGrid make_grid(const RoomSpec& room) {
    const double res = room.grid_resolution();
    if (!(res > 0.0)) throw ValidationError("grid resolution must be positive");
    const auto b = room.bounds();
    const double w = b.max_x - b.min_x;
    const double h = b.max_y - b.min_y;
    if (res > w || res > h) throw ValidationError("grid resolution is larger than the room");
    RiskGrid g;
    g.origin = {b.min_x, b.min_y};
    g.resolution = res;
    g.cols = static_cast<std::size_t>(std::ceil(w / res - 1e-9));
    g.rows = static_cast<std::size_t>(std::ceil(h / res - 1e-9));
    g.cells.assign(g.cols * g.rows, 1.0);
    g.mask.assign(g.cols * g.rows, 0);
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        const Point c = g.cell_center(i);
        g.mask[i] = contains(room.main_room(), c) || contains(room.bathroom(), c);
    }
    return g;
}

namespace {

double proximity_effect(double strength, double d, double reach) {
    if (reach <= 0.0) return 0.0;
    return strength * std::max(0.0, 1.0 - d / reach);
}

}  // namespace

RiskGrid baseline_risk(const RiskGrid& grid, const Layout& layout, const Problem& problem, const RiskFactors& f) {
    RiskGrid out = grid;
    out.unreachable = false;
    struct Influence {
        Polygon fp;
        double reach;
        double strength;
    };
    std::vector<Influence> supports, hazards;
    std::vector<Point> lights;
    std::vector<SwingArc> arcs;
    for (std::size_t i = 0; i < problem.objects.size(); ++i) {
        const ObjectSpec& o = problem.objects[i];
        const Placement& pl = layout.placements.at(i);
        if (o.kind == DomainKind::ceiling_light) {
            lights.push_back(std::get<Point>(pl));
            continue;
        }
        if (o.kind == DomainKind::door && problem.room.door_operation() == DoorOperation::swinging)
            arcs.push_back(door_swing_arc(o, pl, problem.room));
        if (o.support.profile == SupportProfile::supportive)
            supports.push_back({footprint(o, pl, problem.room), o.support.reach, f.support_strength * o.support.strength});
        else if (o.support.profile == SupportProfile::hazardous)
            hazards.push_back({footprint(o, pl, problem.room), o.support.reach, f.hazard_strength * o.support.strength});
    }

    for (std::size_t idx = 0; idx < out.cells.size(); ++idx) {
        if (!out.mask[idx]) {
            out.cells[idx] = 0.0;
            continue;
        }
        const Point c = out.cell_center(idx);
        double support = 1.0;
        for (const Influence& s : supports) {
            const double factor = 1.0 - proximity_effect(s.strength, point_polygon_distance(c, s.fp), s.reach);
            support = f.compound_support ? support * factor : std::min(support, factor);
        }
        double hazard = 1.0;
        for (const Influence& h : hazards) {
            const double factor = 1.0 + proximity_effect(h.strength, point_polygon_distance(c, h.fp), h.reach);
            hazard = f.compound_support ? hazard * factor : std::max(hazard, factor);
        }
        const bool lit = std::any_of(lights.begin(), lights.end(),
                                     [&](Point l) { return distance(l, c) <= f.lighting_radius; });
        const double lighting = lit ? 1.0 : f.lighting_dim_penalty;
        const bool in_swing = std::any_of(arcs.begin(), arcs.end(), [&](const SwingArc& a) { return a.contains(c); });
        const double door = in_swing ? f.door_swing_penalty : 1.0;
        out.cells[idx] = 1.0 * support * hazard * lighting * problem.room.flooring_factor() * door;
    }
    return out;
}

double Trajectory::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) len += distance(waypoints[i - 1].p, waypoints[i].p);
    return len;
}

NavMap::NavMap(const RiskGrid& grid, const Layout& layout, const Problem& problem) : grid_(grid) {
    for (std::size_t i = 0; i < problem.objects.size(); ++i) {
        const ObjectSpec& o = problem.objects[i];
        const Placement& pl = layout.placements.at(i);
        if (o.kind == DomainKind::free_pose || o.kind == DomainKind::wall)
            obstacles_.push_back(footprint(o, pl, problem.room));
        if (o.kind == DomainKind::door) {
            const Segment opening = door_opening(o, pl, problem.room);
            if (problem.room.walls().segment_at(std::get<WallCoord>(pl).s).shared) openings_.push_back(opening);
        }
    }
    for (const WallSegment& w : problem.room.walls().segments()) walls_.push_back(w.seg);
    blocked_.assign(grid_.cells.size(), false);
    for (std::size_t idx = 0; idx < blocked_.size(); ++idx)
        blocked_[idx] = !grid_.mask[idx] || inside_obstacle(grid_.cell_center(idx));
}

bool NavMap::inside_obstacle(Point p) const {
    return std::any_of(obstacles_.begin(), obstacles_.end(),
                       [p](const Polygon& fp) { return point_strictly_inside(fp, p); });
}

bool NavMap::crosses_wall(Point a, Point b) const {
    const Segment move{a, b};
    for (const Segment& w : walls_) {
        if (!segments_touch(move, w)) continue;
        const auto t = segment_intersection_param(move, w);
        if (!t) return true;  // runs along the wall
        const Point hit = a + *t * (b - a);
        const bool through_door = std::any_of(openings_.begin(), openings_.end(), [&](const Segment& o) {
            return point_segment_distance(hit, o) < kGeomEps && point_segment_distance(o.a, w) < kGeomEps &&
                   point_segment_distance(o.b, w) < kGeomEps;
        });
        if (!through_door) return true;
    }
    return false;
}

bool NavMap::clear_line(Point a, Point b) const {
    if (crosses_wall(a, b)) return false;
    const Point seg[2] = {a, b};
    if (distance(a, b) < 1e-12) return !inside_obstacle(a);
    return std::none_of(obstacles_.begin(), obstacles_.end(),
                        [&](const Polygon& fp) { return convex_overlap(seg, fp.vertices()); });
}

std::optional<std::size_t> NavMap::entry_cell(Point p) const {
    const auto home = grid_.cell_of(p);
    if (!home) return std::nullopt;
    if (!blocked_[*home] && clear_line(p, grid_.cell_center(*home))) return home;
    // Fall back to the closest free neighbour visible from p.
    const long c0 = static_cast<long>(*home % grid_.cols);
    const long r0 = static_cast<long>(*home / grid_.cols);
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
            const long c = c0 + dc, r = r0 + dr;
            if (c < 0 || r < 0 || c >= static_cast<long>(grid_.cols) || r >= static_cast<long>(grid_.rows)) continue;
            const std::size_t idx = grid_.index(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
            if (blocked_[idx]) continue;
            const double d = distance(p, grid_.cell_center(idx));
            if (d < best_d && clear_line(p, grid_.cell_center(idx))) {
                best_d = d;
                best = idx;
            }
        }
    }
    return best;
}

std::vector<Point> NavMap::shortest_path(Point from, Point to) const {
    if (distance(from, to) < 1e-12) return {from, to};
    const auto start = entry_cell(from);
    const auto goal = entry_cell(to);
    if (!start || !goal) throw UnreachableError("scenario endpoint is not in walkable space");

    const std::size_t n = grid_.cells.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> prev(n, n);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[*start] = 0.0;
    pq.push({0.0, *start});
    const long cols = static_cast<long>(grid_.cols), rows = static_cast<long>(grid_.rows);
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == *goal) break;
        const long cu = static_cast<long>(u % grid_.cols), ru = static_cast<long>(u / grid_.cols);
        for (long dr = -1; dr <= 1; ++dr) {
            for (long dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const long c = cu + dc, r = ru + dr;
                if (c < 0 || r < 0 || c >= cols || r >= rows) continue;
                const std::size_t v = grid_.index(static_cast<std::size_t>(c), static_cast<std::size_t>(r));
                if (blocked_[v]) continue;
                if (dr != 0 && dc != 0) {
                    const std::size_t side1 = grid_.index(static_cast<std::size_t>(cu + dc), static_cast<std::size_t>(ru));
                    const std::size_t side2 = grid_.index(static_cast<std::size_t>(cu), static_cast<std::size_t>(ru + dr));
                    if (blocked_[side1] || blocked_[side2]) continue;
                }
                if (crosses_wall(grid_.cell_center(u), grid_.cell_center(v))) continue;
                const double nd = d + grid_.resolution * ((dr != 0 && dc != 0) ? std::sqrt(2.0) : 1.0);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    prev[v] = u;
                    pq.push({nd, v});
                }
            }
        }
    }
    if (!std::isfinite(dist[*goal])) throw UnreachableError("no walkable path between scenario endpoints");
    std::vector<Point> cells;
    for (std::size_t v = *goal; v != n; v = prev[v]) cells.push_back(grid_.cell_center(v));
    std::reverse(cells.begin(), cells.end());
    std::vector<Point> path;
    path.push_back(from);
    path.insert(path.end(), cells.begin(), cells.end());
    path.push_back(to);
    return path;
}

std::vector<Point> smooth_path(const NavMap& nav, const std::vector<Point>& path) {
    if (path.size() <= 2) return path;
    std::vector<Point> out{path.front()};
    std::size_t i = 0;
    while (i + 1 < path.size()) {
        std::size_t j = path.size() - 1;
        while (j > i + 1 && !nav.clear_line(path[i], path[j])) --j;
        out.push_back(path[j]);
        i = j;
    }
    return out;
}

Trajectory label_trajectory(const std::vector<Point>& points) {
    const double turn_threshold = deg_to_rad(15.0);
    Trajectory t;
    for (Point p : points) t.waypoints.push_back({p, Activity::walk, 0.0});
    const std::size_t n = t.waypoints.size();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const Point in = points[k] - points[k - 1];
        const Point out = points[k + 1] - points[k];
        if (norm(in) < 1e-12 || norm(out) < 1e-12) continue;
        const double turn = std::abs(angle_diff(std::atan2(in.y, in.x), std::atan2(out.y, out.x)));
        t.waypoints[k].turn_angle = turn;
        if (turn > turn_threshold) t.waypoints[k].activity = Activity::turn;
    }
    if (n > 0) {
        t.waypoints.front().activity = Activity::sit_to_stand;
        t.waypoints.back().activity = Activity::stand_to_sit;
    }
    return t;
}

Trajectory sample_trajectory(const NavMap& nav, const std::vector<Point>& smoothed, Rng& rng) {
    std::vector<Point> corners = smoothed;
    const double sd = nav.grid().resolution;
    std::normal_distribution<double> noise(0.0, sd);
    for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            const double dx = noise(rng), dy = noise(rng);
            if (std::abs(dx) > 2.0 * sd || std::abs(dy) > 2.0 * sd) continue;
            const Point cand{corners[k].x + dx, corners[k].y + dy};
            const auto cell = nav.grid().cell_of(cand);
            if (!cell || !nav.grid().mask[*cell]) continue;
            if (nav.clear_line(corners[k - 1], cand) && nav.clear_line(cand, corners[k + 1])) {
                corners[k] = cand;
                break;
            }
        }
    }
    std::vector<Point> points;
    if (corners.size() == 2 && distance(corners[0], corners[1]) < 1e-12) return label_trajectory(corners);
    points.push_back(corners.front());
    for (std::size_t k = 0; k + 1 < corners.size(); ++k) {
        const Point a = corners[k], b = corners[k + 1];
        const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(distance(a, b) / sd - 1e-9)));
        for (std::size_t m = 1; m <= pieces; ++m)
            points.push_back(a + (static_cast<double>(m) / static_cast<double>(pieces)) * (b - a));
    }
    return label_trajectory(points);
}

Trajectory simulate_trajectory(const NavMap& nav, const Layout& layout, const Problem& problem,
                               const Scenario& scenario, Rng& rng) {
    const std::size_t from = problem.index_of(scenario.from);
    const std::size_t to = problem.index_of(scenario.to);
    const auto a = interaction_point(problem.objects[from], layout.placements.at(from), problem.room);
    const auto b = interaction_point(problem.objects[to], layout.placements.at(to), problem.room);
    if (!a || !b) throw UnreachableError("scenario object has no interaction point");
    const auto path = nav.shortest_path(*a, *b);
    return sample_trajectory(nav, smooth_path(nav, path), rng);
}

std::vector<double> motion_risk(const Trajectory& traj, const RiskFactors& f) {
    std::vector<double> out;
    out.reserve(traj.waypoints.size());
    for (const Waypoint& w : traj.waypoints) {
        double mult = f.walk;
        switch (w.activity) {
            case Activity::sit_to_stand: mult = f.sit_to_stand; break;
            case Activity::stand_to_sit: mult = f.stand_to_sit; break;
            case Activity::turn: mult = f.turn_base; break;
            case Activity::walk: mult = f.walk; break;
        }
        out.push_back(mult * (1.0 + f.turn_angle_gain * std::abs(w.turn_angle)));
    }
    return out;
}

RiskGrid combined_risk(const RiskGrid& baseline, std::span<const Trajectory> trajectories, const RiskFactors& f) {
    std::vector<double> sum(baseline.cells.size(), 0.0);
    std::vector<std::size_t> count(baseline.cells.size(), 0);
    for (const Trajectory& t : trajectories) {
        const auto risks = motion_risk(t, f);
        for (std::size_t k = 0; k < risks.size(); ++k) {
            const auto cell = baseline.cell_of(t.waypoints[k].p);
            if (!cell || !baseline.mask[*cell]) continue;
            sum[*cell] += risks[k];
            ++count[*cell];
        }
    }
    RiskGrid out = baseline;
    for (std::size_t i = 0; i < out.cells.size(); ++i)
        if (count[i] > 0) out.cells[i] = 0.5 * (baseline.cells[i] + sum[i] / static_cast<double>(count[i]));
    return out;
}

RiskStats risk_stats(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("risk statistics need at least one cell");
    std::vector<double> v(values.begin(), values.end());
    RiskStats s;
    s.count = v.size();
    double total = 0.0;
    for (double x : v) total += x;
    s.mean = total / static_cast<double>(v.size());
    double sq = 0.0;
    for (double x : v) sq += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(sq / static_cast<double>(v.size()));
    std::sort(v.begin(), v.end());
    s.max = v.back();
    const std::size_t mid = v.size() / 2;
    s.median = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    return s;
}

RiskStats risk_stats(const RiskGrid& grid) {
    std::vector<double> vals;
    vals.reserve(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i)
        if (grid.mask[i]) vals.push_back(grid.cells[i]);
    return risk_stats(vals);
}

RiskGrid evaluate_risk(const Problem& problem, const Layout& layout, std::uint64_t seed) {
    return evaluate_risk(problem, layout, seed, nullptr);
}

RiskGrid evaluate_risk(const Problem& problem, const Layout& layout, std::uint64_t seed,
                       std::vector<Trajectory>* trajectories) {
    const RiskGrid grid = make_grid(problem.room);
    const RiskGrid base = baseline_risk(grid, layout, problem, problem.risk);
    std::vector<Trajectory> all;
    bool unreachable = false;
    if (problem.risk.trajectories_per_scenario > 0 && !problem.scenarios.empty()) {
        const NavMap nav(grid, layout, problem);
        for (std::size_t s = 0; s < problem.scenarios.size(); ++s) {
            const Scenario& sc = problem.scenarios[s];
            const std::size_t from = problem.index_of(sc.from);
            const std::size_t to = problem.index_of(sc.to);
            const auto a = interaction_point(problem.objects[from], layout.placements.at(from), problem.room);
            const auto b = interaction_point(problem.objects[to], layout.placements.at(to), problem.room);
            std::vector<Point> smoothed;
            try {
                if (!a || !b) throw UnreachableError("scenario object has no interaction point");
                smoothed = smooth_path(nav, nav.shortest_path(*a, *b));
            } catch (const UnreachableError&) {
                unreachable = true;
                continue;
            }
            for (std::size_t t = 0; t < problem.risk.trajectories_per_scenario; ++t) {
                Rng rng(derive_seed(seed, s * 1000003ULL + t));
                all.push_back(sample_trajectory(nav, smoothed, rng));
            }
        }
    }
    RiskGrid out = combined_risk(base, all, problem.risk);
    out.unreachable = unreachable;
    if (trajectories) *trajectories = std::move(all);
    return out;
}

}  // namespace ward
