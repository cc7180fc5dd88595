#include "ward/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ward {

namespace {

constexpr int kMaxRedraws = 200;

struct Interval {
    double lo;
    double hi;
};

bool segment_eligible(const ObjectSpec& obj, const WallSegment& w) {
    if (obj.kind == DomainKind::door) {
        if (w.owner != SubRoom::main) return false;
        if (obj.door_role == DoorRole::hallway) return w.hallway;
        if (obj.door_role == DoorRole::bathroom) return w.shared;
        return true;
    }
    switch (obj.sub_room) {
        case RoomRequirement::main: return w.owner == SubRoom::main;
        case RoomRequirement::bathroom: return w.owner == SubRoom::bathroom;
        case RoomRequirement::either: return true;
    }
    return false;
}

// Centre positions at which the object fits entirely on one eligible segment.
std::vector<Interval> wall_domain(const Problem& p, const ObjectSpec& obj) {
    std::vector<Interval> out;
    const double half = 0.5 * obj.width;
    for (const WallSegment& w : p.room.walls().segments()) {
        if (!segment_eligible(obj, w) || w.length() < obj.width) continue;
        out.push_back({w.start_s + half, w.end_s() - half});
    }
    return out;
}

bool in_domain(const std::vector<Interval>& dom, double s) {
    return std::any_of(dom.begin(), dom.end(), [s](const Interval& iv) { return s >= iv.lo && s <= iv.hi; });
}

std::vector<const Polygon*> area_domain(const Problem& p, const ObjectSpec& obj) {
    switch (obj.sub_room) {
        case RoomRequirement::main: return {&p.room.main_room()};
        case RoomRequirement::bathroom: return {&p.room.bathroom()};
        case RoomRequirement::either: return {&p.room.main_room(), &p.room.bathroom()};
    }
    return {};
}

bool in_area(const std::vector<const Polygon*>& dom, Point q) {
    return std::any_of(dom.begin(), dom.end(), [q](const Polygon* poly) { return contains(*poly, q); });
}

std::optional<Point> uniform_point(const std::vector<const Polygon*>& dom, Rng& rng) {
    double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
    for (const Polygon* poly : dom) {
        const auto b = poly->bounds();
        min_x = std::min(min_x, b.min_x);
        min_y = std::min(min_y, b.min_y);
        max_x = std::max(max_x, b.max_x);
        max_y = std::max(max_y, b.max_y);
    }
    std::uniform_real_distribution<double> ux(min_x, max_x), uy(min_y, max_y);
    for (int i = 0; i < kMaxRedraws; ++i) {
        const Point q{ux(rng), uy(rng)};
        if (in_area(dom, q)) return q;
    }
    return std::nullopt;
}

double draw_normal(Rng& rng, double mean, double sd) {
    if (sd <= 0.0) return mean;
    std::normal_distribution<double> n(mean, sd);
    return n(rng);
}

}  // namespace

std::vector<std::size_t> variable_order(const Problem& problem, VariableOrder order) {
    std::vector<std::size_t> idx(problem.objects.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (order == VariableOrder::as_listed) return idx;
    auto group = [&](std::size_t i) {
        switch (problem.objects[i].kind) {
            case DomainKind::wall: return 0;
            case DomainKind::free_pose: return 1;
            case DomainKind::door: return 2;
            case DomainKind::ceiling_light: return 3;
        }
        return 4;
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (group(a) != group(b)) return group(a) < group(b);
        const double area_a = problem.objects[a].width * problem.objects[a].depth;
        const double area_b = problem.objects[b].width * problem.objects[b].depth;
        return area_a > area_b;
    });
    return idx;
}

std::optional<Placement> uniform_proposal(const Problem& problem, std::size_t index, Rng& rng) {
    const ObjectSpec& obj = problem.objects.at(index);
    switch (obj.kind) {
        case DomainKind::wall:
        case DomainKind::door: {
            const auto dom = wall_domain(problem, obj);
            double total = 0.0;
            for (const Interval& iv : dom) total += iv.hi - iv.lo;
            if (dom.empty()) return std::nullopt;
            if (total <= 0.0) return WallCoord{dom.front().lo};
            double u = std::uniform_real_distribution<double>(0.0, total)(rng);
            for (const Interval& iv : dom) {
                const double len = iv.hi - iv.lo;
                if (u <= len) return WallCoord{iv.lo + u};
                u -= len;
            }
            return WallCoord{dom.back().hi};
        }
        case DomainKind::free_pose: {
            const auto q = uniform_point(area_domain(problem, obj), rng);
            if (!q) return std::nullopt;
            const double theta = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
            return Pose(q->x, q->y, theta);
        }
        case DomainKind::ceiling_light: {
            const auto q = uniform_point(area_domain(problem, obj), rng);
            if (!q) return std::nullopt;
            return *q;
        }
    }
    return std::nullopt;
}

Sigma sigma_for(const Problem& problem, std::size_t index, const PerturbationSpec& sigma, const Placement* current) {
    const ObjectSpec& obj = problem.objects.at(index);
    bool bathroom = obj.sub_room == RoomRequirement::bathroom;
    if (obj.kind == DomainKind::door) bathroom = obj.door_role == DoorRole::bathroom;
    if (obj.sub_room == RoomRequirement::either && current) {
        if (const auto* pose = std::get_if<Pose>(current)) bathroom = contains(problem.room.bathroom(), pose->position());
        if (const auto* pt = std::get_if<Point>(current)) bathroom = contains(problem.room.bathroom(), *pt);
        if (const auto* wc = std::get_if<WallCoord>(current))
            bathroom = problem.room.walls().segment_at(wc->s).owner == SubRoom::bathroom;
    }
    const PerturbationSpec::Row& row = bathroom ? sigma.bathroom : sigma.main;
    switch (obj.kind) {
        case DomainKind::free_pose: return row.furniture;
        case DomainKind::wall: return row.wall_furniture;
        case DomainKind::ceiling_light: return row.light;
        case DomainKind::door: return row.door;
    }
    return {};
}

std::optional<Placement> gaussian_proposal(const Problem& problem, std::size_t index, const Placement& center,
                                           const PerturbationSpec& sigma, Rng& rng) {
    const ObjectSpec& obj = problem.objects.at(index);
    const Sigma sd = sigma_for(problem, index, sigma, &center);
    switch (obj.kind) {
        case DomainKind::wall:
        case DomainKind::door: {
            const double s0 = std::get<WallCoord>(center).s;
            if (sd.w <= 0.0) return center;
            const double total = problem.room.walls().total_length();
            const auto dom = wall_domain(problem, obj);
            for (int i = 0; i < kMaxRedraws; ++i) {
                double s = std::fmod(draw_normal(rng, s0, sd.w), total);
                if (s < 0.0) s += total;
                if (s >= total) s = 0.0;
                if (in_domain(dom, s)) return WallCoord{s};
            }
            return std::nullopt;
        }
        case DomainKind::free_pose: {
            const Pose& p0 = std::get<Pose>(center);
            if (sd.x <= 0.0 && sd.y <= 0.0 && sd.theta <= 0.0) return center;
            const auto dom = area_domain(problem, obj);
            for (int i = 0; i < kMaxRedraws; ++i) {
                const double x = draw_normal(rng, p0.x, sd.x);
                const double y = draw_normal(rng, p0.y, sd.y);
                const double theta = draw_normal(rng, p0.theta, sd.theta);
                if (in_area(dom, {x, y})) return Pose(x, y, theta);
            }
            return std::nullopt;
        }
        case DomainKind::ceiling_light: {
            const Point& p0 = std::get<Point>(center);
            if (sd.x <= 0.0 && sd.y <= 0.0) return center;
            const auto dom = area_domain(problem, obj);
            for (int i = 0; i < kMaxRedraws; ++i) {
                const Point q{draw_normal(rng, p0.x, sd.x), draw_normal(rng, p0.y, sd.y)};
                if (in_area(dom, q)) return q;
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

Layout place_with_backtracking(const Problem& problem, const ConstraintSet& cs, PartialLayout partial,
                               std::span<const std::size_t> order, const Proposal& proposal, Rng& rng,
                               const SamplerBudget& budget, std::optional<Clock::time_point> deadline) {
    const std::size_t n = problem.objects.size();
    if (partial.size() != n) throw std::invalid_argument("partial layout size does not match the problem");
    for (std::size_t v : order) partial.at(v).reset();

    std::vector<std::vector<std::size_t>> relevant(n);
    for (std::size_t v : order)
        for (std::size_t c = 0; c < cs.size(); ++c)
            if (involves(cs[c], v)) relevant[v].push_back(c);

    const std::size_t backtrack_limit = budget.backtrack_limit(n);
    std::vector<std::size_t> attempts(order.size(), 0);
    std::size_t pos = 0;
    std::size_t backtracks = 0;
    std::size_t deepest_pos = 0;
    PartialLayout deepest = partial;

    while (pos < order.size()) {
        if (deadline && Clock::now() > *deadline) throw InfeasibleError("layout generation timed out", deepest);
        const std::size_t v = order[pos];
        if (attempts[pos] >= budget.max_attempts_per_variable) {
            partial[v].reset();
            if (pos == 0 || backtracks >= backtrack_limit)
                throw InfeasibleError("no feasible assignment for '" + problem.objects[v].id + "'", deepest);
            ++backtracks;
            --pos;
            partial[order[pos]].reset();
            continue;
        }
        ++attempts[pos];
        auto candidate = proposal(v, rng);
        if (!candidate) continue;
        partial[v] = std::move(*candidate);
        const bool ok = std::all_of(relevant[v].begin(), relevant[v].end(),
                                    [&](std::size_t c) { return check(cs[c], partial, problem); });
        if (!ok) {
            partial[v].reset();
            continue;
        }
        ++pos;
        if (pos < order.size()) attempts[pos] = 0;
        if (pos > deepest_pos) {
            deepest_pos = pos;
            deepest = partial;
        }
    }

    Layout out;
    out.placements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!partial[i]) throw InfeasibleError("variable '" + problem.objects[i].id + "' left unassigned", partial);
        out.placements.push_back(*partial[i]);
    }
    return out;
}

namespace {

Layout search_until_deadline(const Problem& problem, const ConstraintSet& cs, const Proposal& proposal, Rng& rng,
                             const SamplerBudget& budget) {
    const auto deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.timeout_s));
    const auto order = variable_order(problem, budget.order);
    PartialLayout best_partial(problem.objects.size());
    std::size_t best_count = 0;
    std::string last_reason = "layout generation timed out";
    do {
        try {
            return place_with_backtracking(problem, cs, PartialLayout(problem.objects.size()), order, proposal, rng,
                                           budget, deadline);
        } catch (const InfeasibleError& e) {
            const auto count = static_cast<std::size_t>(
                std::count_if(e.deepest().begin(), e.deepest().end(), [](const auto& p) { return p.has_value(); }));
            if (count >= best_count) {
                best_count = count;
                best_partial = e.deepest();
            }
            last_reason = e.what();
        }
    } while (Clock::now() <= deadline);
    throw InfeasibleError(last_reason + " (budget exhausted)", best_partial);
}

}  // namespace

Layout sample_initial(const Problem& problem, const ConstraintSet& cs, Rng& rng, const SamplerBudget& budget) {
    if (problem.objects.empty()) return {};
    const Proposal proposal = [&](std::size_t i, Rng& r) { return uniform_proposal(problem, i, r); };
    return search_until_deadline(problem, cs, proposal, rng, budget);
}

Layout nearby_layout(const Problem& problem, const Layout& current, const PerturbationSpec& sigma,
                     const ConstraintSet& cs, Rng& rng, const SamplerBudget& budget) {
    if (current.placements.size() != problem.objects.size())
        throw std::invalid_argument("current layout size does not match the problem");
    if (problem.objects.empty()) return current;
    const Proposal proposal = [&](std::size_t i, Rng& r) {
        return gaussian_proposal(problem, i, current.placements[i], sigma, r);
    };
    return search_until_deadline(problem, cs, proposal, rng, budget);
}

}  // namespace ward
