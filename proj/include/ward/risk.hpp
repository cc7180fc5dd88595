#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ward/geometry.hpp"
#include "ward/params.hpp"
#include "ward/rng.hpp"
#include "ward/room_model.hpp"

namespace ward {

/// Per-cell fall-risk map over the room's bounding box. 1.0 is neutral; masked cells are
/// outside both sub-rooms and excluded from every statistic.
struct RiskGrid {
    Point origin;
    double resolution = 0.25;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::vector<double> cells;         // row-major, row 0 at origin.y
    std::vector<std::uint8_t> mask;    // 1 = in room
    bool unreachable = false;          // some scenario had no path

    std::size_t index(std::size_t col, std::size_t row) const { return row * cols + col; }
    Point cell_center(std::size_t col, std::size_t row) const {
        return {origin.x + (static_cast<double>(col) + 0.5) * resolution,
                origin.y + (static_cast<double>(row) + 0.5) * resolution};
    }
    Point cell_center(std::size_t idx) const { return cell_center(idx % cols, idx / cols); }
    std::optional<std::size_t> cell_of(Point p) const;
    std::size_t unmasked_count() const;
};

RiskGrid make_grid(const RoomSpec& room);

/// Static layer: 1 x support x hazard x lighting x flooring x door swing, per cell centre.
RiskGrid baseline_risk(const RiskGrid& grid, const Layout& layout, const Problem& problem, const RiskFactors& factors);

enum class Activity { sit_to_stand, walk, turn, stand_to_sit };

struct Waypoint {
    Point p;
    Activity activity = Activity::walk;
    double turn_angle = 0.0;  // radians, heading change at this waypoint
};

struct Trajectory {
    std::vector<Waypoint> waypoints;
    double length() const;
};

class UnreachableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Walkable space for one layout: blocked cells, walls, and the door openings a patient may pass.
class NavMap {
public:
    NavMap(const RiskGrid& grid, const Layout& layout, const Problem& problem);

    bool blocked(std::size_t cell) const { return blocked_[cell]; }
    /// Straight walk from a to b crosses no wall (outside a passable opening) and no obstacle interior.
    bool clear_line(Point a, Point b) const;
    bool inside_obstacle(Point p) const;
    const RiskGrid& grid() const { return grid_; }

    /// 8-connected shortest cell path, returned as [from, cell centres..., to].
    std::vector<Point> shortest_path(Point from, Point to) const;

private:
    bool crosses_wall(Point a, Point b) const;
    std::optional<std::size_t> entry_cell(Point p) const;

    RiskGrid grid_;
    std::vector<Polygon> obstacles_;
    std::vector<Segment> walls_;
    std::vector<Segment> openings_;
    std::vector<bool> blocked_;
};

/// Removes waypoints while line of sight holds (string pulling).
std::vector<Point> smooth_path(const NavMap& nav, const std::vector<Point>& path);

/// Perturbs the smoothed corners, resamples to at most one cell spacing, and labels activities.
Trajectory sample_trajectory(const NavMap& nav, const std::vector<Point>& smoothed, Rng& rng);

/// One stochastic patient trajectory for the scenario. Throws UnreachableError when no path exists.
Trajectory simulate_trajectory(const NavMap& nav, const Layout& layout, const Problem& problem,
                               const Scenario& scenario, Rng& rng);

/// Labels activities and turning angles along a resampled polyline.
Trajectory label_trajectory(const std::vector<Point>& points);

/// Risk contributed by each waypoint, in waypoint order.
std::vector<double> motion_risk(const Trajectory& traj, const RiskFactors& factors);

/// Per cell: baseline where no trajectory point falls, otherwise the mean of the baseline value
/// and the mean trajectory-point risk in that cell.
RiskGrid combined_risk(const RiskGrid& baseline, std::span<const Trajectory> trajectories, const RiskFactors& factors);

struct RiskStats {
    double median = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;  // population
    std::size_t count = 0;
};

RiskStats risk_stats(const RiskGrid& grid);
RiskStats risk_stats(std::span<const double> values);

/// The full model r(layout): baseline plus trajectories sampled from `seed`.
RiskGrid evaluate_risk(const Problem& problem, const Layout& layout, std::uint64_t seed);

/// Same, also returning the sampled trajectories.
RiskGrid evaluate_risk(const Problem& problem, const Layout& layout, std::uint64_t seed,
                       std::vector<Trajectory>* trajectories);

}  // namespace ward
