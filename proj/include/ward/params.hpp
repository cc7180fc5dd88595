#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

// Tunable parameter blocks shared by the problem file, the optimizer and the risk model.

namespace ward {

/// Magnitudes of the reconstructed fall-risk model. Every default is a representative value.
struct RiskFactors {
    double support_strength = 0.3;
    double hazard_strength = 0.3;
    double lighting_radius = 3.0;       // meters
    double lighting_dim_penalty = 1.2;  // >= 1
    double door_swing_penalty = 1.2;    // >= 1
    double sit_to_stand = 1.5;
    double stand_to_sit = 1.4;
    double walk = 1.0;
    double turn_base = 1.2;
    double turn_angle_gain = 0.3;  // per radian
    std::size_t trajectories_per_scenario = 10;
    bool compound_support = false;  // multiply all supports/hazards instead of taking the strongest
};

enum class TailMode { eq1_verbatim, cvar };

struct AlphaRule {
    enum class Kind { fraction_of_max, fixed } kind = Kind::fraction_of_max;
    double value = 0.95;

    static AlphaRule fraction(double f) { return {Kind::fraction_of_max, f}; }
    static AlphaRule fixed_value(double v) { return {Kind::fixed, v}; }
};

struct CostSpec {
    double w_median = 0.33;
    double w_max = 0.33;
    double w_tail = 0.33;
    AlphaRule alpha;
    TailMode tail_mode = TailMode::eq1_verbatim;
};

struct SAParams {
    double t0 = 10.0;
    double k = 0.8;
    double kappa = 1.0;
    std::size_t num_cycles = 25;
    std::size_t num_trials = 30;
    std::uint64_t seed = 0;
};

/// Standard deviations for one (object class, sub-room) cell of the perturbation table.
struct Sigma {
    double x = 0.0;      // meters
    double y = 0.0;      // meters
    double theta = 0.0;  // radians
    double w = 0.0;      // meters along the wall chain
};

struct PerturbationSpec {
    struct Row {
        Sigma furniture;
        Sigma wall_furniture;
        Sigma light;
        Sigma door;
    };
    Row main;
    Row bathroom;

    /// The published table: furniture 1 m / 30 deg (0.5 m in the bathroom), wall furniture 5 m / 1 m,
    /// lights 1 m, doors 4 m / 2 m.
    static PerturbationSpec defaults();
    static PerturbationSpec zeros() { return {}; }
};

enum class VariableOrder { wall_free_door_light, as_listed };

struct SamplerBudget {
    double timeout_s = 5.0;
    std::size_t max_attempts_per_variable = 50;
    std::optional<std::size_t> max_backtrack_depth;  // default 10 * n
    VariableOrder order = VariableOrder::wall_free_door_light;

    std::size_t backtrack_limit(std::size_t n) const { return max_backtrack_depth.value_or(10 * n); }
};

}  // namespace ward
