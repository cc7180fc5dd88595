#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ward/constraints.hpp"
#include "ward/params.hpp"
#include "ward/rng.hpp"
#include "ward/room_model.hpp"

namespace ward {

/// exp(-delta_c / (kappa * T)) clamped to [0, 1]; non-positive deltas give 1.
double metropolis(double delta_c, double kappa, double temperature);

/// Geometric cooling: k * T_prev.
double schedule_step(double t_prev, double k);

struct IterationRecord {
    std::size_t cycle = 0;  // 1-based
    std::size_t trial = 0;  // 1-based
    double temperature = 0.0;
    double c_next = 0.0;     // NaN when no neighbour could be generated
    double c_current = 0.0;  // after the acceptance decision
    double c_best = 0.0;
    double probability = 0.0;
    double draw = 0.0;
    bool accepted = false;
    bool neighbor_failed = false;
};

struct RunHistory {
    double initial_cost = 0.0;
    std::vector<IterationRecord> records;

    std::vector<double> current_series() const;
    std::vector<double> best_series() const;
};

std::string history_csv(const RunHistory& history);
RunHistory parse_history_csv(const std::string& text);

template <typename State>
struct AnnealResult {
    State best;
    double best_cost = 0.0;
    RunHistory history;
};

/// Simulated annealing over an arbitrary state. `neighbor(state, iteration)` returns a candidate
/// or nullopt (the trial is then rejected); `evaluate(state, iteration)` scores it. Acceptance
/// draws come from `accept_rng`, one per trial.
template <typename State, typename NeighborFn, typename CostFn>
AnnealResult<State> anneal(State initial, double initial_cost, NeighborFn&& neighbor, CostFn&& evaluate,
                           const SAParams& params, Rng& accept_rng) {
    AnnealResult<State> out{initial, initial_cost, {}};
    out.history.initial_cost = initial_cost;
    out.history.records.reserve(params.num_cycles * params.num_trials);
    State current = std::move(initial);
    double c_current = initial_cost;
    double temperature = params.t0;
    std::size_t iteration = 0;
    for (std::size_t cycle = 1; cycle <= params.num_cycles; ++cycle) {
        temperature = schedule_step(temperature, params.k);
        for (std::size_t trial = 1; trial <= params.num_trials; ++trial, ++iteration) {
            IterationRecord rec;
            rec.cycle = cycle;
            rec.trial = trial;
            rec.temperature = temperature;
            rec.draw = uniform_open01(accept_rng);
            std::optional<State> next = neighbor(current, iteration);
            if (!next) {
                rec.neighbor_failed = true;
                rec.c_next = std::numeric_limits<double>::quiet_NaN();
            } else {
                const double c_next = evaluate(*next, iteration);
                rec.c_next = c_next;
                rec.probability = metropolis(c_next - c_current, params.kappa, temperature);
                if (c_next < c_current || rec.draw < rec.probability) {
                    rec.accepted = true;
                    current = std::move(*next);
                    c_current = c_next;
                    if (c_current < out.best_cost) {
                        out.best = current;
                        out.best_cost = c_current;
                    }
                }
            }
            rec.c_current = c_current;
            rec.c_best = out.best_cost;
            out.history.records.push_back(rec);
        }
    }
    return out;
}

/// Scores a layout; `seed` drives any stochastic part of the evaluation.
using Evaluator = std::function<double(const Layout&, std::uint64_t seed)>;

/// Risk model followed by the cost function.
Evaluator risk_cost_evaluator(const Problem& problem, const CostSpec& spec);

struct OptimizeResult {
    Layout initial;
    double initial_cost = 0.0;
    Layout best;
    double best_cost = 0.0;
    RunHistory history;
};

/// Annealing over feasible layouts: a random feasible start, Gaussian feasible neighbours,
/// Metropolis acceptance and geometric cooling. Deterministic for a given params.seed.
/// An empty `evaluator` means risk_cost_evaluator(problem, cost_spec).
OptimizeResult optimize(const Problem& problem, const ConstraintSet& cs, const CostSpec& cost_spec,
                        const PerturbationSpec& sigma, const SAParams& params, const Evaluator& evaluator,
                        const SamplerBudget& budget);

/// Seed streams used by optimize, exposed so callers can re-score a run's layouts.
std::uint64_t initial_eval_seed(std::uint64_t run_seed);
std::uint64_t trial_eval_seed(std::uint64_t run_seed, std::size_t iteration);

}  // namespace ward
