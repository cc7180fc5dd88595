#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ward/constraints.hpp"
#include "ward/params.hpp"
#include "ward/rng.hpp"
#include "ward/room_model.hpp"

namespace ward {

/// No feasible completion within the budget. Carries the deepest partial assignment reached.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, PartialLayout deepest)
        : std::runtime_error(what), deepest_(std::move(deepest)) {}
    const PartialLayout& deepest() const { return deepest_; }

private:
    PartialLayout deepest_;
};

using Clock = std::chrono::steady_clock;

/// Draws a candidate value for one variable; nullopt when no in-domain value was found.
using Proposal = std::function<std::optional<Placement>(std::size_t index, Rng& rng)>;

/// Assignment order: wall furniture, free furniture, doors, lights; larger footprints first
/// within each group. `as_listed` keeps the problem's order.
std::vector<std::size_t> variable_order(const Problem& problem, VariableOrder order);

/// Uniform draw from the object's domain (its sub-room for free objects and lights, eligible
/// wall spans for wall objects and doors).
std::optional<Placement> uniform_proposal(const Problem& problem, std::size_t index, Rng& rng);

/// Normal draw centred on `center`; wall coordinates wrap around the chain, angles modulo 2*pi,
/// and out-of-domain positions are re-drawn.
std::optional<Placement> gaussian_proposal(const Problem& problem, std::size_t index, const Placement& center,
                                           const PerturbationSpec& sigma, Rng& rng);

/// Perturbation row entry that applies to object `index`.
Sigma sigma_for(const Problem& problem, std::size_t index, const PerturbationSpec& sigma,
                const Placement* current = nullptr);

/// Assigns the variables in `order` one at a time, re-sampling on violation and stepping back to
/// the previous variable when one runs out of attempts. Entries of `partial` outside `order` are
/// held fixed.
Layout place_with_backtracking(const Problem& problem, const ConstraintSet& cs, PartialLayout partial,
                               std::span<const std::size_t> order, const Proposal& proposal, Rng& rng,
                               const SamplerBudget& budget, std::optional<Clock::time_point> deadline = std::nullopt);

/// Random feasible layout. Restarts the search until the budget's timeout expires.
Layout sample_initial(const Problem& problem, const ConstraintSet& cs, Rng& rng, const SamplerBudget& budget);

/// Feasible layout near `current` (every variable re-drawn around its current value).
Layout nearby_layout(const Problem& problem, const Layout& current, const PerturbationSpec& sigma,
                     const ConstraintSet& cs, Rng& rng, const SamplerBudget& budget);

}  // namespace ward
