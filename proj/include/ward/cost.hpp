#pragma once

#include "ward/params.hpp"
#include "ward/risk.hpp"

namespace ward {

/// Tail cut-off: a fraction of the current layout's max risk, or a fixed value.
double alpha_cutoff(const RiskStats& stats, const CostSpec& spec);

/// Scalar objective over the unmasked cells:
///   w_median * median + w_max * max + w_tail * tail
/// where tail is (alpha - mean) / std (0 when std == 0) in eq1_verbatim mode, or the mean of
/// the cells strictly above alpha in cvar mode (max when none are). Unreachable grids cost +inf.
double cost(const RiskGrid& grid, const CostSpec& spec);

/// Same formula over a bare list of cell values.
double cost(std::span<const double> values, const CostSpec& spec);

}  // namespace ward
