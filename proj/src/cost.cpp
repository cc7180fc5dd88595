#include "ward/cost.hpp"

#include <limits>
#include <vector>

namespace ward {

double alpha_cutoff(const RiskStats& stats, const CostSpec& spec) {
    return spec.alpha.kind == AlphaRule::Kind::fixed ? spec.alpha.value : spec.alpha.value * stats.max;
}

double cost(std::span<const double> values, const CostSpec& spec) {
    const RiskStats st = risk_stats(values);
    const double alpha = alpha_cutoff(st, spec);
    double tail = 0.0;
    if (spec.tail_mode == TailMode::eq1_verbatim) {
        tail = st.std > 0.0 ? (alpha - st.mean) / st.std : 0.0;
    } else {
        double sum = 0.0;
        std::size_t n = 0;
        for (double v : values) {
            if (v > alpha) {
                sum += v;
                ++n;
            }
        }
        tail = n > 0 ? sum / static_cast<double>(n) : st.max;
    }
    return spec.w_median * st.median + spec.w_max * st.max + spec.w_tail * tail;
}

double cost(const RiskGrid& grid, const CostSpec& spec) {
    if (grid.unreachable) return std::numeric_limits<double>::infinity();
    std::vector<double> vals;
    vals.reserve(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i)
        if (grid.mask[i]) vals.push_back(grid.cells[i]);
    return cost(vals, spec);
}

}  // namespace ward
