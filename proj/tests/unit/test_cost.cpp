#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ward/cost.hpp"
#include "../support/fixtures.hpp"

using namespace ward;

namespace {

// Independent statistics: selection-based median, two-pass moments.
double oracle_cost(std::vector<double> v, const CostSpec& spec) {
    const std::size_t n = v.size();
    double mx = v[0];
    double sum = 0;
    for (double x : v) {
        mx = x > mx ? x : mx;
        sum += x;
    }
    const double mean = sum / n;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double med = v[n / 2];
    if (n % 2 == 0) med = 0.5 * (med + *std::max_element(v.begin(), v.begin() + n / 2));
    const double alpha = spec.alpha.kind == AlphaRule::Kind::fixed ? spec.alpha.value : spec.alpha.value * mx;
    double tail;
    if (spec.tail_mode == TailMode::eq1_verbatim) {
        tail = sd == 0 ? 0 : (alpha - mean) / sd;
    } else {
        double s = 0;
        int k = 0;
        for (double x : v)
            if (x > alpha) {
                s += x;
                ++k;
            }
        tail = k == 0 ? mx : s / k;
    }
    return spec.w_median * med + spec.w_max * mx + spec.w_tail * tail;
}

}  // namespace

TEST_CASE("alpha cut-off") {
    RiskStats s;
    s.max = 2.0;
    CostSpec spec;
    CHECK(alpha_cutoff(s, spec) == doctest::Approx(1.9));
    spec.alpha = AlphaRule::fixed_value(1.5);
    CHECK(alpha_cutoff(s, spec) == 1.5);
    spec.alpha = AlphaRule::fraction(1.0);
    CHECK(alpha_cutoff(s, spec) == 2.0);
}

TEST_CASE("cost examples") {
    const std::vector<double> cells{1, 1, 1, 1, 2};
    CostSpec spec;
    CHECK(cost(cells, spec) == doctest::Approx(1.5675));
    const std::vector<double> flat(25, 1.0);
    CHECK(cost(flat, spec) == doctest::Approx(0.66));
    spec.tail_mode = TailMode::cvar;
    CHECK(cost(cells, spec) == doctest::Approx(1.65));
    CHECK(cost(flat, spec) == doctest::Approx(0.99));  // nothing above alpha: tail is the max
}

TEST_CASE("unreachable grids cost infinity") {
    RiskGrid g = make_grid(testing::box_room(3, 4));
    CHECK(std::isfinite(cost(g, CostSpec{})));
    g.unreachable = true;
    CHECK(cost(g, CostSpec{}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("cost ignores masked cells") {
    const Polygon main({{0, 0}, {4, 0}, {6, 2}, {6, 6}, {0, 6}});
    RoomSpec::Options opts;
    opts.typology = Typology::outboard;
    RiskGrid g = make_grid(RoomSpec(main, Polygon::rectangle(-1, 0, 0, 6), opts));
    for (std::size_t i = 0; i < g.cells.size(); ++i) g.cells[i] = g.mask[i] ? 1.0 : 50.0;
    CHECK(cost(g, CostSpec{}) == doctest::Approx(0.66));
}

TEST_CASE("cost matches a brute-force computation") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> len(1, 100);
    std::uniform_real_distribution<double> val(0.4, 2.5), w(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(len(rng)));
        for (double& x : v) x = trial % 5 == 0 ? std::round(val(rng) * 4) / 4 : val(rng);  // some ties
        CostSpec spec;
        spec.w_median = w(rng);
        spec.w_max = w(rng);
        spec.w_tail = w(rng);
        spec.tail_mode = trial % 2 ? TailMode::cvar : TailMode::eq1_verbatim;
        if (trial % 3 == 0) spec.alpha = AlphaRule::fixed_value(val(rng));
        CHECK(cost(v, spec) == doctest::Approx(oracle_cost(v, spec)).epsilon(1e-12));
    }
}

TEST_CASE("single-term weighting orders by that statistic") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> val(0.5, 2.0);
    CostSpec med_only;
    med_only.w_max = med_only.w_tail = 0.0;
    CostSpec max_only;
    max_only.w_median = max_only.w_tail = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(21), b(21);
        for (double& x : a) x = val(rng);
        for (double& x : b) x = val(rng);
        const RiskStats sa = risk_stats(a), sb = risk_stats(b);
        CHECK((cost(a, med_only) < cost(b, med_only)) == (sa.median < sb.median));
        CHECK((cost(a, max_only) < cost(b, max_only)) == (sa.max < sb.max));
    }
}
