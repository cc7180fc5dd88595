#include "ward/annealer.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ward/cost.hpp"
#include "ward/risk.hpp"
#include "ward/sampler.hpp"

namespace ward {

double metropolis(double delta_c, double kappa, double temperature) {
    if (!(temperature > 0.0) || !(kappa > 0.0)) throw std::invalid_argument("temperature and kappa must be positive");
    if (std::isnan(delta_c)) return 0.0;
    if (delta_c <= 0.0) return 1.0;
    const double p = std::exp(-delta_c / (kappa * temperature));
    return p > 1.0 ? 1.0 : p;
}

double schedule_step(double t_prev, double k) { return k * t_prev; }

std::vector<double> RunHistory::current_series() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.c_current);
    return out;
}

std::vector<double> RunHistory::best_series() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.c_best);
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string history_csv(const RunHistory& h) {
    std::ostringstream os;
    os << "# initial_cost," << fmt17(h.initial_cost) << "\n";
    os << "iteration,cycle,trial,temperature,c_next,c_current,c_best,probability,draw,accepted,neighbor_failed\n";
    for (std::size_t i = 0; i < h.records.size(); ++i) {
        const IterationRecord& r = h.records[i];
        os << i << ',' << r.cycle << ',' << r.trial << ',' << fmt17(r.temperature) << ',' << fmt17(r.c_next) << ','
           << fmt17(r.c_current) << ',' << fmt17(r.c_best) << ',' << fmt17(r.probability) << ',' << fmt17(r.draw) << ','
           << (r.accepted ? 1 : 0) << ',' << (r.neighbor_failed ? 1 : 0) << '\n';
    }
    return os.str();
}

RunHistory parse_history_csv(const std::string& text) {
    RunHistory h;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("# initial_cost,", 0) == 0) {
            h.initial_cost = std::stod(line.substr(15));
            continue;
        }
        if (line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 11) throw std::runtime_error("history line " + std::to_string(line_no) + ": expected 11 fields");
        IterationRecord r;
        r.cycle = std::stoul(f[1]);
        r.trial = std::stoul(f[2]);
        r.temperature = std::stod(f[3]);
        r.c_next = std::stod(f[4]);
        r.c_current = std::stod(f[5]);
        r.c_best = std::stod(f[6]);
        r.probability = std::stod(f[7]);
        r.draw = std::stod(f[8]);
        r.accepted = f[9] == "1";
        r.neighbor_failed = f[10] == "1";
        h.records.push_back(r);
    }
    return h;
}

Evaluator risk_cost_evaluator(const Problem& problem, const CostSpec& spec) {
    return [&problem, spec](const Layout& layout, std::uint64_t seed) {
        return cost(evaluate_risk(problem, layout, seed), spec);
    };
}

namespace {

enum Stream : std::uint64_t { kInitialLayout = 0, kInitialEval = 1, kAccept = 2, kNeighbor = 3, kTrialEval = 4 };

std::uint64_t stream_seed(std::uint64_t run_seed, Stream s, std::uint64_t index = 0) {
    return derive_seed(run_seed, (static_cast<std::uint64_t>(s) << 40) | index);
}

}  // namespace

std::uint64_t initial_eval_seed(std::uint64_t run_seed) { return stream_seed(run_seed, kInitialEval); }
std::uint64_t trial_eval_seed(std::uint64_t run_seed, std::size_t iteration) {
    return stream_seed(run_seed, kTrialEval, iteration);
}

OptimizeResult optimize(const Problem& problem, const ConstraintSet& cs, const CostSpec& cost_spec,
                        const PerturbationSpec& sigma, const SAParams& params, const Evaluator& evaluator,
                        const SamplerBudget& budget) {
    if (!(params.t0 > 0.0) || !(params.k > 0.0 && params.k < 1.0) || !(params.kappa > 0.0))
        throw std::invalid_argument("annealing parameters out of range");
    const Evaluator score = evaluator ? evaluator : risk_cost_evaluator(problem, cost_spec);
    Rng init_rng(stream_seed(params.seed, kInitialLayout));
    OptimizeResult out;
    out.initial = sample_initial(problem, cs, init_rng, budget);
    out.initial_cost = score(out.initial, initial_eval_seed(params.seed));

    Rng accept_rng(stream_seed(params.seed, kAccept));
    auto neighbor = [&](const Layout& current, std::size_t iteration) -> std::optional<Layout> {
        Rng rng(stream_seed(params.seed, kNeighbor, iteration));
        try {
            return nearby_layout(problem, current, sigma, cs, rng, budget);
        } catch (const InfeasibleError&) {
            return std::nullopt;
        }
    };
    auto evaluate = [&](const Layout& layout, std::size_t iteration) {
        return score(layout, trial_eval_seed(params.seed, iteration));
    };
    auto result = anneal(out.initial, out.initial_cost, neighbor, evaluate, params, accept_rng);
    out.best = std::move(result.best);
    out.best_cost = result.best_cost;
    out.history = std::move(result.history);
    return out;
}

}  // namespace ward
