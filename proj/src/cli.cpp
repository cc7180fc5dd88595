#include "ward/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "ward/analysis.hpp"
#include "ward/annealer.hpp"
#include "ward/constraints.hpp"
#include "ward/cost.hpp"
#include "ward/render.hpp"
#include "ward/risk.hpp"
#include "ward/sampler.hpp"

namespace ward::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string heatmap_bytes(const RiskGrid& grid, const std::string& format) {
    if (format == "svg") return render_heatmap_svg(grid);
    if (format == "ppm") return render_heatmap_ppm(grid);
    return grid_csv(grid);
}

std::uint64_t clock_seed() {
    return static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
}

struct Common {
    std::string format = "svg";
    Overrides overrides;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_overrides(CLI::App* cmd, Common& c) {
    cmd->add_option("--cycles", c.overrides.cycles, "number of cooling cycles");
    cmd->add_option("--trials", c.overrides.trials, "trials per cycle");
    cmd->add_option("--t0", c.overrides.t0, "initial temperature");
    cmd->add_option("--k", c.overrides.k, "cooling factor in (0, 1)");
    cmd->add_option("--resolution", c.overrides.resolution, "risk grid cell size in metres");
    cmd->add_option("--tail-mode", c.overrides.tail_mode, "cost tail term")->check(CLI::IsMember({"eq1_verbatim", "cvar"}));
}

void print_stats(std::ostream& out, const RiskGrid& grid, const CostSpec& spec) {
    const RiskStats st = risk_stats(grid);
    out << "cost   " << (grid.unreachable ? std::string("inf") : fmt("%.6f", cost(grid, spec))) << '\n';
    out << "median " << fmt("%.6f", st.median) << '\n';
    out << "max    " << fmt("%.6f", st.max) << '\n';
    out << "mean   " << fmt("%.6f", st.mean) << '\n';
    out << "std    " << fmt("%.6f", st.std) << '\n';
    out << "alpha  " << fmt("%.6f", alpha_cutoff(st, spec)) << '\n';
    out << "cells  " << st.count << '\n';
    if (grid.unreachable) out << "note   at least one scenario has no walkable path\n";
}

struct RunOutput {
    OptimizeResult result;
    std::exception_ptr error;
};

int cmd_optimize(const std::string& problem_path, const std::string& out_dir, std::size_t runs, Common& c,
                 std::ostream& out) {
    Problem problem = load_problem(problem_path);
    apply_overrides(problem, c.overrides);
    if (runs == 0) throw UsageError("--runs must be at least 1");
    const ConstraintSet cs = default_constraints(problem);
    if (!c.seed_given) {
        c.seed = clock_seed();
        out << "seed " << c.seed << " (from clock)\n";
    }

    std::vector<RunOutput> results(runs);
    const std::size_t workers = worker_count(runs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < runs; i = next++) {
            try {
                SAParams params = problem.annealing;
                params.seed = c.seed + i;
                results[i].result = optimize(problem, cs, problem.cost, problem.perturbation, params, {}, problem.sampler);
            } catch (...) {
                results[i].error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (const RunOutput& r : results)
        if (r.error) std::rethrow_exception(r.error);

    const fs::path root(out_dir);
    fs::create_directories(root);
    std::vector<std::string> artifacts;
    auto emit = [&](const fs::path& rel, const std::string& content) {
        write_text(root / rel, content);
        artifacts.push_back(rel.generic_string());
    };

    std::vector<RunHistory> histories;
    std::string summary = "run,seed,initial_cost,best_cost,reduction\n";
    std::string initial_costs, final_costs;
    std::size_t best_run = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        const OptimizeResult& r = results[i].result;
        char dir[32];
        std::snprintf(dir, sizeof dir, "run_%03zu", i);
        fs::create_directories(root / dir);
        emit(fs::path(dir) / "initial.layout", serialize_layout(r.initial, problem));
        emit(fs::path(dir) / "best.layout", serialize_layout(r.best, problem));
        emit(fs::path(dir) / "history.csv", history_csv(r.history));
        histories.push_back(r.history);
        summary += std::to_string(i) + ',' + std::to_string(c.seed + i) + ',' + fmt("%.17g", r.initial_cost) + ',' +
                   fmt("%.17g", r.best_cost) + ',' + fmt("%.17g", 1.0 - r.best_cost / r.initial_cost) + '\n';
        initial_costs += fmt("%.17g", r.initial_cost) + '\n';
        final_costs += fmt("%.17g", r.best_cost) + '\n';
        if (r.best_cost < results[best_run].result.best_cost) best_run = i;
    }
    emit("summary.csv", summary);
    emit("curves.csv", aggregated_csv(aggregate_histories(histories)));
    emit("initial_costs.txt", initial_costs);
    emit("final_costs.txt", final_costs);

    const OptimizeResult& best = results[best_run].result;
    const std::uint64_t heat_seed = c.seed + best_run;
    emit("best.layout", serialize_layout(best.best, problem));
    emit("best_schematic.svg", render_schematic(problem, best.best));
    emit("best_heatmap." + c.format, heatmap_bytes(evaluate_risk(problem, best.best, heat_seed), c.format));

    ordered_json manifest;
    manifest["command"] = "optimize";
    manifest["problem_file"] = problem_path;
    manifest["seed"] = c.seed;
    manifest["runs"] = runs;
    manifest["run_seeds"] = {c.seed, c.seed + runs - 1};
    manifest["best_run"] = best_run;
    manifest["heatmap_seed"] = heat_seed;
    manifest["heatmap_format"] = c.format;
    manifest["config"] = ordered_json::parse(serialize_problem(problem));
    artifacts.push_back("manifest.json");
    manifest["artifacts"] = artifacts;
    write_text(root / "manifest.json", manifest.dump(2) + "\n");

    double mean_initial = 0.0, mean_best = 0.0;
    for (const RunOutput& r : results) {
        mean_initial += r.result.initial_cost / static_cast<double>(runs);
        mean_best += r.result.best_cost / static_cast<double>(runs);
    }
    out << "runs " << runs << ", seeds " << c.seed << ".." << c.seed + runs - 1 << '\n';
    out << "mean initial cost " << fmt("%.6f", mean_initial) << '\n';
    out << "mean best cost    " << fmt("%.6f", mean_best) << '\n';
    out << "best run " << best_run << " cost " << fmt("%.6f", best.best_cost) << '\n';
    out << "wrote " << artifacts.size() << " files to " << root.string() << '\n';
    return exit_ok;
}

int cmd_evaluate(const std::string& problem_path, const std::string& layout_path, const std::string& heatmap_path,
                 Common& c, std::ostream& out) {
    Problem problem = load_problem(problem_path);
    apply_overrides(problem, c.overrides);
    const Layout layout = load_layout(layout_path, problem);
    const std::vector<Violation> violations = validate(layout, default_constraints(problem), problem);
    if (!violations.empty()) {
        out << "infeasible layout: " << violations.size() << " violation(s)\n";
        for (const Violation& v : violations) {
            out << "  " << to_string(v.kind);
            for (std::size_t i = 0; i < v.object_ids.size(); ++i) out << (i ? ", " : " [") << v.object_ids[i];
            out << (v.object_ids.empty() ? "" : "]") << ": " << v.message << '\n';
        }
        return exit_infeasible;
    }
    const RiskGrid grid = evaluate_risk(problem, layout, c.seed);
    out << "seed   " << c.seed << '\n';
    print_stats(out, grid, problem.cost);
    if (!heatmap_path.empty()) write_text(heatmap_path, heatmap_bytes(grid, c.format));
    return exit_ok;
}

int cmd_render(const std::string& problem_path, const std::string& layout_path, const std::string& out_dir, Common& c,
               std::ostream& out) {
    Problem problem = load_problem(problem_path);
    apply_overrides(problem, c.overrides);
    const fs::path root(out_dir);
    fs::create_directories(root);
    if (layout_path.empty()) {
        write_text(root / "schematic.svg", render_schematic(problem));
        out << "wrote " << (root / "schematic.svg").string() << '\n';
        return exit_ok;
    }
    const Layout layout = load_layout(layout_path, problem);
    write_text(root / "schematic.svg", render_schematic(problem, layout));
    const fs::path heat = root / ("heatmap." + c.format);
    write_text(heat, heatmap_bytes(evaluate_risk(problem, layout, c.seed), c.format));
    out << "wrote " << (root / "schematic.svg").string() << " and " << heat.string() << '\n';
    return exit_ok;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, bool csv, std::ostream& out) {
    std::vector<double> a, b;
    try {
        a = parse_samples(read_text(a_path));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(a_path, e.what());
    }
    try {
        b = parse_samples(read_text(b_path));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(b_path, e.what());
    }
    if (a.size() < 2) throw ParseError(a_path, "need at least 2 samples");
    if (b.size() < 2) throw ParseError(b_path, "need at least 2 samples");
    const KsResult ks = ks_two_sample(a, b);
    const bool reject = ks.p_value < 0.05;
    if (csv) {
        out << "n_a,n_b,statistic,p_value,reject_at_5pct\n"
            << a.size() << ',' << b.size() << ',' << fmt("%.17g", ks.statistic) << ',' << fmt("%.17g", ks.p_value) << ','
            << (reject ? 1 : 0) << '\n';
    } else {
        out << "n_a " << a.size() << ", n_b " << b.size() << '\n';
        out << "D   " << fmt("%.6f", ks.statistic) << '\n';
        out << "p   " << fmt("%.6g", ks.p_value) << '\n';
        out << (reject ? "reject" : "accept") << " the null hypothesis at the 5% level\n";
    }
    return exit_ok;
}

}  // namespace

void apply_overrides(Problem& problem, const Overrides& o) {
    if (o.cycles) problem.annealing.num_cycles = *o.cycles;
    if (o.trials) problem.annealing.num_trials = *o.trials;
    if (o.t0) problem.annealing.t0 = *o.t0;
    if (o.k) problem.annealing.k = *o.k;
    if (o.tail_mode) problem.cost.tail_mode = *o.tail_mode == "cvar" ? TailMode::cvar : TailMode::eq1_verbatim;
    if (o.resolution) {
        if (!(*o.resolution > 0.0)) throw UsageError("--resolution must be positive");
        const RoomSpec& r = problem.room;
        RoomSpec::Options opts{r.typology(), r.flooring_factor(), r.door_operation(), *o.resolution,
                               r.hallway_wall_ids()};
        problem.room = RoomSpec(r.main_room(), r.bathroom(), opts);
    }
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    n = std::min(n, std::max<std::size_t>(jobs, 1));
    if (const char* env = std::getenv("WARD_LAYOUT_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
    }
    return n;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fall-risk-aware hospital room layout optimizer"};
    app.name("ward_layout");
    app.require_subcommand(1);

    Common c;
    std::string problem_path, layout_path, out_dir, heatmap_path, a_path, b_path;
    std::size_t runs = 1;
    bool csv = false;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", c.seed, "base random seed");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", c.format, "heatmap format")->check(CLI::IsMember({"svg", "ppm", "csv"}));
    };

    CLI::App* opt = app.add_subcommand("optimize", "run simulated annealing from random feasible layouts");
    opt->add_option("problem", problem_path, "problem file")->required();
    opt->add_option("--runs", runs, "number of independent runs");
    opt->add_option("--out", out_dir, "output directory")->required();
    add_seed(opt);
    add_format(opt);
    add_overrides(opt, c);

    CLI::App* ev = app.add_subcommand("evaluate", "score a layout");
    ev->add_option("problem", problem_path, "problem file")->required();
    ev->add_option("layout", layout_path, "layout file")->required();
    ev->add_option("--heatmap", heatmap_path, "write the risk heatmap here");
    add_seed(ev);
    add_format(ev);
    add_overrides(ev, c);

    CLI::App* rd = app.add_subcommand("render", "draw a schematic, and a heatmap when a layout is given");
    rd->add_option("problem", problem_path, "problem file")->required();
    rd->add_option("layout", layout_path, "layout file");
    rd->add_option("--out", out_dir, "output directory")->required();
    add_seed(rd);
    add_format(rd);
    add_overrides(rd, c);

    CLI::App* cmp = app.add_subcommand("compare", "two-sample Kolmogorov-Smirnov test on cost samples");
    cmp->add_option("a", a_path, "first sample file")->required();
    cmp->add_option("b", b_path, "second sample file")->required();
    cmp->add_flag("--csv", csv, "print a CSV row instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (opt->parsed()) {
            c.seed_given = opt->count("--seed") > 0;
            return cmd_optimize(problem_path, out_dir, runs, c, out);
        }
        if (ev->parsed()) return cmd_evaluate(problem_path, layout_path, heatmap_path, c, out);
        if (rd->parsed()) return cmd_render(problem_path, layout_path, out_dir, c, out);
        return cmd_compare(a_path, b_path, csv, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_parse;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}

}  // namespace ward::cli
