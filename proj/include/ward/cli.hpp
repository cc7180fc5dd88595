#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "ward/room_model.hpp"

namespace ward::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_parse = 2,
    exit_infeasible = 3,
    exit_runtime = 4,
};

/// Command-line overrides applied on top of the problem file.
struct Overrides {
    std::optional<std::size_t> cycles;
    std::optional<std::size_t> trials;
    std::optional<double> t0;
    std::optional<double> k;
    std::optional<double> resolution;
    std::optional<std::string> tail_mode;  // eq1_verbatim | cvar
};

void apply_overrides(Problem& problem, const Overrides& o);

/// min(requested, hardware threads), further capped by WARD_LAYOUT_THREADS; at least 1.
std::size_t worker_count(std::size_t jobs);

/// Entry point shared by the executable and the tests. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ward::cli
