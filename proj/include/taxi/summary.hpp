#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taxi/bound_report.hpp"
#include "taxi/count_table.hpp"

namespace taxi {

// Bound methods the summary can run. "desk" presets finish in seconds;
// the extended presets (c_60 enumeration, b_60, A(20,60), polygons <= 48,
// l_802) reproduce the headline digits but run for hours and are gated
// behind an explicit long-run opt-in.
struct SummaryOptions {
    std::set<std::string> methods;  // subset of {subadditive, alm, gj, bridge, irreducible}
    bool extended = false;
    bool long_run_confirmed = false;
    unsigned jobs = 1;
    unsigned decimals = 5;
    std::filesystem::path cache_dir;
};

struct SummaryResult {
    std::vector<BoundReport> bounds;
    // tightest window over everything computed
    std::optional<BoundReport> best_upper;
    std::optional<BoundReport> best_lower;
    bool consistent = true;  // every upper >= every lower
    std::string inconsistency_note;
};

SummaryResult run_bounds_summary(const SummaryOptions& options);

// The walk-count table the summary reads: cache file if present, otherwise
// the built-in reference values.
CountTable summary_walk_counts(const std::filesystem::path& cache_dir);

}  // namespace taxi
