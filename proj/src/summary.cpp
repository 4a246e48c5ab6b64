#include "taxi/summary.hpp"

#include <stdexcept>

#include "taxi/bridges.hpp"
#include "taxi/transfer_matrix.hpp"
#include "taxi/walks.hpp"
#include "taxi/word_count.hpp"

namespace taxi {

CountTable summary_walk_counts(const std::filesystem::path& cache_dir) {
    if (!cache_dir.empty()) {
        const auto path = cache_dir / "c_table.csv";
        if (std::filesystem::exists(path)) return CountTable::load_csv(path, "c");
    }
    return reference_walk_counts();
}

SummaryResult run_bounds_summary(const SummaryOptions& options) {
    static const std::set<std::string> kKnown = {"subadditive", "alm", "gj", "bridge",
                                                 "irreducible"};
    if (options.methods.empty()) throw std::invalid_argument("no bound methods selected");
    for (const auto& m : options.methods)
        if (!kKnown.count(m)) throw std::invalid_argument("unknown bound method: " + m);
    if (options.extended && !options.long_run_confirmed)
        throw std::invalid_argument("extended presets need the explicit long-run opt-in");

    const unsigned jobs = std::max(1u, options.jobs);
    SummaryResult out;

    std::optional<CountTable> bridge_table;
    const auto bridges_upto = [&](unsigned n) -> const CountTable& {
        if (!bridge_table || bridge_table->max_n() < n)
            bridge_table = count_bridges_table(n, jobs);
        return *bridge_table;
    };

    if (options.methods.count("subadditive")) {
        const CountTable c = summary_walk_counts(options.cache_dir);
        const unsigned n = std::min(60u, c.max_n());
        auto sub = subadditive_upper_bound(c, n, options.decimals);
        out.bounds.push_back(sub.primary);
        if (sub.refined) out.bounds.push_back(*sub.refined);
    }
    if (options.methods.count("alm")) {
        const unsigned m = options.extended ? 20 : 8;
        const unsigned n = options.extended ? 60 : 28;
        out.bounds.push_back(alm_upper_bound(m, n, jobs, options.decimals));
    }
    if (options.methods.count("gj")) {
        const unsigned polygon_max = options.extended ? 44 : 16;
        const unsigned n = options.extended ? 802 : 150;
        out.bounds.push_back(gj_upper_bound(polygon_max, n, jobs, options.decimals));
    }
    if (options.methods.count("bridge")) {
        const unsigned n = options.extended ? 60 : 30;
        out.bounds.push_back(bridge_lower_bound(bridges_upto(n), n, options.decimals));
    }
    if (options.methods.count("irreducible")) {
        const unsigned n = options.extended ? 60 : 30;
        const CountTable a = irreducible_from_bridges(bridges_upto(n));
        out.bounds.push_back(irreducible_lower_bound(a, 1e-12, options.decimals).report);
    }

    for (const BoundReport& b : out.bounds) {
        if (b.is_upper) {
            if (!out.best_upper || b.value_scaled < out.best_upper->value_scaled)
                out.best_upper = b;
        } else {
            if (!out.best_lower || b.value_scaled > out.best_lower->value_scaled)
                out.best_lower = b;
        }
    }
    for (const BoundReport& u : out.bounds) {
        if (!u.is_upper) continue;
        for (const BoundReport& l : out.bounds) {
            if (l.is_upper) continue;
            if (u.value_scaled < l.value_scaled) {
                out.consistent = false;
                out.inconsistency_note = "upper bound " + u.method + "=" + u.value() +
                                         " below lower bound " + l.method + "=" + l.value();
            }
        }
    }
    return out;
}

}  // namespace taxi
