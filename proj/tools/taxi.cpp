// Command-line front end: exact taxi-walk counts, rigorous connective-constant
// bounds, polygon/mistake-set utilities, and the contour checker.
//
// Exit codes: 0 success, 1 usage error, 2 computation failure,
//             3 invariant/consistency violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <thread>

#include "taxi/bridges.hpp"
#include "taxi/contour.hpp"
#include "taxi/count_table.hpp"
#include "taxi/polygons.hpp"
#include "taxi/summary.hpp"
#include "taxi/transfer_matrix.hpp"
#include "taxi/walks.hpp"
#include "taxi/word_count.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitViolation = 3;

struct CommonOpts {
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    unsigned precision = 5;
    std::string format = "text";
    std::string cache_dir;
    bool long_run = false;
};

std::filesystem::path effective_cache_dir(const CommonOpts& c) {
    if (!c.cache_dir.empty()) return c.cache_dir;
    if (const char* env = std::getenv("TAXI_CACHE_DIR")) return env;
    return {};
}

json bound_to_json(const taxi::BoundReport& b) {
    return json{{"method", b.method},
                {"direction", b.direction()},
                {"value", b.value()},
                {"lambda", b.lambda_value()},
                {"rounding", b.rounding()},
                {"parameters", b.parameters}};
}

void print_bound(const taxi::BoundReport& b) {
    std::cout << (b.is_upper ? "mu <= " : "mu >= ") << b.value() << "   (mu^4-1 "
              << (b.is_upper ? "<= " : ">= ") << b.lambda_value() << ")  [" << b.method;
    if (!b.parameters.empty()) std::cout << "; " << b.parameters;
    std::cout << "; rounded " << b.rounding() << "]\n";
}

int long_run_banner(const std::string& what, const std::string& estimate, bool confirmed) {
    if (confirmed) {
        std::cerr << "long run: " << what << " (estimated " << estimate << ")\n";
        return kExitOk;
    }
    std::cerr << "refusing to start " << what << " without --long-run (estimated " << estimate
              << ")\n";
    return kExitUsage;
}

int cmd_walks_table(const CommonOpts& common, unsigned max_n, const std::string& csv_out) {
    if (max_n > 40 && !common.long_run) {
        return long_run_banner("walk enumeration to n=" + std::to_string(max_n),
                               "hours of CPU time beyond n~45", false);
    }
    const taxi::CountTable table = taxi::count_taxi_walks_table(max_n, common.jobs);
    const taxi::CountTable& reference = taxi::reference_walk_counts();
    bool mismatch = false;
    for (unsigned n = 1; n <= max_n; ++n) {
        std::cout << n << "," << table.at(n).get_str() << "\n";
        if (reference.has(n) && reference.at(n) != table.at(n)) {
            std::cerr << "MISMATCH against reference at n=" << n << ": computed "
                      << table.at(n).get_str() << ", expected " << reference.at(n).get_str()
                      << "\n";
            mismatch = true;
        }
    }
    const auto cache = effective_cache_dir(common);
    if (!cache.empty()) table.save_csv(cache / "c_table.csv");
    if (!csv_out.empty()) table.save_csv(csv_out);
    return mismatch ? kExitViolation : kExitOk;
}

int cmd_bridges_table(const CommonOpts& common, unsigned max_n, const std::string& csv_out,
                      bool irreducible) {
    if (max_n > 45 && !common.long_run)
        return long_run_banner("bridge enumeration to n=" + std::to_string(max_n),
                               "hours of CPU time", false);
    const taxi::CountTable b = taxi::count_bridges_table(max_n, common.jobs);
    const taxi::CountTable out = irreducible ? taxi::irreducible_from_bridges(b) : b;
    for (unsigned n = 0; n <= max_n; ++n)
        std::cout << n << "," << out.at(n).get_str() << "\n";
    const auto cache = effective_cache_dir(common);
    if (!cache.empty()) out.save_csv(cache / (irreducible ? "a_table.csv" : "b_table.csv"));
    if (!csv_out.empty()) out.save_csv(csv_out);
    if (max_n >= 60 && !irreducible && b.at(60) != taxi::reference_bridge_count_60()) {
        std::cerr << "MISMATCH: b_60 = " << b.at(60).get_str() << ", reference "
                  << taxi::reference_bridge_count_60().get_str() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_polygons(const CommonOpts& common, unsigned max_len, const std::string& out_path) {
    if (max_len > 36 && !common.long_run)
        return long_run_banner("polygon enumeration to length " + std::to_string(max_len),
                               "hours of CPU time at 44-48", false);
    const auto words = taxi::enumerate_taxi_polygon_words(max_len, common.jobs);
    if (!out_path.empty()) {
        const auto target = taxi::save_polygon_words(words, max_len, out_path);
        std::cout << words.size() << " polygons (length <= " << max_len << ") -> " << target
                  << "\n";
    } else {
        for (const auto& w : words) std::cout << w << "\n";
    }
    if (max_len == 44 || max_len == 48) {
        const auto expect = taxi::reference_polygon_count(max_len);
        if (words.size() != expect) {
            std::cerr << "MISMATCH: " << words.size() << " polygons, reference " << expect << "\n";
            return kExitViolation;
        }
    }
    return kExitOk;
}

int cmd_bounds_summary(const CommonOpts& common, std::vector<std::string> methods, bool extended) {
    if (extended && !common.long_run)
        return long_run_banner("extended bound presets (c_60, b_60, A(20,60), polygons<=44, l_802)",
                               "many CPU-hours and ~4 GiB of memory", false);
    taxi::SummaryOptions opts;
    opts.methods.insert(methods.begin(), methods.end());
    opts.extended = extended;
    opts.long_run_confirmed = common.long_run;
    opts.jobs = common.jobs;
    opts.decimals = common.precision;
    opts.cache_dir = effective_cache_dir(common);
    const taxi::SummaryResult result = taxi::run_bounds_summary(opts);

    if (common.format == "json") {
        json j{{"schema", 1}, {"bounds", json::array()}, {"consistent", result.consistent}};
        for (const auto& b : result.bounds) j["bounds"].push_back(bound_to_json(b));
        if (result.best_upper) {
            j["window"] = {{"mu_upper", result.best_upper->value()},
                           {"lambda_upper", result.best_upper->lambda_value()}};
        }
        if (result.best_lower) {
            j["window"]["mu_lower"] = result.best_lower->value();
            j["window"]["lambda_lower"] = result.best_lower->lambda_value();
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& b : result.bounds) print_bound(b);
        if (result.best_lower && result.best_upper) {
            std::cout << "window: " << result.best_lower->value() << " < mu < "
                      << result.best_upper->value() << "; " << result.best_lower->lambda_value()
                      << " < mu^4-1 < " << result.best_upper->lambda_value() << "\n";
        }
    }
    if (!result.consistent) {
        std::cerr << "CONSISTENCY VIOLATION: " << result.inconsistency_note << "\n";
        for (const auto& b : result.bounds) {
            std::cerr << "  " << b.method << " " << b.direction() << " " << b.value() << " ["
                      << b.parameters << "]\n";
        }
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_contour_check(const CommonOpts& common, int n, int m, bool exhaustive,
                      std::uint64_t samples, std::uint64_t seed) {
    taxi::SweepOptions opts;
    opts.n = n;
    opts.m = m;
    opts.exhaustive = exhaustive;
    opts.samples = samples;
    opts.seed = seed;
    opts.jobs = common.jobs;
    if (exhaustive && n > 3 && !common.long_run)
        return long_run_banner("exhaustive contour sweep at n=" + std::to_string(n),
                               "very long beyond n=3 (use --samples)", false);
    const taxi::SweepReport report = taxi::run_contour_sweep(opts);

    json j{{"schema", 1},
           {"n", report.n},
           {"m", report.m},
           {"mode", report.exhaustive ? "exhaustive" : "sampled"},
           {"configurations", report.configs},
           {"seconds", report.seconds},
           {"checks", json::object()},
           {"contour_lengths", json::object()}};
    for (int i = 0; i < taxi::SweepReport::kChecks; ++i) {
        j["checks"][taxi::SweepReport::kCheckNames[i]] = {
            {"failures", report.failures[i]},
            {"status", report.failures[i] == 0 ? "pass" : "fail"}};
    }
    for (const auto& [len, cnt] : report.contour_length_histogram)
        j["contour_lengths"][std::to_string(len)] = cnt;
    if (report.counterexample) {
        json verts = json::array();
        for (const taxi::Vertex& v : *report.counterexample) verts.push_back({v.x, v.y});
        j["counterexample"] = {{"check", report.counterexample_check}, {"occupied", verts}};
    }
    std::cout << j.dump(2) << "\n";
    return report.all_passed() ? kExitOk : kExitViolation;
}

int cmd_tail(double mu, double lambda, int m, bool find_min) {
    json j{{"schema", 1}, {"mu", mu}, {"lambda", lambda}};
    if (find_min) {
        const unsigned minimal = taxi::minimal_m_for_tail(mu, lambda);
        const taxi::TailResult t = taxi::peierls_tail({mu, lambda, minimal});
        j["minimal_m"] = minimal;
        j["tail_at_minimal_m"] = t.tail;
        j["ratio"] = t.ratio;
    } else {
        const taxi::TailResult t = taxi::peierls_tail({mu, lambda, static_cast<unsigned>(m)});
        j["m"] = m;
        j["ratio"] = t.ratio;
        j["first_term"] = t.first_term;
        j["tail"] = t.tail;
        j["below_one_third"] = t.below_one_third;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact enumeration and rigorous bounds for taxi walks on the Manhattan lattice"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--precision", common.precision, "decimal digits for bounds (>= 3)")
        ->check(CLI::Range(3u, 30u));
    app.add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache-dir", common.cache_dir, "cache directory (or TAXI_CACHE_DIR)");
    app.add_flag("--long-run", common.long_run, "allow the expensive presets");

    // walks
    auto* walks = app.add_subcommand("walks", "taxi-walk counting");
    unsigned walks_max_n = 12;
    std::string walks_csv;
    auto* walks_table = walks->add_subcommand("table", "print c_1..c_n");
    walks_table->add_option("--max-n", walks_max_n, "largest length")->required()
        ->check(CLI::PositiveNumber);
    walks_table->add_option("--csv", walks_csv, "write CSV here");
    unsigned walks_count_n = 12;
    auto* walks_count = walks->add_subcommand("count", "print a single c_n");
    walks_count->add_option("--n", walks_count_n)->required();

    // bridges
    auto* bridges = app.add_subcommand("bridges", "bridge counting");
    unsigned bridges_max_n = 20;
    std::string bridges_csv;
    auto* bridges_table = bridges->add_subcommand("table", "print b_0..b_n");
    bridges_table->add_option("--max-n", bridges_max_n)->required();
    bridges_table->add_option("--csv", bridges_csv);
    auto* bridges_irr = bridges->add_subcommand("irreducible", "print a_0..a_n via series inversion");
    unsigned bridges_irr_max_n = 20;
    std::string bridges_irr_csv;
    bridges_irr->add_option("--max-n", bridges_irr_max_n)->required();
    bridges_irr->add_option("--csv", bridges_irr_csv);

    // polygons
    auto* polygons = app.add_subcommand("polygons", "taxi-polygon enumeration");
    unsigned poly_max_len = 16;
    std::string poly_out;
    auto* poly_list = polygons->add_subcommand("list", "list polygon words");
    poly_list->add_option("--max-len", poly_max_len)->required()->check(CLI::Range(4u, 60u));
    poly_list->add_option("--out", poly_out, "write word list to this file/directory");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "connective-constant bounds");
    std::vector<std::string> summary_methods;
    bool summary_extended = false;
    auto* bsummary = bounds->add_subcommand("summary", "run several methods, check consistency");
    bsummary->add_option("--methods", summary_methods, "subadditive,alm,gj,bridge,irreducible")
        ->delimiter(',')
        ->required();
    bsummary->add_flag("--extended", summary_extended, "headline-scale presets (needs --long-run)");
    unsigned sub_n = 60;
    auto* bsub = bounds->add_subcommand("subadditive", "c_n^{1/n} from the cached/reference table");
    bsub->add_option("--n", sub_n);
    unsigned alm_m = 8, alm_n = 28;
    std::string alm_dump;
    auto* balm = bounds->add_subcommand("alm", "transfer-matrix eigenvalue bound");
    balm->add_option("--m", alm_m)->required();
    balm->add_option("--n", alm_n)->required();
    balm->add_option("--dump-matrix", alm_dump, "write i,j,count CSV");
    unsigned gj_polygon_max = 16, gj_n = 150;
    auto* bgj = bounds->add_subcommand("gj", "mistake-avoiding word-count bound");
    bgj->add_option("--polygon-max", gj_polygon_max)->required();
    bgj->add_option("--n", gj_n)->required();
    unsigned bridge_n = 30;
    auto* bbridge = bounds->add_subcommand("bridge", "b_n^{1/n} lower bound");
    bbridge->add_option("--n", bridge_n)->required();
    unsigned irr_n = 30;
    double irr_tol = 1e-12;
    auto* birr = bounds->add_subcommand("irreducible", "irreducible-bridge lower bound");
    birr->add_option("--n", irr_n)->required();
    birr->add_option("--tol", irr_tol);

    // contour
    auto* contour = app.add_subcommand("contour", "hard-core contour laboratory");
    auto* ccheck = contour->add_subcommand("check", "construct and property-check contours");
    int contour_n = 3, contour_m = 1;
    bool contour_exhaustive = false;
    std::uint64_t contour_samples = 1000, contour_seed = 1;
    ccheck->add_option("--n", contour_n)->required()->check(CLI::Range(1, 5));
    ccheck->add_option("--m", contour_m)->required()->check(CLI::Range(1, 4));
    ccheck->add_flag("--exhaustive", contour_exhaustive);
    ccheck->add_option("--samples", contour_samples);
    ccheck->add_option("--seed", contour_seed);

    // tail
    auto* tail = app.add_subcommand("tail", "Peierls tail arithmetic");
    double tail_mu = 1.6, tail_lambda = 6.0;
    int tail_m = 1;
    bool tail_find_min = false;
    tail->add_option("--mu", tail_mu)->required();
    tail->add_option("--lambda", tail_lambda)->required();
    tail->add_option("--m", tail_m);
    tail->add_flag("--find-min-m", tail_find_min);

    // global options may appear after the subcommand
    const std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough(true);
        for (CLI::App* s : a->get_subcommands({})) enable_fallthrough(s);
    };
    for (CLI::App* s : app.get_subcommands({})) enable_fallthrough(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (walks_table->parsed()) return cmd_walks_table(common, walks_max_n, walks_csv);
        if (walks_count->parsed()) {
            std::cout << taxi::count_taxi_walks(walks_count_n, common.jobs).get_str() << "\n";
            return kExitOk;
        }
        if (bridges_table->parsed())
            return cmd_bridges_table(common, bridges_max_n, bridges_csv, false);
        if (bridges_irr->parsed())
            return cmd_bridges_table(common, bridges_irr_max_n, bridges_irr_csv, true);
        if (poly_list->parsed()) return cmd_polygons(common, poly_max_len, poly_out);
        if (bsummary->parsed())
            return cmd_bounds_summary(common, summary_methods, summary_extended);
        if (bsub->parsed()) {
            const auto c = taxi::summary_walk_counts(effective_cache_dir(common));
            const auto sub = taxi::subadditive_upper_bound(c, sub_n, common.precision);
            print_bound(sub.primary);
            if (sub.refined) print_bound(*sub.refined);
            return kExitOk;
        }
        if (balm->parsed()) {
            if (alm_m >= 12 && !common.long_run)
                return long_run_banner("transfer matrix at m=" + std::to_string(alm_m),
                                       "large memory/time (A(20,60) ~ 3.3 GiB)", false);
            const auto M = taxi::build_transfer_matrix(alm_m, alm_n, common.jobs);
            if (!alm_dump.empty()) M.save_csv(alm_dump);
            print_bound(taxi::alm_upper_bound(M, common.precision));
            return kExitOk;
        }
        if (bgj->parsed()) {
            if ((gj_polygon_max > 36 || gj_n > 1000) && !common.long_run)
                return long_run_banner("cluster bound at polygon_max=" +
                                           std::to_string(gj_polygon_max),
                                       "hours at 44-48", false);
            print_bound(taxi::gj_upper_bound(gj_polygon_max, gj_n, common.jobs, common.precision));
            return kExitOk;
        }
        if (bbridge->parsed()) {
            if (bridge_n > 45 && !common.long_run)
                return long_run_banner("bridge enumeration to n=" + std::to_string(bridge_n),
                                       "hours", false);
            const auto b = taxi::count_bridges_table(bridge_n, common.jobs);
            print_bound(taxi::bridge_lower_bound(b, bridge_n, common.precision));
            return kExitOk;
        }
        if (birr->parsed()) {
            if (irr_n > 45 && !common.long_run)
                return long_run_banner("bridge enumeration to n=" + std::to_string(irr_n), "hours",
                                       false);
            const auto b = taxi::count_bridges_table(irr_n, common.jobs);
            const auto a = taxi::irreducible_from_bridges(b);
            const auto r = taxi::irreducible_lower_bound(a, irr_tol, common.precision);
            print_bound(r.report);
            return kExitOk;
        }
        if (ccheck->parsed()) {
            if (contour_m >= contour_n) {
                std::cerr << "need n > m\n";
                return kExitUsage;
            }
            return cmd_contour_check(common, contour_n, contour_m, contour_exhaustive,
                                     contour_samples, contour_seed);
        }
        if (tail->parsed()) return cmd_tail(tail_mu, tail_lambda, tail_m, tail_find_min);
        std::cerr << "no action selected\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitComputation;
    }
}
