#include "taxi/bridges.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "taxi/walk_dfs.hpp"

namespace taxi {

namespace {

// Bridge-pruned traversal: first step E, all later vertices at x >= 1.
// A node is a bridge iff it was entered by an E step onto a (possibly tied)
// new maximum x.
struct BridgeTally {
    std::vector<std::uint64_t> counts;
    std::vector<int> maxx;  // maxx[d] = max x over path[0..d]
    bool overflow = false;

    explicit BridgeTally(unsigned max_depth) : counts(max_depth + 1, 0), maxx(max_depth + 1, 0) {}

    bool admit(const WalkDfsState&, Vertex child, unsigned, bool) const { return child.x >= 1; }
    void enter(const WalkDfsState& st, unsigned depth) {
        const int x = st.path[depth].x;
        maxx[depth] = std::max(maxx[depth - 1], x);
        if (st.dirs[depth] == Direction::E && x == maxx[depth])
            if (++counts[depth] == 0) overflow = true;
    }
    void leave(const WalkDfsState&, unsigned) {}
};

struct BridgeBigTally {
    std::vector<mpz_class> counts;
    std::vector<int> maxx;

    explicit BridgeBigTally(unsigned max_depth)
        : counts(max_depth + 1, mpz_class(0)), maxx(max_depth + 1, 0) {}

    bool admit(const WalkDfsState&, Vertex child, unsigned, bool) const { return child.x >= 1; }
    void enter(const WalkDfsState& st, unsigned depth) {
        const int x = st.path[depth].x;
        maxx[depth] = std::max(maxx[depth - 1], x);
        if (st.dirs[depth] == Direction::E && x == maxx[depth]) counts[depth] += 1;
    }
    void leave(const WalkDfsState&, unsigned) {}
};

struct BridgePrefixCollector {
    unsigned depth;
    std::vector<std::vector<Direction>>* out;
    std::vector<int> maxx;

    BridgePrefixCollector(unsigned depth_, std::vector<std::vector<Direction>>* out_)
        : depth(depth_), out(out_), maxx(depth_ + 1, 0) {}

    bool admit(const WalkDfsState&, Vertex child, unsigned, bool) const { return child.x >= 1; }
    void enter(const WalkDfsState& st, unsigned d) {
        maxx[d] = std::max(maxx[d - 1], st.path[d].x);
        if (d == depth) out->emplace_back(st.dirs.begin() + 1, st.dirs.begin() + 1 + d);
    }
    void leave(const WalkDfsState&, unsigned) {}
};

constexpr unsigned kPrefixDepth = 12;

std::vector<mpz_class> bridge_table_impl(unsigned max_n, unsigned jobs) {
    std::vector<mpz_class> totals(max_n + 1, mpz_class(0));
    totals[0] = 1;  // by convention
    if (max_n == 0) return totals;

    if (jobs <= 1 || max_n <= kPrefixDepth + 2) {
        BridgeTally tally(max_n);
        walk_dfs(tally, max_n, {Direction::E});
        if (!tally.overflow) {
            for (unsigned d = 1; d <= max_n; ++d) totals[d] += tally.counts[d];
        } else {
            BridgeBigTally big(max_n);
            walk_dfs(big, max_n, {Direction::E});
            for (unsigned d = 1; d <= max_n; ++d) totals[d] += big.counts[d];
        }
        return totals;
    }

    const unsigned split = kPrefixDepth;
    std::vector<std::vector<Direction>> prefixes;
    {
        BridgePrefixCollector coll(split, &prefixes);
        walk_dfs(coll, split, {Direction::E});
    }
    {
        BridgeTally tally(split);
        walk_dfs(tally, split, {Direction::E});
        for (unsigned d = 1; d <= split && d <= max_n; ++d) totals[d] += tally.counts[d];
    }
    std::mutex merge_mutex;
    parallel_for_index(prefixes.size(), jobs, [&](std::size_t i, unsigned) {
        WalkDfsState st(max_n);
        BridgeTally tally(max_n);
        walk_dfs_subtree(st, tally, prefixes[i], max_n);
        std::vector<mpz_class> local(max_n + 1, mpz_class(0));
        if (!tally.overflow) {
            for (unsigned d = split + 1; d <= max_n; ++d) local[d] = tally.counts[d];
        } else {
            WalkDfsState st2(max_n);
            BridgeBigTally big(max_n);
            walk_dfs_subtree(st2, big, prefixes[i], max_n);
            for (unsigned d = split + 1; d <= max_n; ++d) local[d] = big.counts[d];
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (unsigned d = split + 1; d <= max_n; ++d) totals[d] += local[d];
    });
    return totals;
}

}  // namespace

bool is_bridge(const TaxiWalk& w) {
    if (w.length() < 1) return false;
    if (!(w.vertices[1] == Vertex{1, 0})) return false;
    int maxx = 0;
    for (std::size_t i = 1; i < w.vertices.size(); ++i) {
        if (w.vertices[i].x < 1) return false;
        maxx = std::max(maxx, w.vertices[i].x);
    }
    const Vertex last = w.vertices.back(), prev = w.vertices[w.vertices.size() - 2];
    if (last.y != prev.y) return false;  // final step must be x-parallel
    return last.x == maxx;
}

mpz_class count_bridges(unsigned n, unsigned jobs) { return bridge_table_impl(n, jobs)[n]; }

CountTable count_bridges_table(unsigned max_n, unsigned jobs) {
    auto totals = bridge_table_impl(max_n, jobs);
    CountTable t("b");
    for (unsigned n = 0; n <= max_n; ++n) t.set(n, std::move(totals[n]));
    return t;
}

CountTable irreducible_from_bridges(const CountTable& b) {
    if (!b.has(0) || b.at(0) != 1)
        throw std::invalid_argument("irreducible_from_bridges: b_0 must be 1");
    const unsigned N = b.max_n();
    IntSeries B(std::vector<mpz_class>(b.values().begin(), b.values().end()));
    const IntSeries A = B.inverse().sub_from_one();  // A = 1 - 1/B
    CountTable a("a");
    a.set(0, 0);
    for (unsigned n = 1; n <= N; ++n) a.set(n, A[n]);
    return a;
}

mpz_class enumerate_irreducible_bridges(unsigned n) {
    if (n == 0) return 0;
    struct Collector {
        unsigned n;
        mpz_class irreducible = 0;
        std::vector<int> maxx;

        explicit Collector(unsigned n_) : n(n_), maxx(n_ + 1, 0) {}

        bool admit(const WalkDfsState&, Vertex child, unsigned, bool) const { return child.x >= 1; }
        void enter(const WalkDfsState& st, unsigned depth) {
            maxx[depth] = std::max(maxx[depth - 1], st.path[depth].x);
            if (depth != n) return;
            if (!(st.dirs[n] == Direction::E && st.path[n].x == maxx[n])) return;
            // cutvertex scan: prefix-bridge end + E continuation + suffix staying right
            std::vector<int> sufmin(n + 2, 1 << 30);
            for (unsigned i = n; i >= 1; --i) sufmin[i] = std::min(sufmin[i + 1], st.path[i].x);
            for (unsigned i = 1; i < n; ++i) {
                if (st.dirs[i] != Direction::E || st.path[i].x != maxx[i]) continue;
                if (st.dirs[i + 1] != Direction::E) continue;
                if (sufmin[i + 1] >= st.path[i].x + 1) return;  // cutvertex: reducible
            }
            irreducible += 1;
        }
        void leave(const WalkDfsState&, unsigned) {}
    } coll(n);
    walk_dfs(coll, n, {Direction::E});
    return coll.irreducible;
}

BoundReport bridge_lower_bound(const CountTable& b, unsigned n, unsigned decimals) {
    if (n == 0) throw std::invalid_argument("bridge bound needs n >= 1");
    return BoundReport::from_root("bridge", false, b.at(n), 1, n, "n=" + std::to_string(n),
                                  decimals);
}

IrreducibleBound irreducible_lower_bound(const CountTable& a, double tol, unsigned decimals) {
    const unsigned N = a.max_n();
    bool any_positive = false;
    for (unsigned n = 1; n <= N; ++n) {
        if (a.at(n) < 0) throw std::invalid_argument("irreducible_lower_bound: a_n must be >= 0");
        if (a.at(n) > 0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("irreducible_lower_bound: all a_n are zero");
    if (!(tol > 0)) throw std::invalid_argument("irreducible_lower_bound: tol must be positive");

    const auto poly = [&](const mpq_class& x) {
        mpq_class acc = 0;  // Horner, exact
        for (unsigned n = N; n >= 1; --n) {
            acc *= x;
            acc += mpq_class(a.at(n));
        }
        acc *= x;
        return acc;
    };

    mpq_class lo = 0, hi = 1;
    if (poly(hi) <= 1)
        throw std::domain_error("irreducible_lower_bound: sum a_n x^n never exceeds 1 on (0,1]");
    const mpq_class qtol(tol);
    while (hi - lo > qtol) {
        mpq_class mid = (lo + hi) / 2;
        if (poly(mid) > 1) hi = mid;
        else lo = mid;
    }
    // hi is the certified point: poly(hi) > 1 held at every step that set it,
    // including the initial hi = 1.
    IrreducibleBound out{
        BoundReport::from_root("irreducible", false, mpz_class(hi.get_den()),
                               mpz_class(hi.get_num()), 1, "N=" + std::to_string(N), decimals),
        hi};
    return out;
}

}  // namespace taxi
