#include "taxi/walks.hpp"

#include <mutex>
#include <stdexcept>

#include "taxi/walk_dfs.hpp"

namespace taxi {

namespace {

Direction direction_between(Vertex a, Vertex b) {
    const int dx = b.x - a.x, dy = b.y - a.y;
    if (dx == 1 && dy == 0) return Direction::E;
    if (dx == -1 && dy == 0) return Direction::W;
    if (dx == 0 && dy == 1) return Direction::N;
    if (dx == 0 && dy == -1) return Direction::S;
    throw std::invalid_argument("vertices are not adjacent");
}

// Per-depth tallies in 64-bit with explicit wrap detection; the caller
// escalates an overflowing subtree to exact big-integer counting.
struct TallyPolicy {
    std::vector<std::uint64_t> counts;
    bool overflow = false;

    explicit TallyPolicy(unsigned max_depth) : counts(max_depth + 1, 0) {}
    bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
    void enter(const WalkDfsState&, unsigned depth) {
        if (++counts[depth] == 0) overflow = true;
    }
    void leave(const WalkDfsState&, unsigned) {}
};

struct BigTallyPolicy {
    std::vector<mpz_class> counts;

    explicit BigTallyPolicy(unsigned max_depth) : counts(max_depth + 1, mpz_class(0)) {}
    bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
    void enter(const WalkDfsState&, unsigned depth) { counts[depth] += 1; }
    void leave(const WalkDfsState&, unsigned) {}
};

// Collects the turn sequences (as direction lists) of all nodes at a fixed
// depth; used to partition the tree for parallel traversal.
struct PrefixCollector {
    unsigned depth;
    std::vector<std::vector<Direction>>* out;

    bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
    void enter(const WalkDfsState& st, unsigned d) {
        if (d == depth)
            out->emplace_back(st.dirs.begin() + 1, st.dirs.begin() + 1 + d);
    }
    void leave(const WalkDfsState&, unsigned) {}
};

constexpr unsigned kPrefixDepth = 12;

}  // namespace

std::uint64_t TaxiWalk::encoding_key() const {
    std::uint64_t key = first == Direction::E ? 1u : 0u;
    for (std::size_t i = 0; i < turn_word.size(); ++i) {
        key <<= 1;
        key |= turn_word[i] == 't' ? 1u : 0u;
    }
    return key;
}

TaxiWalk TaxiWalk::from_vertices(std::vector<Vertex> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("walk needs at least one step");
    if (!(vertices.front() == Vertex{0, 0}))
        throw std::invalid_argument("walk must start at the origin");
    TaxiWalk w;
    w.first = direction_between(vertices[0], vertices[1]);
    w.turn_word.reserve(vertices.size() - 2);
    Direction prev = w.first;
    for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
        const Direction d = direction_between(vertices[i], vertices[i + 1]);
        w.turn_word.push_back(is_vertical(d) != is_vertical(prev) ? 't' : 's');
        prev = d;
    }
    w.vertices = std::move(vertices);
    return w;
}

TaxiWalk TaxiWalk::decode(Direction first, std::string_view turn_word) {
    if (first != Direction::N && first != Direction::E)
        throw std::invalid_argument("first step must be N or E");
    TaxiWalk w;
    w.first = first;
    w.turn_word.assign(turn_word);
    w.vertices.reserve(turn_word.size() + 2);
    w.vertices.push_back({0, 0});
    Vertex v = step({0, 0}, first);
    Direction d = first;
    w.vertices.push_back(v);
    for (char c : turn_word) {
        if (c == 't') d = is_vertical(d) ? horizontal_step(v) : vertical_step(v);
        // straight keeps d, which stays legal along the same street/avenue
        v = step(v, d);
        w.vertices.push_back(v);
    }
    return w;
}

bool TaxiWalk::valid() const {
    if (vertices.size() < 2 || !(vertices.front() == Vertex{0, 0})) return false;
    if (first != Direction::N && first != Direction::E) return false;
    if (turn_word.size() + 2 != vertices.size()) return false;
    if (turn_word.find("tt") != std::string::npos) return false;
    if (!is_legal_walk(vertices)) return false;
    std::vector<Vertex> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    // encoding consistency
    try {
        const TaxiWalk round = decode(first, turn_word);
        return round.vertices == vertices;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

namespace {

std::vector<mpz_class> count_table_impl(unsigned max_n, unsigned jobs) {
    std::vector<mpz_class> totals(max_n + 1, mpz_class(0));
    totals[0] = 1;
    if (max_n == 0) return totals;

    if (jobs <= 1 || max_n <= kPrefixDepth + 2) {
        TallyPolicy tally(max_n);
        walk_dfs(tally, max_n);
        if (!tally.overflow) {
            for (unsigned d = 1; d <= max_n; ++d) totals[d] += tally.counts[d];
        } else {
            BigTallyPolicy big(max_n);
            walk_dfs(big, max_n);
            for (unsigned d = 1; d <= max_n; ++d) totals[d] += big.counts[d];
        }
        return totals;
    }

    const unsigned split = kPrefixDepth;
    std::vector<std::vector<Direction>> prefixes;
    {
        PrefixCollector coll{split, &prefixes};
        walk_dfs(coll, split);
    }
    // Prefixes themselves are nodes at depths 1..split; count them directly.
    {
        TallyPolicy tally(split);
        walk_dfs(tally, split);
        for (unsigned d = 1; d <= split && d <= max_n; ++d) totals[d] += tally.counts[d];
    }
    std::mutex merge_mutex;
    parallel_for_index(prefixes.size(), jobs, [&](std::size_t i, unsigned) {
        WalkDfsState st(max_n);
        TallyPolicy tally(max_n);
        walk_dfs_subtree(st, tally, prefixes[i], max_n);
        std::vector<mpz_class> local(max_n + 1, mpz_class(0));
        if (!tally.overflow) {
            for (unsigned d = split + 1; d <= max_n; ++d) local[d] = tally.counts[d];
        } else {
            WalkDfsState st2(max_n);
            BigTallyPolicy big(max_n);
            walk_dfs_subtree(st2, big, prefixes[i], max_n);
            for (unsigned d = split + 1; d <= max_n; ++d) local[d] = big.counts[d];
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (unsigned d = split + 1; d <= max_n; ++d) totals[d] += local[d];
    });
    return totals;
}

}  // namespace

mpz_class count_taxi_walks(unsigned n, unsigned jobs) {
    return count_table_impl(n, jobs)[n];
}

CountTable count_taxi_walks_table(unsigned max_n, unsigned jobs) {
    auto totals = count_table_impl(max_n, jobs);
    CountTable t("c");
    for (unsigned n = 0; n <= max_n; ++n) t.set(n, std::move(totals[n]));
    return t;
}

void enumerate_taxi_walks(unsigned n, const std::function<void(const TaxiWalk&)>& visit) {
    if (n == 0) return;
    struct VisitPolicy {
        unsigned n;
        const std::function<void(const TaxiWalk&)>* visit;
        bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
        void enter(const WalkDfsState& st, unsigned depth) {
            if (depth != n) return;
            TaxiWalk w;
            w.vertices.assign(st.path.begin(), st.path.begin() + n + 1);
            w.first = st.dirs[1];
            w.turn_word.reserve(n - 1);
            for (unsigned d = 2; d <= n; ++d) w.turn_word.push_back(st.turned[d] ? 't' : 's');
            (*visit)(w);
        }
        void leave(const WalkDfsState&, unsigned) {}
    } pol{n, &visit};
    walk_dfs(pol, n);
}

mpz_class fibonacci_bound(unsigned n) {
    mpz_class f;
    mpz_fib_ui(f.get_mpz_t(), n + 1);
    return 2 * f;
}

SubadditiveBound subadditive_upper_bound(const CountTable& c, unsigned n, unsigned decimals) {
    if (n == 0) throw std::invalid_argument("subadditive bound needs n >= 1");
    SubadditiveBound out{
        BoundReport::from_root("subadditive", true, c.at(n), 1, n, "n=" + std::to_string(n),
                               decimals),
        std::nullopt};
    if (c.has(n + 1)) {
        out.refined = BoundReport::from_root("subadditive-refined", true, c.at(n + 1), 2, n,
                                             "n=" + std::to_string(n), decimals);
    }
    return out;
}

}  // namespace taxi
