#pragma once

// Depth-first traversal of the taxi-walk tree. Every node at depth d is a
// taxi walk of length d; each node has at most two children (straight first,
// then turn, which yields lexicographic (first-step, turn-word) order with
// N < E and s < t). Self-avoidance is tracked in a flat occupancy bitmap
// over [-n,n]^2: a walk of length n cannot leave that box.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "taxi/lattice.hpp"

namespace taxi {

class OccupancyGrid {
  public:
    explicit OccupancyGrid(int radius)
        : radius_(radius), side_(2 * radius + 1),
          words_((static_cast<std::size_t>(side_) * side_ + 63) / 64, 0) {}

    std::size_t index(Vertex v) const {
        return static_cast<std::size_t>(v.x + radius_) * side_ + (v.y + radius_);
    }
    bool test(Vertex v) const {
        const std::size_t i = index(v);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(Vertex v) {
        const std::size_t i = index(v);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void clear(Vertex v) {
        const std::size_t i = index(v);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

  private:
    int radius_;
    int side_;
    std::vector<std::uint64_t> words_;
};

// Mutable traversal state shared with the policy callbacks.
struct WalkDfsState {
    std::vector<Vertex> path;        // path[0] = origin, path[d] = vertex after step d
    std::vector<Direction> dirs;     // dirs[d] = direction of step d (dirs[0] unused)
    std::vector<std::uint8_t> turned;  // turned[d] = step d was a turn
    OccupancyGrid grid;

    explicit WalkDfsState(unsigned max_depth)
        : path(max_depth + 1), dirs(max_depth + 1, Direction::N),
          turned(max_depth + 1, 0), grid(static_cast<int>(max_depth) + 1) {
        path[0] = Vertex{0, 0};
        grid.set(path[0]);
    }
};

// Policy requirements:
//   bool admit(const WalkDfsState&, Vertex child, unsigned child_depth, bool is_turn)
//   void enter(const WalkDfsState&, unsigned depth)   // node of length `depth` just pushed
//   void leave(const WalkDfsState&, unsigned depth)
template <class Policy>
void walk_dfs_recurse(WalkDfsState& st, Policy& pol, unsigned depth, unsigned max_depth) {
    if (depth == max_depth) return;
    const Vertex v = st.path[depth];
    const Direction last = st.dirs[depth];

    const Vertex ws = step(v, last);  // straight child
    if (!st.grid.test(ws) && pol.admit(st, ws, depth + 1, false)) {
        st.path[depth + 1] = ws;
        st.dirs[depth + 1] = last;
        st.turned[depth + 1] = 0;
        st.grid.set(ws);
        pol.enter(st, depth + 1);
        walk_dfs_recurse(st, pol, depth + 1, max_depth);
        pol.leave(st, depth + 1);
        st.grid.clear(ws);
    }
    if (!st.turned[depth]) {  // turn child (never two consecutive turns)
        const Direction td = is_vertical(last) ? horizontal_step(v) : vertical_step(v);
        const Vertex wt = step(v, td);
        if (!st.grid.test(wt) && pol.admit(st, wt, depth + 1, true)) {
            st.path[depth + 1] = wt;
            st.dirs[depth + 1] = td;
            st.turned[depth + 1] = 1;
            st.grid.set(wt);
            pol.enter(st, depth + 1);
            walk_dfs_recurse(st, pol, depth + 1, max_depth);
            pol.leave(st, depth + 1);
            st.grid.clear(wt);
        }
    }
}

// Run the DFS from the root over the given first steps (defaults to both,
// N before E). first_dirs entries must be legal at the origin.
template <class Policy>
void walk_dfs(Policy& pol, unsigned max_depth,
              std::initializer_list<Direction> first_dirs = {Direction::N, Direction::E}) {
    if (max_depth == 0) return;
    WalkDfsState st(max_depth);
    for (Direction d : first_dirs) {
        const Vertex w = step(Vertex{0, 0}, d);
        if (!pol.admit(st, w, 1, false)) continue;
        st.path[1] = w;
        st.dirs[1] = d;
        st.turned[1] = 0;
        st.grid.set(w);
        pol.enter(st, 1);
        walk_dfs_recurse(st, pol, 1, max_depth);
        pol.leave(st, 1);
        st.grid.clear(w);
    }
}

// Replay a stored prefix into `st`, invoking pol.enter for each step, then
// continue the traversal below it. Used by the prefix-partitioned parallel
// drivers; subtree results merge commutatively so totals are deterministic.
template <class Policy>
void walk_dfs_subtree(WalkDfsState& st, Policy& pol, std::span<const Direction> prefix_dirs,
                      unsigned max_depth) {
    unsigned depth = 0;
    for (Direction d : prefix_dirs) {
        const Vertex v = st.path[depth];
        const Vertex w = step(v, d);
        const bool turn = depth > 0 && is_vertical(d) != is_vertical(st.dirs[depth]);
        ++depth;
        st.path[depth] = w;
        st.dirs[depth] = d;
        st.turned[depth] = turn ? 1 : 0;
        st.grid.set(w);
        pol.enter(st, depth);
    }
    walk_dfs_recurse(st, pol, depth, max_depth);
    for (unsigned d = depth; d >= 1; --d) {
        pol.leave(st, d);
        st.grid.clear(st.path[d]);
    }
}

// Shared worker loop: hand prefixes out via an atomic counter.
template <class Fn>
void parallel_for_index(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    const unsigned nthreads = std::min<std::size_t>(jobs, count);
    threads.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        threads.emplace_back([&, t] {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) break;
                fn(i, t);
            }
        });
    }
    for (auto& th : threads) th.join();
}

}  // namespace taxi
