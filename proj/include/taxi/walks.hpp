#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxi/bound_report.hpp"
#include "taxi/count_table.hpp"
#include "taxi/lattice.hpp"

namespace taxi {

// A taxi walk: oriented self-avoiding walk from the origin with no two
// consecutive turns, together with its (first-step, turn-word) encoding.
struct TaxiWalk {
    std::vector<Vertex> vertices;  // vertices[0] = origin
    Direction first = Direction::N;
    std::string turn_word;  // over {s,t}, length n-1

    unsigned length() const { return vertices.empty() ? 0 : static_cast<unsigned>(vertices.size() - 1); }

    // Packed (first, word) key; lexicographic order of keys at fixed length
    // equals lexicographic order of encodings (N=0 < E=1, s=0 < t=1).
    std::uint64_t encoding_key() const;

    static TaxiWalk from_vertices(std::vector<Vertex> vertices);
    static TaxiWalk decode(Direction first, std::string_view turn_word);

    // Full invariant check: legality, self-avoidance, no "tt", and
    // vertex/encoding consistency.
    bool valid() const;
};

// Exact number of taxi walks of length n from the origin; c_0 = 1 (empty
// walk, by convention). Deterministic for any jobs value.
mpz_class count_taxi_walks(unsigned n, unsigned jobs = 1);

// c_1..c_max in one traversal (every tree node at depth k is a walk of
// length k); index 0 holds c_0 = 1.
CountTable count_taxi_walks_table(unsigned max_n, unsigned jobs = 1);

// Streams every taxi walk of length exactly n once, in lexicographic
// (first-step, turn-word) order.
void enumerate_taxi_walks(unsigned n, const std::function<void(const TaxiWalk&)>& visit);

// 2*f_{n+1} with f_0=0, f_1=1; an upper bound on c_n from the encoding.
mpz_class fibonacci_bound(unsigned n);

struct SubadditiveBound {
    BoundReport primary;                 // c_n^{1/n}, rounded up
    std::optional<BoundReport> refined;  // (c_{n+1}/2)^{1/n} when c_{n+1} is known
};

SubadditiveBound subadditive_upper_bound(const CountTable& c, unsigned n, unsigned decimals = 5);

}  // namespace taxi
