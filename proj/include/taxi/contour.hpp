#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taxi/lattice.hpp"
#include "taxi/walks.hpp"

namespace taxi {

// 256-bit occupancy board over a centered square window, bit = (y+K)*16+(x+K)
// with K = n+2. Supports window sides up to 15, i.e. box radius n <= 5.
struct Board256 {
    std::array<std::uint64_t, 4> w{0, 0, 0, 0};

    friend Board256 operator&(Board256 a, const Board256& b) {
        for (int i = 0; i < 4; ++i) a.w[i] &= b.w[i];
        return a;
    }
    friend Board256 operator|(Board256 a, const Board256& b) {
        for (int i = 0; i < 4; ++i) a.w[i] |= b.w[i];
        return a;
    }
    friend Board256 operator^(Board256 a, const Board256& b) {
        for (int i = 0; i < 4; ++i) a.w[i] ^= b.w[i];
        return a;
    }
    Board256 andnot(const Board256& b) const {
        Board256 r = *this;
        for (int i = 0; i < 4; ++i) r.w[i] &= ~b.w[i];
        return r;
    }
    Board256& operator&=(const Board256& b) { for (int i = 0; i < 4; ++i) w[i] &= b.w[i]; return *this; }
    Board256& operator|=(const Board256& b) { for (int i = 0; i < 4; ++i) w[i] |= b.w[i]; return *this; }
    friend bool operator==(const Board256&, const Board256&) = default;

    bool none() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    bool any() const { return !none(); }
    int count() const {
        return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]) +
               __builtin_popcountll(w[2]) + __builtin_popcountll(w[3]);
    }
    bool test(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(unsigned i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(unsigned i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    Board256 shl(unsigned k) const {  // index += k (k < 64)
        Board256 r;
        for (int i = 3; i >= 1; --i)
            r.w[i] = (w[i] << k) | (k ? (w[i - 1] >> (64 - k)) : 0);
        r.w[0] = w[0] << k;
        return r;
    }
    Board256 shr(unsigned k) const {
        Board256 r;
        for (int i = 0; i < 3; ++i)
            r.w[i] = (w[i] >> k) | (k ? (w[i + 1] << (64 - k)) : 0);
        r.w[3] = w[3] >> k;
        return r;
    }

    template <class Fn>
    void for_each_bit(Fn&& fn) const {
        for (int i = 0; i < 4; ++i) {
            std::uint64_t v = w[i];
            while (v) {
                const int b = __builtin_ctzll(v);
                fn(static_cast<unsigned>(i * 64 + b));
                v &= v - 1;
            }
        }
    }
};

// A hard-core configuration on the window U_n with the even boundary
// condition fixed outside (every even vertex beyond U_n occupied), plus the
// inner radius m the homogeneity conditions refer to.
struct BoxConfig {
    int n = 3;
    int m = 1;
    Board256 occupied;  // occupied vertices inside U_n

    static BoxConfig from_vertices(int n, int m, const std::vector<Vertex>& occupied);
    std::vector<Vertex> occupied_vertices() const;
    bool test(Vertex v) const;
    void set(Vertex v);

    bool is_independent() const;  // includes compatibility with the exterior evens
    bool is_m_odd() const;
    bool is_m_even() const;
};

// The contour of a configuration: the separating edge set gamma, the dual
// cycle through the edge midpoints (doubled coordinates, so midpoint of
// {(0,0),(1,0)} is (1,0)), and the enclosed vertex interior.
struct Contour {
    int n = 0, m = 0;
    std::vector<std::pair<Vertex, Vertex>> gamma;  // (inside, outside) per edge
    std::vector<Vertex> cycle;                     // dual cycle, doubled coordinates
    Board256 interior;

    std::size_t size() const { return cycle.size(); }  // |Gamma| = |gamma|
    std::vector<Vertex> interior_vertices() const;
};

// I' = I plus every odd vertex none of whose neighbors is occupied.
BoxConfig augment(const BoxConfig& config);

// Full contour construction; throws std::invalid_argument if the input is
// not m-odd / not independent / not boundary-compatible.
Contour build_contour(const BoxConfig& config);

// Cuts the dual cycle at a vee apex (a vertical-edge midpoint whose two
// cycle neighbors sit half a step above) and maps the remaining path to walk
// coordinates; the image must be a taxi walk of length |Gamma|-1.
TaxiWalk contour_to_taxi_walk(const Contour& contour);

struct ShiftResult {
    Direction s;
    BoxConfig shifted;        // I_s
    BoxConfig augmented;      // I''_s = I_s + gained vertices
    std::vector<Vertex> gained;  // ~I_s (depends only on the interior and s)
};

// Shift of the configuration inside the contour interior by the unit vector s.
ShiftResult shift(const BoxConfig& config, const Contour& contour, Direction s);

// Inverse of the shift given only (J, s, gamma); J must equal I_s plus a
// subset of the gained vertices.
BoxConfig reconstruct(const BoxConfig& j, Direction s, const Contour& contour);

// ---- sweep driver ----

struct SweepOptions {
    int n = 3;
    int m = 1;
    bool exhaustive = true;
    std::uint64_t samples = 1000;   // when not exhaustive
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::uint64_t full_reconstruction_stride = 1024;  // exhaustive-subset cadence
};

struct SweepReport {
    static constexpr int kChecks = 14;
    static const std::array<const char*, kChecks> kCheckNames;

    // index of the "shift_m_even" check: the one property that is only
    // guaranteed when the contour encloses no occupied pockets (it holds
    // throughout the exhaustive n=3 space; window (5,1) has counterexamples)
    static constexpr int kShiftMEvenIndex = 12;
    static constexpr int kShiftHomogeneousIndex = 11;

    int n = 0, m = 0;
    bool exhaustive = true;
    std::uint64_t configs = 0;
    std::array<std::uint64_t, kChecks> failures{};
    std::map<int, std::uint64_t> contour_length_histogram;
    double seconds = 0.0;
    // lexicographically-first failing configuration, if any, plus check name
    std::optional<std::vector<Vertex>> counterexample;
    std::string counterexample_check;

    bool all_passed() const {
        for (auto f : failures)
            if (f) return false;
        return true;
    }
};

SweepReport run_contour_sweep(const SweepOptions& options);

// ---- Peierls tail arithmetic ----

struct TailParams {
    double mu = 0.0;      // candidate growth constant, > 1
    double lambda = 0.0;  // activity; needs lambda > mu^4 - 1 for convergence
    unsigned m = 0;       // inner radius
};

struct TailResult {
    double ratio = 0.0;  // r = mu^4 / (1 + lambda)
    unsigned first_term = 0;  // L = ceil(sqrt(2) m / 2)
    double tail = 0.0;        // r^L / (1 - r)
    bool below_one_third = false;
};

// Closed-form geometric tail sum_{l >= L} r^l; throws std::domain_error when
// r >= 1 (divergent).
TailResult peierls_tail(const TailParams& params);

// Smallest m whose tail drops below 1/3.
unsigned minimal_m_for_tail(double mu, double lambda);

}  // namespace taxi
