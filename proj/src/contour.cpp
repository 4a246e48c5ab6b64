#include "taxi/contour.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>

#include "taxi/walk_dfs.hpp"

namespace taxi {

namespace {

constexpr int kStride = 16;

// Window masks for a given (n, m); the window is U_{n+2} so floods can start
// strictly outside U_n. Bit layout: (y+K)*16 + (x+K), K = n+2.
struct Geometry {
    int n, m, K, side;
    Board256 grid, box_n, box_m, frame;
    Board256 even, odd;
    Board256 even_outside;     // evens of the window beyond U_n (occupied boundary)
    Board256 modd_forbidden;   // neighbors of odd U_m vertices
    Board256 meven_forbidden;  // neighbors of even U_m vertices
    Board256 odd_um;
    Board256 free_cells;       // enumeration support for B_n^e

    Geometry(int n_, int m_) : n(n_), m(m_), K(n_ + 2), side(2 * (n_ + 2) + 1) {
        if (n < 1 || n > 5 || m < 0 || m >= n)
            throw std::invalid_argument("contour window needs 1 <= n <= 5 and 0 <= m < n");
        for (int y = -K; y <= K; ++y) {
            for (int x = -K; x <= K; ++x) {
                const unsigned b = bit({x, y});
                grid.set(b);
                if (((x + y) & 1) == 0) even.set(b);
                else odd.set(b);
                if (std::abs(x) <= n && std::abs(y) <= n) box_n.set(b);
                if (std::abs(x) <= m && std::abs(y) <= m) box_m.set(b);
                if (std::abs(x) == K || std::abs(y) == K) frame.set(b);
            }
        }
        even_outside = even & grid.andnot(box_n);
        odd_um = odd & box_m;
        modd_forbidden = neighbors(odd_um);
        meven_forbidden = neighbors(even & box_m);
        Board256 odd_boundary;
        for (int y = -n; y <= n; ++y)
            for (int x = -n; x <= n; ++x)
                if (((x + y) & 1) != 0 && (std::abs(x) == n || std::abs(y) == n))
                    odd_boundary.set(bit({x, y}));
        free_cells = box_n.andnot(odd_boundary).andnot(modd_forbidden);
    }

    unsigned bit(Vertex v) const {
        return static_cast<unsigned>((v.y + K) * kStride + (v.x + K));
    }
    Vertex vertex(unsigned b) const {
        return {static_cast<int>(b % kStride) - K, static_cast<int>(b / kStride) - K};
    }

    Board256 shE(const Board256& b) const { return b.shl(1) & grid; }
    Board256 shW(const Board256& b) const { return b.shr(1) & grid; }
    Board256 shN(const Board256& b) const { return b.shl(kStride) & grid; }
    Board256 shS(const Board256& b) const { return b.shr(kStride) & grid; }
    Board256 shift_dir(const Board256& b, Direction d) const {
        switch (d) {
            case Direction::E: return shE(b);
            case Direction::W: return shW(b);
            case Direction::N: return shN(b);
            case Direction::S: return shS(b);
        }
        return {};
    }
    Board256 neighbors(const Board256& b) const { return shE(b) | shW(b) | shN(b) | shS(b); }

    bool independent_with_boundary(const Board256& occ) const {
        if (occ.andnot(box_n).any()) return false;
        const Board256 full = occ | even_outside;
        return (full & shE(full)).none() && (full & shN(full)).none();
    }
};

// Doubled-coordinate id of the midpoint of edge {a,b}: fits a 32x32 grid.
inline unsigned mid_id(unsigned abit, unsigned bbit) {
    const unsigned arow = abit / kStride, acol = abit % kStride;
    const unsigned brow = bbit / kStride, bcol = bbit % kStride;
    return (arow + brow) * 32 + (acol + bcol);
}

struct MidBits {
    std::array<std::uint64_t, 16> w{};
    bool test(unsigned i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(unsigned i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void clear() { w.fill(0); }
};

enum CheckId : int {
    kCheckModd = 0,
    kCheckConstruction,   // case rules, gamma membership, 2-regular symmetry
    kCheckSingleCycle,
    kCheckMod4,
    kCheckMinLength,
    kCheckEdgeParity,
    kCheckSquareRule,
    kCheckTurnParity,
    kCheckCutWalk,
    kCheckInteriorSeparation,
    kCheckShift,
    kCheckShiftHomogeneous,  // I''_s m-even or m-odd, every direction
    kCheckShiftMEven,        // the stronger proof-level property; can fail
                             // when the contour encloses occupied pockets
    kCheckReconstruction,
};

constexpr std::array<Direction, 4> kShiftDirs = {Direction::E, Direction::N, Direction::W,
                                                 Direction::S};

// Thread-local working state for one configuration analysis. All scratch is
// epoch-stamped so nothing needs clearing between configurations.
struct Analyzer {
    const Geometry* g;

    std::array<std::uint16_t, 1024> nbrA;
    std::array<std::uint16_t, 1024> nbrB;
    std::array<std::uint8_t, 1024> deg;
    std::array<std::uint32_t, 1024> stamp;
    std::uint32_t epoch = 0;
    MidBits mids;
    std::vector<std::uint16_t> midlist, cycle;
    std::array<std::uint32_t, 4096> imgstamp;  // 64x64 walk-image window
    std::uint32_t imgepoch = 0;

    // per-run outputs
    Board256 augmented, region, interior;
    int gamma_size = 0;
    std::array<Board256, 4> gamma_from;  // u with u+dir outside, per kShiftDirs order

    explicit Analyzer(const Geometry* geom) : g(geom) {
        stamp.fill(0);
        imgstamp.fill(0);
        midlist.reserve(1024);
        cycle.reserve(1024);
    }

    bool compute_augment(const Board256& I) {
        const Board256 full = I | g->even_outside;
        augmented = I | (g->odd & g->box_n).andnot(g->neighbors(full));
        return (g->odd_um.andnot(augmented)).none();
    }

    // R = component of odd(I') + neighbors containing U_m.
    bool compute_region() {
        const Board256 K = augmented & g->odd;
        const Board256 support = K | g->neighbors(K);
        Board256 R = g->odd_um;
        for (;;) {
            const Board256 next = R | (g->neighbors(R) & support);
            if (next == R) break;
            R = next;
        }
        region = R;
        if ((g->box_m).andnot(R).any()) return false;  // U_m not inside one component
        return R.andnot(g->box_n).none();
    }

    void compute_gamma() {
        Board256 reach = g->frame;
        const Board256 open = g->grid.andnot(region);
        for (;;) {
            const Board256 next = (reach | g->neighbors(reach)) & open;
            if (next == reach) break;
            reach = next;
        }
        gamma_size = 0;
        for (int di = 0; di < 4; ++di) {
            const Direction d = kShiftDirs[di];
            // u in R with u+d reachable: shift reach backwards
            const Direction back = static_cast<Direction>((static_cast<int>(d) + 2) & 3);
            gamma_from[di] = region & g->shift_dir(reach, back);
            gamma_size += gamma_from[di].count();
        }
    }

    bool check_edge_parity(const Board256& I) const {
        const Board256 even_ok = (g->even).andnot(I);
        const Board256 odd_ok = (g->odd).andnot(augmented);
        for (int di = 0; di < 4; ++di) {
            if (gamma_from[di].andnot(even_ok).any()) return false;
            if (g->shift_dir(gamma_from[di], kShiftDirs[di]).andnot(odd_ok).any()) return false;
        }
        return true;
    }

    void touch(unsigned id) {
        if (stamp[id] != epoch) {
            stamp[id] = epoch;
            deg[id] = 0;
        }
    }
    bool add_arc(unsigned a, unsigned b) {
        touch(a);
        if (deg[a] == 0) nbrA[a] = static_cast<std::uint16_t>(b);
        else if (deg[a] == 1) nbrB[a] = static_cast<std::uint16_t>(b);
        else return false;
        ++deg[a];
        return true;
    }

    // Build the dual graph by the square-by-square rules; false on any
    // structural violation (case i, missing gamma partner, degree > 2).
    bool build_dual() {
        ++epoch;
        mids.clear();
        midlist.clear();
        for (int di = 0; di < 4; ++di) {
            gamma_from[di].for_each_bit([&](unsigned ubit) {
                const Vertex u = g->vertex(ubit);
                const Vertex v = step(u, kShiftDirs[di]);
                const unsigned id = mid_id(ubit, g->bit(v));
                mids.set(id);
                midlist.push_back(static_cast<std::uint16_t>(id));
            });
        }
        bool ok = true;
        for (int di = 0; di < 4 && ok; ++di) {
            const Direction d = kShiftDirs[di];
            gamma_from[di].for_each_bit([&](unsigned ubit) {
                if (!ok) return;
                const Vertex u = g->vertex(ubit);
                const Vertex v = step(u, d);
                const unsigned uvbit = g->bit(v);
                const unsigned uv = mid_id(ubit, uvbit);
                const Vertex dvec = kStep[static_cast<int>(d)];
                for (int sign = -1; sign <= 1; sign += 2) {
                    const Vertex p{-dvec.y * sign, dvec.x * sign};
                    const Vertex s{v.x + p.x, v.y + p.y};
                    const Vertex t{u.x + p.x, u.y + p.y};
                    const bool t_in = region.test(g->bit(t));
                    const bool s_in = region.test(g->bit(s));
                    if (t_in && !s_in) {  // impossible by parity
                        ok = false;
                        return;
                    }
                    unsigned other;
                    if (!t_in && !s_in) other = mid_id(g->bit(t), ubit);
                    else other = mid_id(uvbit, g->bit(s));
                    if (!mids.test(other)) {  // partner edge must be in gamma
                        ok = false;
                        return;
                    }
                    if (!add_arc(uv, other)) {
                        ok = false;
                        return;
                    }
                }
            });
        }
        if (!ok) return false;
        // 2-regular and symmetric
        for (std::uint16_t id : midlist) {
            if (stamp[id] != epoch || deg[id] != 2) return false;
            for (unsigned nb : {nbrA[id], nbrB[id]}) {
                if (stamp[nb] != epoch || deg[nb] != 2) return false;
                if (nbrA[nb] != id && nbrB[nb] != id) return false;
            }
        }
        return true;
    }

    bool extract_cycle() {
        cycle.clear();
        if (midlist.empty()) return false;
        const std::uint16_t start = *std::min_element(midlist.begin(), midlist.end());
        std::uint16_t prev = start, cur = nbrA[start];
        cycle.push_back(start);
        while (cur != start) {
            cycle.push_back(cur);
            const std::uint16_t nxt = nbrA[cur] != prev ? nbrA[cur] : nbrB[cur];
            prev = cur;
            cur = nxt;
        }
        return cycle.size() == static_cast<std::size_t>(gamma_size);
    }

    // No U-turn within a single unit square (both dual neighbors on the same
    // side of the edge).
    bool check_square_rule() const {
        for (std::uint16_t id : midlist) {
            const int acol = nbrA[id] % 32, bcol = nbrB[id] % 32, col = id % 32;
            const int arow = nbrA[id] / 32, brow = nbrB[id] / 32, row = id / 32;
            if ((col & 1) == 0) {  // vertical-edge midpoint
                if (acol - col == bcol - col) return false;
            } else {
                if (arow - row == brow - row) return false;
            }
        }
        return true;
    }

    // Cyclic turn structure: no two consecutive turns; turns separated by an
    // odd number of edges rotate the same way, by an even number the
    // opposite way.
    bool check_turn_parity(bool* had_consecutive_turns) const {
        const std::size_t L = cycle.size();
        auto step_of = [&](std::size_t i) {
            const int a = cycle[i], b = cycle[(i + 1) % L];
            return std::pair<int, int>{(b % 32) - (a % 32), (b / 32) - (a / 32)};
        };
        std::vector<std::size_t> turns;
        std::vector<int> sign;
        turns.reserve(L);
        sign.reserve(L);
        for (std::size_t i = 0; i < L; ++i) {
            const auto s1 = step_of(i);
            const auto s2 = step_of((i + 1) % L);
            if (s1 != s2) {
                turns.push_back(i);
                sign.push_back(s1.first * s2.second - s1.second * s2.first > 0 ? 1 : -1);
            }
        }
        *had_consecutive_turns = false;
        for (std::size_t k = 0; k < turns.size(); ++k) {
            const std::size_t i = turns[k], j = turns[(k + 1) % turns.size()];
            const std::size_t edges_between = (j + L - i) % L;
            if (edges_between == 1 && turns.size() > 1) *had_consecutive_turns = true;
            const bool same = sign[k] == sign[(k + 1) % turns.size()];
            if (turns.size() == 1) continue;
            if (edges_between % 2 == 1 ? !same : same) return false;
        }
        return !*had_consecutive_turns;
    }

    // Cut at the minimal vee apex and validate the mapped walk inline.
    bool check_cut_walk(bool build_full, TaxiWalk* out) {
        const std::size_t L = cycle.size();
        int apex_pos = -1;
        unsigned apex_best = 0;
        for (std::size_t i = 0; i < L; ++i) {
            const unsigned id = cycle[i];
            if ((id % 32) & 1) continue;  // need a vertical-edge midpoint
            const unsigned a = nbrA[id], b = nbrB[id];
            if (a / 32 == id / 32 + 1 && b / 32 == id / 32 + 1) {
                if (apex_pos < 0 || id < apex_best) {
                    apex_pos = static_cast<int>(i);
                    apex_best = id;
                }
            }
        }
        if (apex_pos < 0) return false;
        const int acol = apex_best % 32, arow = apex_best / 32;
        // orient the traversal so the first step goes to the (+1,+1) neighbor
        const unsigned succ = cycle[(apex_pos + 1) % L];
        const bool forward = (succ % 32) == static_cast<unsigned>(acol + 1);
        ++imgepoch;
        int px = 0, py = 0;  // previous image vertex
        int dy0 = 0;
        bool have_prev_dir = false, last_turned = false;
        imgstamp[(32 << 6) | 32] = imgepoch;  // origin visited
        if (out) {
            out->vertices.clear();
            out->vertices.push_back({0, 0});
            out->turn_word.clear();
        }
        for (std::size_t k = 1; k < L; ++k) {
            const unsigned id =
                forward ? cycle[(apex_pos + k) % L] : cycle[(apex_pos + L - k) % L];
            const int ddx = static_cast<int>(id % 32) - acol;
            const int ddy = static_cast<int>(id / 32) - arow;
            const int ix = (ddx + ddy) / 2, iy = (ddx - ddy) / 2;
            const int sx = ix - px, sy = iy - py;
            // legality on the oriented lattice
            if (sy == 0) {
                if (sx != (((py & 1) == 0) ? 1 : -1)) return false;
            } else if (sx == 0) {
                if (sy != (((px & 1) == 0) ? 1 : -1)) return false;
            } else {
                return false;
            }
            const bool turned = have_prev_dir && ((sy != 0) != (dy0 != 0));
            if (turned && last_turned) return false;
            const unsigned cell = static_cast<unsigned>(((iy + 32) << 6) | (ix + 32));
            if (imgstamp[cell] == imgepoch) return false;  // revisit
            imgstamp[cell] = imgepoch;
            if (out) {
                if (have_prev_dir) out->turn_word.push_back(turned ? 't' : 's');
                out->vertices.push_back({ix, iy});
            }
            last_turned = have_prev_dir ? turned : false;
            dy0 = sy;
            have_prev_dir = true;
            px = ix;
            py = iy;
        }
        if (out) {
            out->first = out->vertices[1] == Vertex{1, 0} ? Direction::E : Direction::N;
            if (build_full && !out->valid()) return false;
        }
        return true;
    }

    bool compute_interior() {
        Board256 allow[4];
        for (auto& a : allow) a = g->grid;
        // clear moves crossing a gamma midpoint
        for (std::uint16_t id : midlist) {
            const int dcol = id % 32, drow = id / 32;
            if ((dcol & 1) == 0) {  // vertical edge blocks N/S moves
                const int col = dcol / 2, row = (drow - 1) / 2;
                allow[1].reset(static_cast<unsigned>(row * kStride + col));        // N from below
                allow[3].reset(static_cast<unsigned>((row + 1) * kStride + col));  // S from above
            } else {  // horizontal edge blocks E/W moves
                const int col = (dcol - 1) / 2, row = drow / 2;
                allow[0].reset(static_cast<unsigned>(row * kStride + col));  // E from the left
                allow[2].reset(static_cast<unsigned>(row * kStride + col + 1));
            }
        }
        Board256 ext = g->frame;
        for (;;) {
            Board256 next = ext;
            next |= g->shE(ext & allow[0]);
            next |= g->shN(ext & allow[1]);
            next |= g->shW(ext & allow[2]);
            next |= g->shS(ext & allow[3]);
            if (next == ext) break;
            ext = next;
        }
        interior = g->grid.andnot(ext);
        if (interior.andnot(g->box_n).any()) return false;
        if (region.andnot(interior).any()) return false;
        // every gamma edge: inside endpoint interior, outside endpoint exterior
        for (int di = 0; di < 4; ++di) {
            if (gamma_from[di].andnot(interior).any()) return false;
            if ((g->shift_dir(gamma_from[di], kShiftDirs[di]) & interior).any()) return false;
        }
        return true;
    }

    Board256 shifted_config(const Board256& I, Direction s) const {
        return I.andnot(interior) | g->shift_dir(I & interior, s);
    }
    Board256 gained_set(Direction s) const {
        return interior.andnot(g->shift_dir(interior, s));
    }
    Board256 unshift_config(const Board256& J, Direction s) const {
        const Direction back = static_cast<Direction>((static_cast<int>(s) + 2) & 3);
        return J.andnot(interior) | g->shift_dir(J & interior, back);
    }
};

// Deterministic per-configuration key; decides which configurations get the
// expensive deep checks, independently of thread scheduling.
std::uint64_t config_key(const Board256& I) {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::uint64_t w : I.w) {
        h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
    }
    return h;
}

struct SweepCounters {
    std::array<std::uint64_t, SweepReport::kChecks> failures{};
    std::map<int, std::uint64_t> hist;
    std::uint64_t configs = 0;
    bool have_counterexample = false;
    Board256 counterexample;
    int counterexample_check = -1;

    void record_failure(int check, const Board256& I) {
        ++failures[static_cast<std::size_t>(check)];
        // keep the lexicographically smallest failing board, for determinism
        if (!have_counterexample || std::lexicographical_compare(
                                        I.w.begin(), I.w.end(), counterexample.w.begin(),
                                        counterexample.w.end())) {
            have_counterexample = true;
            counterexample = I;
            counterexample_check = check;
        }
    }
};

// Full per-configuration check battery.
void analyze_config(Analyzer& an, const Geometry& g, const Board256& I,
                    std::uint64_t full_recon_stride, SweepCounters& out) {
    const std::uint64_t key = config_key(I);
    ++out.configs;
    if (!an.compute_augment(I)) {
        out.record_failure(kCheckModd, I);
        return;
    }
    if (!an.compute_region()) {
        out.record_failure(kCheckModd, I);
        return;
    }
    an.compute_gamma();
    if (!an.check_edge_parity(I)) out.record_failure(kCheckEdgeParity, I);
    if (!an.build_dual()) {
        out.record_failure(kCheckConstruction, I);
        return;
    }
    if (!an.extract_cycle()) {
        out.record_failure(kCheckSingleCycle, I);
        return;
    }
    ++out.hist[an.gamma_size];
    if (an.gamma_size % 4 != 0) out.record_failure(kCheckMod4, I);
    if (static_cast<long>(an.gamma_size) * an.gamma_size < 8L * g.m * g.m)
        out.record_failure(kCheckMinLength, I);
    if (!an.check_square_rule()) out.record_failure(kCheckSquareRule, I);
    bool consecutive_turns = false;
    if (!an.check_turn_parity(&consecutive_turns)) out.record_failure(kCheckTurnParity, I);
    const bool full_walk = (key & 63) == 0;
    TaxiWalk walk;
    if (!an.check_cut_walk(full_walk, full_walk ? &walk : nullptr))
        out.record_failure(kCheckCutWalk, I);
    if (!an.compute_interior()) {
        out.record_failure(kCheckInteriorSeparation, I);
        return;
    }

    const int isize = I.count();
    int best_gain = 0;
    bool shift_ok = true, homogeneous_ok = true, m_even_ok = true;
    for (Direction s : kShiftDirs) {
        const Board256 moved = g.shift_dir(I & an.interior, s);
        if (moved.andnot(an.interior).any()) shift_ok = false;  // shift must stay inside
        const Board256 Is = I.andnot(an.interior) | moved;
        if (Is.count() != isize) shift_ok = false;
        const Board256 gained = an.gained_set(s);
        if ((gained & Is).any()) shift_ok = false;
        const Board256 Iss = Is | gained;
        if (!g.independent_with_boundary(Iss)) shift_ok = false;
        const bool m_even = (Iss & g.meven_forbidden).none();
        const bool m_odd = (Iss & g.modd_forbidden).none();
        if (!m_even) m_even_ok = false;
        if (!m_even && !m_odd) homogeneous_ok = false;
        best_gain = std::max(best_gain, gained.count());

        // reconstruction round trips; disjointness above makes these cover
        // every subset S
        const Board256 checker{{0xAAAAAAAAAAAAAAAAull, 0x5555555555555555ull,
                                0xAAAAAAAAAAAAAAAAull, 0x5555555555555555ull}};
        for (const Board256& S : {Board256{}, gained, gained & checker}) {
            const Board256 J = Is | S;
            const Board256 S2 = J & gained;
            const Board256 I2 = an.unshift_config(J.andnot(S2), s);
            if (!(I2 == I)) {
                out.record_failure(kCheckReconstruction, I);
                break;
            }
        }
        if (key % full_recon_stride == 0) {
            std::array<unsigned, 32> pos;
            unsigned npos = 0;
            gained.for_each_bit([&](unsigned b) {
                if (npos < pos.size()) pos[npos++] = b;
            });
            if (npos <= 16) {
                for (std::uint32_t mask = 0; mask < (1u << npos); ++mask) {
                    Board256 S;
                    for (unsigned k = 0; k < npos; ++k)
                        if ((mask >> k) & 1) S.set(pos[k]);
                    const Board256 J = Is | S;
                    const Board256 I2 = an.unshift_config(J.andnot(J & gained), s);
                    if (!(I2 == I)) {
                        out.record_failure(kCheckReconstruction, I);
                        break;
                    }
                }
            }
        }
    }
    if (4 * best_gain < an.gamma_size) shift_ok = false;
    if (!shift_ok) out.record_failure(kCheckShift, I);
    if (!homogeneous_ok) out.record_failure(kCheckShiftHomogeneous, I);
    if (!m_even_ok) out.record_failure(kCheckShiftMEven, I);
}

}  // namespace

// ---- BoxConfig ----

BoxConfig BoxConfig::from_vertices(int n, int m, const std::vector<Vertex>& occupied) {
    Geometry g(n, m);
    BoxConfig c;
    c.n = n;
    c.m = m;
    for (const Vertex& v : occupied) {
        if (std::abs(v.x) > n || std::abs(v.y) > n)
            throw std::invalid_argument("occupied vertex outside the window");
        c.occupied.set(g.bit(v));
    }
    return c;
}

std::vector<Vertex> BoxConfig::occupied_vertices() const {
    Geometry g(n, m);
    std::vector<Vertex> out;
    occupied.for_each_bit([&](unsigned b) { out.push_back(g.vertex(b)); });
    return out;
}

bool BoxConfig::test(Vertex v) const { return occupied.test(Geometry(n, m).bit(v)); }
void BoxConfig::set(Vertex v) { occupied.set(Geometry(n, m).bit(v)); }

bool BoxConfig::is_independent() const { return Geometry(n, m).independent_with_boundary(occupied); }
bool BoxConfig::is_m_odd() const { return (occupied & Geometry(n, m).modd_forbidden).none(); }
bool BoxConfig::is_m_even() const { return (occupied & Geometry(n, m).meven_forbidden).none(); }

// ---- public construction ----

BoxConfig augment(const BoxConfig& config) {
    Geometry g(config.n, config.m);
    if (!g.independent_with_boundary(config.occupied))
        throw std::invalid_argument("augment: configuration is not independent / boundary-compatible");
    Analyzer an(&g);
    if (!an.compute_augment(config.occupied))
        throw std::invalid_argument("augment: configuration is not m-odd");
    BoxConfig out = config;
    out.occupied = an.augmented;
    return out;
}

Contour build_contour(const BoxConfig& config) {
    Geometry g(config.n, config.m);
    if (!g.independent_with_boundary(config.occupied))
        throw std::invalid_argument("build_contour: configuration is not independent");
    Analyzer an(&g);
    if (!an.compute_augment(config.occupied) || !an.compute_region())
        throw std::invalid_argument("build_contour: U_m is not inside one odd component (non-m-odd input)");
    an.compute_gamma();
    if (!an.check_edge_parity(config.occupied))
        throw std::logic_error("build_contour: gamma edge parity violated");
    if (!an.build_dual()) throw std::logic_error("build_contour: square rules produced a bad dual graph");
    if (!an.extract_cycle()) throw std::logic_error("build_contour: contour is not a single cycle");
    if (!an.compute_interior()) throw std::logic_error("build_contour: interior separation failed");

    Contour c;
    c.n = config.n;
    c.m = config.m;
    for (int di = 0; di < 4; ++di) {
        const Direction d = kShiftDirs[di];
        an.gamma_from[di].for_each_bit([&](unsigned ubit) {
            const Vertex u = g.vertex(ubit);
            c.gamma.emplace_back(u, step(u, d));
        });
    }
    std::sort(c.gamma.begin(), c.gamma.end());
    c.cycle.reserve(an.cycle.size());
    for (std::uint16_t id : an.cycle)
        c.cycle.push_back({static_cast<int>(id % 32) - 2 * g.K, static_cast<int>(id / 32) - 2 * g.K});
    c.interior = an.interior;
    return c;
}

std::vector<Vertex> Contour::interior_vertices() const {
    Geometry g(n, m);
    std::vector<Vertex> out;
    interior.for_each_bit([&](unsigned b) { out.push_back(g.vertex(b)); });
    return out;
}

TaxiWalk contour_to_taxi_walk(const Contour& contour) {
    // Rebuild the analyzer state from the stored cycle.
    Geometry g(contour.n, contour.m);
    const std::size_t L = contour.cycle.size();
    if (L < 4) throw std::invalid_argument("contour_to_taxi_walk: degenerate contour");
    // locate the minimal vee apex: vertical-edge midpoint, both neighbors above
    int apex_pos = -1;
    long apex_key = 0;
    for (std::size_t i = 0; i < L; ++i) {
        const Vertex d = contour.cycle[i];
        if ((d.x & 1) != 0) continue;
        const Vertex a = contour.cycle[(i + 1) % L], b = contour.cycle[(i + L - 1) % L];
        if (a.y == d.y + 1 && b.y == d.y + 1) {
            const long key = static_cast<long>(d.y) * 4096 + d.x;
            if (apex_pos < 0 || key < apex_key) {
                apex_pos = static_cast<int>(i);
                apex_key = key;
            }
        }
    }
    if (apex_pos < 0)
        throw std::logic_error("contour_to_taxi_walk: no vee apex found");
    const Vertex apex = contour.cycle[static_cast<std::size_t>(apex_pos)];
    const Vertex succ = contour.cycle[(static_cast<std::size_t>(apex_pos) + 1) % L];
    const bool forward = succ.x == apex.x + 1;
    std::vector<Vertex> img;
    img.reserve(L);
    for (std::size_t k = 0; k < L; ++k) {
        const std::size_t pos = forward ? (static_cast<std::size_t>(apex_pos) + k) % L
                                        : (static_cast<std::size_t>(apex_pos) + L - k) % L;
        const Vertex p = contour.cycle[pos];
        const int ddx = p.x - apex.x, ddy = p.y - apex.y;
        img.push_back({(ddx + ddy) / 2, (ddx - ddy) / 2});
    }
    TaxiWalk walk = TaxiWalk::from_vertices(std::move(img));
    if (!walk.valid())
        throw std::logic_error("contour_to_taxi_walk: image violates taxi-walk invariants");
    return walk;
}

ShiftResult shift(const BoxConfig& config, const Contour& contour, Direction s) {
    Geometry g(config.n, config.m);
    Analyzer an(&g);
    an.interior = contour.interior;
    ShiftResult out;
    out.s = s;
    out.shifted = config;
    out.shifted.occupied = an.shifted_config(config.occupied, s);
    const Board256 gained = an.gained_set(s);
    out.augmented = config;
    out.augmented.occupied = out.shifted.occupied | gained;
    gained.for_each_bit([&](unsigned b) { out.gained.push_back(g.vertex(b)); });
    return out;
}

BoxConfig reconstruct(const BoxConfig& j, Direction s, const Contour& contour) {
    Geometry g(j.n, j.m);
    Analyzer an(&g);
    an.interior = contour.interior;
    const Board256 gained = an.gained_set(s);
    const Board256 S = j.occupied & gained;
    const Board256 Is = j.occupied.andnot(S);
    BoxConfig out = j;
    out.occupied = an.unshift_config(Is, s);
    // consistency: shifting forward must reproduce J minus S, and the
    // recovered configuration must be a valid m-odd starting point
    if (!(an.shifted_config(out.occupied, s) == Is) ||
        !g.independent_with_boundary(out.occupied) ||
        (out.occupied & g.modd_forbidden).any())
        throw std::invalid_argument("reconstruct: J is not of the form I_s plus gained vertices");
    return out;
}

// ---- sweep ----

const std::array<const char*, SweepReport::kChecks> SweepReport::kCheckNames = {
    "m_odd_structure",     "dual_construction",   "single_cycle",   "length_mod_4",
    "length_at_least_2sqrt2_m", "edge_parity",    "square_rule",    "turn_parity",
    "cut_walk_is_taxi",    "interior_separation", "shift_lemma",    "shift_homogeneous",
    "shift_m_even",        "reconstruction",
};

SweepReport run_contour_sweep(const SweepOptions& options) {
    Geometry g(options.n, options.m);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<unsigned> cells;
    g.free_cells.for_each_bit([&](unsigned b) { cells.push_back(b); });
    std::vector<Board256> nbr_masks(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Board256 one;
        one.set(cells[i]);
        nbr_masks[i] = g.neighbors(one) | one;
    }

    SweepReport report;
    report.n = options.n;
    report.m = options.m;
    report.exhaustive = options.exhaustive;

    std::vector<SweepCounters> partials;
    if (options.exhaustive) {
        // split the assignment tree at a fixed depth for the workers
        const std::size_t split = std::min<std::size_t>(cells.size(), 14);
        struct Task {
            Board256 occ, blocked;
        };
        std::vector<Task> tasks;
        {
            std::function<void(std::size_t, Board256, Board256)> rec =
                [&](std::size_t idx, Board256 occ, Board256 blocked) {
                    if (idx == split) {
                        tasks.push_back({occ, blocked});
                        return;
                    }
                    rec(idx + 1, occ, blocked);
                    if (!blocked.test(cells[idx])) {
                        Board256 o = occ;
                        o.set(cells[idx]);
                        rec(idx + 1, o, blocked | nbr_masks[idx]);
                    }
                };
            rec(0, Board256{}, Board256{});
        }
        const unsigned jobs = std::max(1u, options.jobs);
        partials.resize(jobs == 1 ? 1 : jobs);
        std::vector<Analyzer> analyzers;
        analyzers.reserve(partials.size());
        for (std::size_t i = 0; i < partials.size(); ++i) analyzers.emplace_back(&g);
        parallel_for_index(tasks.size(), jobs, [&](std::size_t ti, unsigned worker) {
            Analyzer& an = analyzers[worker];
            SweepCounters& counters = partials[worker];
            std::function<void(std::size_t, Board256, Board256)> rec =
                [&](std::size_t idx, Board256 occ, Board256 blocked) {
                    if (idx == cells.size()) {
                        analyze_config(an, g, occ, options.full_reconstruction_stride, counters);
                        return;
                    }
                    rec(idx + 1, occ, blocked);
                    if (!blocked.test(cells[idx])) {
                        Board256 o = occ;
                        o.set(cells[idx]);
                        rec(idx + 1, o, blocked | nbr_masks[idx]);
                    }
                };
            rec(split, tasks[ti].occ, tasks[ti].blocked);
        });
    } else {
        const unsigned jobs = std::max(1u, options.jobs);
        partials.resize(jobs == 1 ? 1 : jobs);
        std::vector<Analyzer> analyzers;
        analyzers.reserve(partials.size());
        for (std::size_t i = 0; i < partials.size(); ++i) analyzers.emplace_back(&g);
        parallel_for_index(options.samples, jobs, [&](std::size_t si, unsigned worker) {
            // deterministic per-sample stream regardless of worker assignment
            std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ull + si);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            Board256 occ;
            for (int attempt = 0; attempt < 100000; ++attempt) {
                occ = Board256{};
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (unit(rng) < 0.15) occ.set(cells[i]);
                if (g.independent_with_boundary(occ)) break;
                occ = Board256{};
            }
            analyze_config(analyzers[worker], g, occ, options.full_reconstruction_stride,
                           partials[worker]);
        });
    }

    for (const SweepCounters& c : partials) {
        report.configs += c.configs;
        for (int i = 0; i < SweepReport::kChecks; ++i) report.failures[i] += c.failures[i];
        for (const auto& [len, cnt] : c.hist) report.contour_length_histogram[len] += cnt;
    }
    // deterministic counterexample: lexicographically smallest across workers
    const SweepCounters* best = nullptr;
    for (const SweepCounters& c : partials) {
        if (!c.have_counterexample) continue;
        if (!best || std::lexicographical_compare(c.counterexample.w.begin(),
                                                  c.counterexample.w.end(),
                                                  best->counterexample.w.begin(),
                                                  best->counterexample.w.end()))
            best = &c;
    }
    if (best) {
        std::vector<Vertex> verts;
        best->counterexample.for_each_bit([&](unsigned b) { verts.push_back(g.vertex(b)); });
        report.counterexample = std::move(verts);
        report.counterexample_check = SweepReport::kCheckNames[best->counterexample_check];
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---- Peierls tail ----

TailResult peierls_tail(const TailParams& params) {
    if (!(params.mu > 1.0)) throw std::invalid_argument("peierls_tail: mu must exceed 1");
    const double r = std::pow(params.mu, 4) / (1.0 + params.lambda);
    if (!(r < 1.0)) throw std::domain_error("peierls_tail: divergent (mu^4 >= 1 + lambda)");
    TailResult out;
    out.ratio = r;
    out.first_term = static_cast<unsigned>(std::ceil(std::sqrt(2.0) * params.m / 2.0));
    out.tail = std::pow(r, out.first_term) / (1.0 - r);
    out.below_one_third = out.tail < 1.0 / 3.0;
    return out;
}

unsigned minimal_m_for_tail(double mu, double lambda) {
    for (unsigned m = 0; m <= 1u << 20; ++m) {
        TailResult t = peierls_tail({mu, lambda, m});
        if (t.below_one_third) return m;
    }
    throw std::domain_error("minimal_m_for_tail: no m up to 2^20 suffices");
}

}  // namespace taxi
