#include "taxi/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "taxi/walk_dfs.hpp"

namespace taxi {

namespace {

// Lexicographically ordered encoding keys of all length-m walks, plus the
// key -> index map.
struct WalkIndex {
    std::vector<std::uint64_t> keys;
    std::unordered_map<std::uint64_t, std::uint32_t> index;

    explicit WalkIndex(unsigned m) {
        if (m == 0) {
            keys.push_back(0);
            index.emplace(0, 0);
            return;
        }
        enumerate_taxi_walks(m, [&](const TaxiWalk& w) { keys.push_back(w.encoding_key()); });
        for (std::uint32_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], i);
    }
};

std::uint64_t key_of_path(std::span<const Vertex> path, std::span<const Direction> dirs) {
    // dirs[d] is the direction of step d (1-based); path has length()+1 entries
    std::uint64_t key = dirs[1] == Direction::E ? 1u : 0u;
    for (std::size_t d = 2; d < path.size(); ++d) {
        key <<= 1;
        key |= is_vertical(dirs[d]) != is_vertical(dirs[d - 1]) ? 1u : 0u;
    }
    return key;
}

struct MatrixAccumulator {
    unsigned m, n;
    const WalkIndex* idx;
    const std::vector<std::uint32_t>* perm;
    std::vector<std::uint64_t> dense;  // dim*dim
    std::uint32_t dim;

    MatrixAccumulator(unsigned m_, unsigned n_, const WalkIndex* idx_,
                      const std::vector<std::uint32_t>* perm_)
        : m(m_), n(n_), idx(idx_), perm(perm_), dim(static_cast<std::uint32_t>(idx_->keys.size())) {
        dense.assign(std::size_t(dim) * dim, 0);
    }

    bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
    void enter(const WalkDfsState& st, unsigned depth) {
        if (depth != n) return;
        std::uint32_t i, j;
        if (m == 0) {
            i = j = 0;
        } else {
            const std::uint64_t pkey =
                key_of_path(std::span(st.path).subspan(0, m + 1), std::span(st.dirs));
            // terminal segment, mapped to the origin by the symmetry anchored
            // at its first vertex
            const Vertex anchor = st.path[n - m];
            const Symmetry f(anchor);
            std::array<Vertex, 64> img;
            for (unsigned k = 0; k <= m; ++k) img[k] = f.apply(st.path[n - m + k]);
            std::array<Direction, 64> idirs;
            for (unsigned k = 1; k <= m; ++k) {
                const int dx = img[k].x - img[k - 1].x, dy = img[k].y - img[k - 1].y;
                idirs[k] = dx == 1 ? Direction::E
                         : dx == -1 ? Direction::W
                         : dy == 1 ? Direction::N
                                   : Direction::S;
            }
            const std::uint64_t skey = key_of_path(std::span<const Vertex>(img.data(), m + 1),
                                                   std::span<const Direction>(idirs.data(), m + 1));
            i = idx->index.at(pkey);
            j = idx->index.at(skey);
        }
        if (perm) {
            i = (*perm)[i];
            j = (*perm)[j];
        }
        ++dense[std::size_t(i) * dim + j];
    }
    void leave(const WalkDfsState&, unsigned) {}
};

constexpr unsigned kPrefixDepth = 12;

}  // namespace

mpz_class TransferMatrix::total() const {
    mpz_class t = 0;
    for (std::uint64_t e : entries) t += mpz_class(static_cast<unsigned long>(e));
    return t;
}

void TransferMatrix::save_csv(const std::filesystem::path& path) const {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << "i,j,count\n";
        for (std::uint32_t i = 0; i < dim; ++i)
            for (std::uint32_t j = 0; j < dim; ++j)
                if (at(i, j) != 0) out << i << ',' << j << ',' << at(i, j) << '\n';
    }
    fs::rename(tmp, path);
}

TransferMatrix build_transfer_matrix(unsigned m, unsigned n, unsigned jobs,
                                     const std::vector<std::uint32_t>* index_permutation) {
    if (m >= n) throw std::invalid_argument("build_transfer_matrix needs 0 <= m < n");
    if (m >= 60) throw std::invalid_argument("prefix length too large");
    WalkIndex idx(m);
    if (index_permutation && index_permutation->size() != idx.keys.size())
        throw std::invalid_argument("index permutation has wrong size");

    TransferMatrix out;
    out.m = m;
    out.n = n;
    out.dim = static_cast<std::uint32_t>(idx.keys.size());

    if (jobs <= 1 || n <= kPrefixDepth + 2) {
        MatrixAccumulator acc(m, n, &idx, index_permutation);
        walk_dfs(acc, n);
        out.entries = std::move(acc.dense);
        return out;
    }

    std::vector<std::vector<Direction>> prefixes;
    {
        struct Collector {
            unsigned depth;
            std::vector<std::vector<Direction>>* out;
            bool admit(const WalkDfsState&, Vertex, unsigned, bool) const { return true; }
            void enter(const WalkDfsState& st, unsigned d) {
                if (d == depth) out->emplace_back(st.dirs.begin() + 1, st.dirs.begin() + 1 + d);
            }
            void leave(const WalkDfsState&, unsigned) {}
        } coll{kPrefixDepth, &prefixes};
        walk_dfs(coll, kPrefixDepth);
    }
    out.entries.assign(std::size_t(out.dim) * out.dim, 0);
    std::mutex merge_mutex;
    parallel_for_index(prefixes.size(), jobs, [&](std::size_t i, unsigned) {
        WalkDfsState st(n);
        MatrixAccumulator acc(m, n, &idx, index_permutation);
        walk_dfs_subtree(st, acc, prefixes[i], n);
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t k = 0; k < out.entries.size(); ++k) out.entries[k] += acc.dense[k];
    });
    return out;
}

EigenvalueBound dominant_eigenvalue_upper(const TransferMatrix& M, unsigned iters, double tol) {
    const std::uint32_t dim = M.dim;
    if (dim == 0) throw std::invalid_argument("empty matrix");
    constexpr double kFloor = 1e-250;  // keeps v strictly positive; only loosens the bound

    std::vector<double> v(dim, 1.0), w(dim, 0.0), best_v(dim, 1.0);
    double best_ratio = std::numeric_limits<double>::infinity();
    double prev_ratio = std::numeric_limits<double>::infinity();
    unsigned used = 0;
    for (unsigned it = 0; it < iters; ++it) {
        double maxratio = 0.0, maxw = 0.0;
        for (std::uint32_t i = 0; i < dim; ++i) {
            double acc = 0.0;
            const std::uint64_t* row = &M.entries[std::size_t(i) * dim];
            for (std::uint32_t j = 0; j < dim; ++j) acc += static_cast<double>(row[j]) * v[j];
            w[i] = acc;
            maxratio = std::max(maxratio, acc / v[i]);
            maxw = std::max(maxw, acc);
        }
        ++used;
        if (maxratio < best_ratio) {
            best_ratio = maxratio;
            best_v = v;
        }
        if (maxw == 0.0) break;  // zero matrix; ones already witness 0
        for (std::uint32_t i = 0; i < dim; ++i) v[i] = std::max(w[i] / maxw, kFloor);
        if (it > 4 && std::isfinite(maxratio) &&
            std::abs(maxratio - prev_ratio) <= tol * std::max(1.0, maxratio))
            break;
        prev_ratio = maxratio;
    }

    // Exact certification at best_v: scale to positive integers and take the
    // max ratio of (M v)_i / v_i as an exact fraction.
    std::vector<mpz_class> vi(dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
        const double scaled = std::floor(best_v[i] * 9007199254740992.0);  // 2^53
        vi[i] = scaled >= 1.0 ? mpz_class(scaled) : mpz_class(1);
    }
    EigenvalueBound out;
    out.num = 0;
    out.den = 1;
    mpz_class rowacc;
    for (std::uint32_t i = 0; i < dim; ++i) {
        rowacc = 0;
        const std::uint64_t* row = &M.entries[std::size_t(i) * dim];
        for (std::uint32_t j = 0; j < dim; ++j) {
            if (row[j] == 0) continue;
            mpz_class term = vi[j];
            term *= static_cast<unsigned long>(row[j]);
            rowacc += term;
        }
        // rowacc / vi[i] > num/den ?
        if (rowacc * out.den > out.num * vi[i]) {
            out.num = rowacc;
            out.den = vi[i];
        }
    }
    out.iterations_estimate = best_ratio;
    out.iterations = used;
    return out;
}

BoundReport alm_upper_bound(const TransferMatrix& M, unsigned decimals, unsigned iters) {
    const EigenvalueBound ev = dominant_eigenvalue_upper(M, iters);
    if (ev.num == 0) throw std::domain_error("alm_upper_bound: zero matrix");
    return BoundReport::from_root("alm", true, ev.num, ev.den, M.n - M.m,
                                  "m=" + std::to_string(M.m) + ",n=" + std::to_string(M.n),
                                  decimals);
}

BoundReport alm_upper_bound(unsigned m, unsigned n, unsigned jobs, unsigned decimals,
                            unsigned iters) {
    return alm_upper_bound(build_transfer_matrix(m, n, jobs), decimals, iters);
}

}  // namespace taxi
