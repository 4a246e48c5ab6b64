#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "taxi/bound_report.hpp"
#include "taxi/walks.hpp"

namespace taxi {

// Dense nonnegative matrix over length-m walk indices: entry (i,j) counts
// the taxi walks of length n whose length-m prefix has index i and whose
// canonically-mapped terminal length-m segment has index j. Indices follow
// the lexicographic (first-step, turn-word) order of length-m walks; the
// resulting bound is ordering-invariant. m = 0 degenerates to the single
// empty prefix/suffix, recovering the subadditivity bound.
struct TransferMatrix {
    unsigned m = 0;
    unsigned n = 0;
    std::uint32_t dim = 0;
    std::vector<std::uint64_t> entries;  // row-major, dim*dim

    std::uint64_t& at(std::uint32_t i, std::uint32_t j) { return entries[std::size_t(i) * dim + j]; }
    std::uint64_t at(std::uint32_t i, std::uint32_t j) const { return entries[std::size_t(i) * dim + j]; }
    mpz_class total() const;

    // CSV triples "i,j,count" for the nonzero entries.
    void save_csv(const std::filesystem::path& path) const;
};

// One pass over all length-n taxi walks. `index_permutation`, when given,
// relabels the walk indices (used to property-test ordering invariance).
TransferMatrix build_transfer_matrix(unsigned m, unsigned n, unsigned jobs = 1,
                                     const std::vector<std::uint32_t>* index_permutation = nullptr);

struct EigenvalueBound {
    mpz_class num;  // certified upper bound on the spectral radius, num/den
    mpz_class den;
    double iterations_estimate = 0.0;  // best double-precision max-ratio seen
    unsigned iterations = 0;
};

// Certified upper bound on the largest positive eigenvalue via the
// Collatz-Wielandt inequality: for any strictly positive v,
// spectral radius <= max_i (Mv)_i / v_i. Power iteration (in doubles,
// entries floored at a tiny epsilon so v stays positive) picks a good v;
// the returned ratio is then recomputed exactly over integers.
EigenvalueBound dominant_eigenvalue_upper(const TransferMatrix& M, unsigned iters = 200,
                                          double tol = 1e-14);

// mu <= lambda_1(A(m,n))^{1/(n-m)}, rounded up.
BoundReport alm_upper_bound(unsigned m, unsigned n, unsigned jobs = 1, unsigned decimals = 5,
                            unsigned iters = 200);
BoundReport alm_upper_bound(const TransferMatrix& M, unsigned decimals = 5, unsigned iters = 200);

}  // namespace taxi
