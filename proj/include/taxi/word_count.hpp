#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "taxi/bound_report.hpp"

namespace taxi {

// A reduced set of forbidden factors over the alphabet {s,t}: no word is a
// factor of another (dropping dominated words provably leaves the avoiding
// counts unchanged).
class MistakeSet {
  public:
    MistakeSet() = default;

    // Reduces, sorts and deduplicates. Words must be nonempty strings over {s,t}.
    static MistakeSet reduce(std::vector<std::string> words);

    // {tt} plus all taxi-polygon words of length <= polygon_max.
    static MistakeSet taxi_mistakes(unsigned polygon_max, unsigned jobs = 1);

    const std::vector<std::string>& words() const { return words_; }
    bool empty() const { return words_.empty(); }

  private:
    std::vector<std::string> words_;
};

// Factor-matching automaton over {s,t} (failure-link construction); states
// that complete any mistake are dead. Counting paths that avoid dead states
// gives the avoiding-word counts as an exact linear recurrence.
class FactorAutomaton {
  public:
    explicit FactorAutomaton(const MistakeSet& mistakes);

    std::size_t state_count() const { return next_.size(); }

    // Number of words of length n over {s,t} containing no mistake factor.
    mpz_class count_avoiding(unsigned n) const;

    // Counts for all lengths 0..n in one sweep.
    std::vector<mpz_class> count_avoiding_upto(unsigned n) const;

  private:
    std::vector<std::array<std::int32_t, 2>> next_;
    std::vector<std::uint8_t> dead_;
};

// Primary engine (automaton).
mpz_class count_avoiding_words(const MistakeSet& mistakes, unsigned n);

// Cross-check engine: Goulden-Jackson cluster method, evaluated order by
// order with exact integer coefficients. Intended for modest n and mistake
// sets; must agree with the automaton everywhere.
mpz_class count_avoiding_words_gj(const MistakeSet& mistakes, unsigned n);

// mu <= l_n^{1/n} with mistakes {tt} + polygons of length <= polygon_max,
// rounded up.
BoundReport gj_upper_bound(unsigned polygon_max, unsigned n, unsigned jobs = 1,
                           unsigned decimals = 5);
BoundReport gj_upper_bound(const MistakeSet& mistakes, unsigned n, std::string parameters,
                           unsigned decimals = 5);

}  // namespace taxi
