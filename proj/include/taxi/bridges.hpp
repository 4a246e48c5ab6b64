#pragma once

#include <gmpxx.h>

#include <functional>

#include "taxi/bound_report.hpp"
#include "taxi/count_table.hpp"
#include "taxi/series.hpp"
#include "taxi/walks.hpp"

namespace taxi {

// A bridge is a taxi walk that starts (0,0)->(1,0), never returns to the
// y-axis, and ends with an x-parallel step onto a vertex of maximum
// x-coordinate (the maximum need not be unique). b_0 = 1 by convention.
bool is_bridge(const TaxiWalk& walk);

mpz_class count_bridges(unsigned n, unsigned jobs = 1);
CountTable count_bridges_table(unsigned max_n, unsigned jobs = 1);

// a_n from b_n by exact series inversion: A(x) = 1 - 1/B(x) truncated at
// the table order; requires b_0 = 1. a_0 = 0.
CountTable irreducible_from_bridges(const CountTable& b);

// Direct enumeration oracle: bridges of length n with no cutvertex. An
// internal vertex is a cutvertex when the walk up to it is a bridge, the
// next step is the positive x-step, and the remainder (canonically mapped)
// is a bridge again.
mpz_class enumerate_irreducible_bridges(unsigned n);

// b_n^{1/n}, rounded down: a valid lower bound by supermultiplicativity.
BoundReport bridge_lower_bound(const CountTable& b, unsigned n, unsigned decimals = 5);

struct IrreducibleBound {
    BoundReport report;
    mpq_class x_star;  // right bisection endpoint; sum a_n x*^n > 1 verified exactly
};

// Lower bound from irreducible bridges: bisect for the root of
// sum a_n x^n = 1 on (0,1), return 1/x* rounded down, where x* is the right
// endpoint (so the strict inequality certifying the bound holds exactly).
IrreducibleBound irreducible_lower_bound(const CountTable& a, double tol = 1e-12,
                                         unsigned decimals = 5);

}  // namespace taxi
