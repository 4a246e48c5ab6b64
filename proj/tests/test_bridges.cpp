#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "taxi/bridges.hpp"
#include "taxi/walks.hpp"

using namespace taxi;

// Frozen from the brute-force oracle (also re-checked below).
static const std::vector<unsigned long> kB = {1, 1, 1, 1, 2, 3, 5, 7, 11, 16, 25, 37, 57, 86, 132};
static const std::vector<long> kA = {0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1};

TEST_CASE("bridge counts: conventions and small values") {
    CHECK(count_bridges(0) == 1);
    CHECK(count_bridges(1) == 1);
    const CountTable b = count_bridges_table(14, 2);
    for (unsigned n = 0; n <= 14; ++n) {
        CHECK(b.at(n) == kB[n]);
        CHECK(b.at(n) == oracle::count_bridges(n));
    }
}

TEST_CASE("is_bridge matches the oracle predicate on all short walks") {
    std::vector<std::vector<Vertex>> walks;
    oracle::enum_taxi_walks(8, walks);
    for (const auto& p : walks)
        CHECK(is_bridge(TaxiWalk::from_vertices(p)) == oracle::is_bridge_path(p));
}

TEST_CASE("supermultiplicativity and domination by walk counts") {
    const CountTable b = count_bridges_table(20, 2);
    const CountTable c = count_taxi_walks_table(20, 2);
    for (unsigned n = 1; n <= 19; ++n)
        for (unsigned m = 1; n + m <= 20; ++m) CHECK(b.at(n + m) >= b.at(n) * b.at(m));
    for (unsigned n = 0; n <= 20; ++n) CHECK(b.at(n) <= c.at(n));
}

TEST_CASE("series inversion equals direct irreducible enumeration") {
    const CountTable b = count_bridges_table(14, 2);
    const CountTable a = irreducible_from_bridges(b);
    CHECK(a.at(0) == 0);
    for (unsigned n = 1; n <= 14; ++n) {
        CHECK(a.at(n) == kA[n]);
        CHECK(a.at(n) == enumerate_irreducible_bridges(n));
        CHECK(a.at(n) >= 0);
    }
    SUBCASE("two-step bridge is reducible") { CHECK(enumerate_irreducible_bridges(2) == 0); }
    SUBCASE("B(x) * (1 - A(x)) == 1 exactly") {
        IntSeries B(std::vector<mpz_class>(b.values().begin(), b.values().end()));
        IntSeries A(std::vector<mpz_class>(a.values().begin(), a.values().end()));
        const IntSeries prod = B.mul(A.sub_from_one());
        CHECK(prod[0] == 1);
        for (unsigned k = 1; k <= prod.order(); ++k) CHECK(prod[k] == 0);
    }
    SUBCASE("all-ones bridge sequence inverts to A(x) = x") {
        CountTable ones("b");
        for (unsigned n = 0; n <= 10; ++n) ones.set(n, 1);
        const CountTable ai = irreducible_from_bridges(ones);
        CHECK(ai.at(1) == 1);
        for (unsigned n = 2; n <= 10; ++n) CHECK(ai.at(n) == 0);
    }
    SUBCASE("rejects b_0 != 1") {
        CountTable bad("b");
        bad.set(0, 2);
        bad.set(1, 1);
        CHECK_THROWS_AS(irreducible_from_bridges(bad), std::invalid_argument);
    }
}

TEST_CASE("bridge lower bound digits") {
    const CountTable b = count_bridges_table(14, 2);
    CHECK(bridge_lower_bound(b, 1).value() == "1.00000");
    CHECK(bridge_lower_bound(b, 5).value() == "1.24573");
    CHECK(bridge_lower_bound(b, 10).value() == "1.37972");
    CHECK(bridge_lower_bound(b, 14).value() == "1.41732");
    CHECK_FALSE(bridge_lower_bound(b, 14).is_upper);
}

TEST_CASE("irreducible lower bound") {
    SUBCASE("a_1 = 2 alone has root 1/2") {
        CountTable a("a");
        a.set(0, 0);
        a.set(1, 2);
        const IrreducibleBound r = irreducible_lower_bound(a);
        const double x = mpq_class(r.x_star).get_d();
        CHECK(x == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(r.report.value_approx() == doctest::Approx(2.0).epsilon(1e-4));
        CHECK(r.report.value_approx() <= 2.0);  // sound side of the root
    }
    SUBCASE("frozen value at N=14") {
        const CountTable b = count_bridges_table(14, 1);
        const CountTable a = irreducible_from_bridges(b);
        const IrreducibleBound r = irreducible_lower_bound(a);
        CHECK(r.report.value() == "1.51420");
    }
    SUBCASE("bound from desk-scale truncation lies in the expected window") {
        const CountTable b = count_bridges_table(20, 2);
        const CountTable a = irreducible_from_bridges(b);
        const IrreducibleBound r = irreducible_lower_bound(a);
        CHECK(r.report.value_approx() > 1.51);
        CHECK(r.report.value_approx() < 1.56);
    }
    SUBCASE("monotone in the truncation order") {
        const CountTable b = count_bridges_table(22, 2);
        mpz_class prev = 0;
        for (unsigned N = 6; N <= 22; N += 4) {
            CountTable btrunc("b");
            for (unsigned n = 0; n <= N; ++n) btrunc.set(n, b.at(n));
            const CountTable a = irreducible_from_bridges(btrunc);
            const IrreducibleBound r = irreducible_lower_bound(a);
            CHECK(r.report.value_scaled >= prev - 1);  // one ulp of bisection slack
            prev = r.report.value_scaled;
        }
    }
    SUBCASE("error when the sum never exceeds one") {
        CountTable a("a");
        a.set(0, 0);
        a.set(1, 1);  // sum = x <= 1 on (0,1], never strictly above
        CHECK_THROWS_AS(irreducible_lower_bound(a), std::domain_error);
    }
    SUBCASE("rejects negative coefficients") {
        CountTable a("a");
        a.set(0, 0);
        a.set(1, -1);
        CHECK_THROWS_AS(irreducible_lower_bound(a), std::invalid_argument);
    }
}
