#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "taxi/series.hpp"

using namespace taxi;

TEST_CASE("inverse of 1/(1-x) is 1-x") {
    IntSeries b(std::vector<mpz_class>{1, 1, 1, 1, 1, 1});
    const IntSeries inv = b.inverse();
    CHECK(inv[0] == 1);
    CHECK(inv[1] == -1);
    for (unsigned k = 2; k <= 5; ++k) CHECK(inv[k] == 0);
}

TEST_CASE("series times its inverse is one") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<mpz_class> c(12);
        c[0] = rng() % 2 ? 1 : -1;
        for (unsigned i = 1; i < c.size(); ++i) c[i] = coeff(rng);
        IntSeries s(c);
        const IntSeries prod = s.mul(s.inverse());
        CHECK(prod[0] == 1);
        for (unsigned k = 1; k <= prod.order(); ++k) CHECK(prod[k] == 0);
    }
}

TEST_CASE("inverse requires unit constant term") {
    CHECK_THROWS_AS(IntSeries(std::vector<mpz_class>{2, 1}).inverse(), std::invalid_argument);
    CHECK_THROWS_AS(IntSeries(std::vector<mpz_class>{0, 1}).inverse(), std::invalid_argument);
}

TEST_CASE("sub_from_one") {
    IntSeries s(std::vector<mpz_class>{1, 4, -2});
    const IntSeries r = s.sub_from_one();
    CHECK(r[0] == 0);
    CHECK(r[1] == -4);
    CHECK(r[2] == 2);
}
