#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "taxi/count_table.hpp"
#include "taxi/walks.hpp"

using namespace taxi;

TEST_CASE("walk counts match the published table") {
    CHECK(count_taxi_walks(1) == 2);
    CHECK(count_taxi_walks(12) == 460);
    const CountTable t = count_taxi_walks_table(20, 2);
    const CountTable& ref = reference_walk_counts();
    for (unsigned n = 1; n <= 20; ++n) CHECK(t.at(n) == ref.at(n));
    CHECK(count_taxi_walks(0) == 1);
}

TEST_CASE("walk counts match the brute-force oracle") {
    for (unsigned n = 1; n <= 10; ++n)
        CHECK(count_taxi_walks(n) == oracle::count_taxi_walks(n));
}

TEST_CASE("parallel counting is deterministic") {
    const CountTable t1 = count_taxi_walks_table(22, 1);
    for (unsigned jobs : {2u, 3u, 8u}) {
        const CountTable tk = count_taxi_walks_table(22, jobs);
        for (unsigned n = 1; n <= 22; ++n) CHECK(t1.at(n) == tk.at(n));
    }
}

TEST_CASE("enumeration visits valid walks once in lexicographic order") {
    SUBCASE("n=1") {
        std::vector<TaxiWalk> got;
        enumerate_taxi_walks(1, [&](const TaxiWalk& w) { got.push_back(w); });
        REQUIRE(got.size() == 2);
        CHECK(got[0].first == Direction::N);
        CHECK(got[1].first == Direction::E);
        CHECK(got[0].vertices.back() == Vertex{0, 1});
        CHECK(got[1].vertices.back() == Vertex{1, 0});
    }
    SUBCASE("n=2 count") {
        int count = 0;
        enumerate_taxi_walks(2, [&](const TaxiWalk&) { ++count; });
        CHECK(count == 4);
    }
    SUBCASE("n=5: sixteen walks, valid, strictly increasing keys") {
        std::vector<std::uint64_t> keys;
        enumerate_taxi_walks(5, [&](const TaxiWalk& w) {
            CHECK(w.valid());
            CHECK(w.length() == 5);
            keys.push_back(w.encoding_key());
        });
        REQUIRE(keys.size() == 16);
        CHECK(std::is_sorted(keys.begin(), keys.end()));
        CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
    }
}

TEST_CASE("decode/encode round trip") {
    enumerate_taxi_walks(9, [&](const TaxiWalk& w) {
        const TaxiWalk d = TaxiWalk::decode(w.first, w.turn_word);
        CHECK(d.vertices == w.vertices);
        const TaxiWalk e = TaxiWalk::from_vertices(w.vertices);
        CHECK(e.first == w.first);
        CHECK(e.turn_word == w.turn_word);
    });
}

TEST_CASE("fibonacci bound") {
    CHECK(fibonacci_bound(1) == 2);
    CHECK(fibonacci_bound(4) == 10);
    CHECK(fibonacci_bound(12) == 466);
    // c_4 meets the bound with equality
    CHECK(count_taxi_walks(4) == fibonacci_bound(4));
}

TEST_CASE("count bounds: 2^ceil(n/2) <= c_n <= 2 f_{n+1}") {
    const CountTable t = count_taxi_walks_table(24, 2);
    for (unsigned n = 1; n <= 24; ++n) {
        mpz_class lower = 1;
        lower <<= (n + 1) / 2;
        CHECK(t.at(n) >= lower);
        CHECK(t.at(n) <= fibonacci_bound(n));
    }
}

TEST_CASE("submultiplicativity c_{n+m} <= c_n c_m") {
    const CountTable t = count_taxi_walks_table(22, 2);
    for (unsigned n = 1; n < 22; ++n)
        for (unsigned m = 1; n + m <= 22; ++m) CHECK(t.at(n + m) <= t.at(n) * t.at(m));
}

TEST_CASE("splitting a walk gives two taxi walks (injectively)") {
    std::vector<std::vector<Vertex>> walks;
    oracle::enum_taxi_walks(9, walks);
    const unsigned n = 4;
    std::set<std::pair<std::vector<Vertex>, std::vector<Vertex>>> seen;
    for (const auto& w : walks) {
        std::vector<Vertex> prefix(w.begin(), w.begin() + n + 1);
        std::vector<Vertex> suffix(w.begin() + n, w.end());
        const auto mapped = canonical_map(w[n], suffix);
        CHECK(TaxiWalk::from_vertices(prefix).valid());
        CHECK(TaxiWalk::from_vertices(mapped).valid());
        CHECK(seen.emplace(prefix, mapped).second);  // pair determines the walk
    }
}

TEST_CASE("subadditive upper bound digit strings") {
    const CountTable& ref = reference_walk_counts();
    SUBCASE("n=60 reproduces the published digits") {
        const auto bound = subadditive_upper_bound(ref, 60);
        CHECK(bound.primary.value() == "1.60574");
        CHECK(bound.primary.lambda_value() == "5.6482");
        CHECK(bound.primary.is_upper);
    }
    SUBCASE("n=1") {
        const auto bound = subadditive_upper_bound(ref, 1);
        CHECK(bound.primary.value() == "2.00000");
    }
    SUBCASE("n=12: exact directed rounding (460^{1/12} = 1.6668465...)") {
        const auto bound = subadditive_upper_bound(ref, 12);
        CHECK(bound.primary.value() == "1.66685");
    }
    SUBCASE("refined variant (c_{n+1}/2)^{1/n} is reported and tighter at 59") {
        const auto bound = subadditive_upper_bound(ref, 59);
        REQUIRE(bound.refined.has_value());
        CHECK(bound.refined->value() == "1.59977");
        CHECK(bound.refined->value_scaled < bound.primary.value_scaled);
    }
    SUBCASE("missing index throws") {
        CHECK_THROWS_AS(subadditive_upper_bound(ref, 61), std::out_of_range);
    }
}

TEST_CASE("count table CSV round trip") {
    const CountTable t = count_taxi_walks_table(10, 1);
    const auto path = std::filesystem::temp_directory_path() / "taxi_test_c.csv";
    t.save_csv(path);
    const CountTable r = CountTable::load_csv(path, "c");
    for (unsigned n = 0; n <= 10; ++n) CHECK(r.at(n) == t.at(n));
    std::filesystem::remove(path);
}
