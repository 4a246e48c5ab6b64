#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "taxi/contour.hpp"

using namespace taxi;

namespace {

std::vector<Vertex> odd_vertices_of_box(int r) {
    std::vector<Vertex> out;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            if (((x + y) & 1) != 0) out.push_back({x, y});
    return out;
}

BoxConfig minimal_config(int n = 3, int m = 1) {
    return BoxConfig::from_vertices(n, m, {});  // empty interior is m-odd
}

}  // namespace

TEST_CASE("augment") {
    SUBCASE("fully odd interior is already maximal") {
        const BoxConfig I = BoxConfig::from_vertices(3, 1, odd_vertices_of_box(2));
        REQUIRE(I.is_independent());
        REQUIRE(I.is_m_odd());
        const BoxConfig Ip = augment(I);
        CHECK(Ip.occupied == I.occupied);
    }
    SUBCASE("empty interior gains exactly the odd vertices of the inner box") {
        const BoxConfig I = minimal_config();
        const BoxConfig Ip = augment(I);
        const BoxConfig expect = BoxConfig::from_vertices(3, 1, odd_vertices_of_box(2));
        CHECK(Ip.occupied == expect.occupied);
    }
    SUBCASE("augmented set is independent and contains the original") {
        const BoxConfig I = BoxConfig::from_vertices(3, 1, {{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {2, 2}});
        REQUIRE(I.is_m_odd());
        const BoxConfig Ip = augment(I);
        CHECK(Ip.is_independent());
        CHECK((I.occupied.andnot(Ip.occupied)).none());
        // all odd vertices of U_m present
        for (const Vertex v : odd_vertices_of_box(1)) CHECK(Ip.test(v));
    }
    SUBCASE("rejects non-m-odd input") {
        const BoxConfig bad = BoxConfig::from_vertices(3, 1, {{0, 0}});  // neighbor of odd U_1
        CHECK_THROWS_AS(augment(bad), std::invalid_argument);
    }
}

TEST_CASE("contour of the minimal configuration") {
    const BoxConfig I = minimal_config();
    const Contour c = build_contour(I);
    CHECK(c.size() == c.gamma.size());
    CHECK(c.size() % 4 == 0);
    CHECK(static_cast<double>(c.size()) >= 2.0 * std::sqrt(2.0) * 1.0);
    SUBCASE("contour encircles the inner box") {
        for (int x = -1; x <= 1; ++x)
            for (int y = -1; y <= 1; ++y) {
                bool found = false;
                for (const Vertex v : c.interior_vertices())
                    if (v == Vertex{x, y}) found = true;
                CHECK(found);
            }
    }
    SUBCASE("every gamma edge points from interior to exterior") {
        const auto interior = c.interior_vertices();
        const std::set<Vertex> W(interior.begin(), interior.end());
        for (const auto& [u, v] : c.gamma) {
            CHECK(W.count(u) == 1);
            CHECK(W.count(v) == 0);
            CHECK(is_even_vertex(u));
            CHECK(!is_even_vertex(v));
        }
    }
    SUBCASE("cut-open contour is a taxi walk of length |Gamma|-1") {
        const TaxiWalk w = contour_to_taxi_walk(c);
        CHECK(w.valid());
        CHECK(w.length() == c.size() - 1);
    }
}

TEST_CASE("build_contour rejects invalid inputs") {
    CHECK_THROWS_AS(build_contour(BoxConfig::from_vertices(3, 1, {{0, 0}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_contour(BoxConfig::from_vertices(3, 1, {{0, 1}, {0, 2}})),
                    std::invalid_argument);  // not independent
}

TEST_CASE("shift and reconstruct on an explicit configuration") {
    const BoxConfig I = BoxConfig::from_vertices(3, 1, {{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {2, 2}});
    const Contour c = build_contour(I);
    int best_gain = 0;
    for (Direction s : {Direction::E, Direction::N, Direction::W, Direction::S}) {
        const ShiftResult r = shift(I, c, s);
        CHECK(r.shifted.occupied.count() == I.occupied.count());
        CHECK(r.shifted.is_independent());
        CHECK(r.augmented.is_independent());
        CHECK(r.augmented.is_m_even());
        CHECK(r.augmented.occupied.count() ==
              r.shifted.occupied.count() + static_cast<int>(r.gained.size()));
        // gained vertices are disjoint from the shifted configuration
        for (const Vertex v : r.gained) CHECK(!r.shifted.test(v));
        best_gain = std::max(best_gain, static_cast<int>(r.gained.size()));

        // round trips over every subset of the gained set
        const std::vector<Vertex>& gained = r.gained;
        REQUIRE(gained.size() <= 14);
        for (std::uint32_t mask = 0; mask < (1u << gained.size()); ++mask) {
            BoxConfig J = r.shifted;
            for (std::size_t k = 0; k < gained.size(); ++k)
                if ((mask >> k) & 1) J.set(gained[k]);
            const BoxConfig back = reconstruct(J, s, c);
            CHECK(back.occupied == I.occupied);
        }
    }
    CHECK(4 * best_gain >= static_cast<int>(c.size()));
}

TEST_CASE("reconstruct flags a malformed J") {
    const BoxConfig I = minimal_config();
    const Contour c = build_contour(I);
    const ShiftResult r = shift(I, c, Direction::E);
    BoxConfig bad = r.shifted;
    // occupy two adjacent exterior vertices: not of the form I_s + subset
    bad.set({3, 3});
    bad.set({3, 2});
    CHECK_THROWS_AS(reconstruct(bad, Direction::E, c), std::invalid_argument);
}

TEST_CASE("exhaustive sweep at n=2, m=1 passes everything") {
    SweepOptions opt;
    opt.n = 2;
    opt.m = 1;
    opt.exhaustive = true;
    opt.jobs = 2;
    opt.full_reconstruction_stride = 1;  // tiny space: exhaust every subset
    const SweepReport rep = run_contour_sweep(opt);
    CHECK(rep.configs > 0);
    INFO("configs: " << rep.configs);
    for (int i = 0; i < SweepReport::kChecks; ++i) {
        INFO("check " << SweepReport::kCheckNames[i]);
        CHECK(rep.failures[i] == 0);
    }
    for (const auto& [len, cnt] : rep.contour_length_histogram) {
        CHECK(len % 4 == 0);
        CHECK(len >= 3);  // 2*sqrt(2)*1
    }
}

TEST_CASE("sampled sweeps pass and are seed-deterministic") {
    for (const auto& [n, m, samples] : std::vector<std::tuple<int, int, int>>{
             {3, 1, 400}, {4, 1, 150}, {4, 2, 150}, {5, 2, 60}}) {
        SweepOptions opt;
        opt.n = n;
        opt.m = m;
        opt.exhaustive = false;
        opt.samples = samples;
        opt.seed = 7;
        opt.jobs = 2;
        const SweepReport a = run_contour_sweep(opt);
        INFO("n=" << n << " m=" << m);
        CHECK(a.configs == static_cast<std::uint64_t>(samples));
        for (int i = 0; i < SweepReport::kChecks; ++i) {
            INFO("check " << SweepReport::kCheckNames[i]);
            CHECK(a.failures[i] == 0);
        }
        const SweepReport b = run_contour_sweep(opt);
        CHECK(a.contour_length_histogram == b.contour_length_histogram);
    }
}

// The window (n=5, m=1) is wide enough for the contour to enclose occupied
// pockets ("holes" of the odd region). Shifting a pocket occupant can then
// break m-evenness, and for some directions even m-homogeneity, of I''_s.
// Everything else still holds there. Known explicit configuration kept as a
// regression anchor.
TEST_CASE("shift homogeneity can fail at n=5, m=1 (enclosed occupied pockets)") {
    SweepOptions opt;
    opt.n = 5;
    opt.m = 1;
    opt.exhaustive = false;
    opt.samples = 300;
    opt.seed = 7;
    opt.jobs = 2;
    const SweepReport rep = run_contour_sweep(opt);
    for (int i = 0; i < SweepReport::kChecks; ++i) {
        if (i == SweepReport::kShiftMEvenIndex || i == SweepReport::kShiftHomogeneousIndex)
            continue;
        INFO("check " << SweepReport::kCheckNames[i]);
        CHECK(rep.failures[i] == 0);
    }

    // explicit pocket configuration: (2,-2) is enclosed by the odd region
    const BoxConfig I = BoxConfig::from_vertices(
        5, 1,
        {{-3, -3}, {-4, -2}, {2, -2}, {4, -1}, {2, 1}, {5, 1}, {-4, 2}, {-2, 3}, {1, 3}, {-1, 4}, {1, 5}});
    REQUIRE(I.is_independent());
    REQUIRE(I.is_m_odd());
    const Contour c = build_contour(I);
    // the pocket occupant is inside the contour
    bool pocket_inside = false;
    for (const Vertex v : c.interior_vertices())
        if (v == Vertex{2, -2}) pocket_inside = true;
    CHECK(pocket_inside);
    int even_fail = 0, homog_fail = 0;
    for (Direction s : {Direction::E, Direction::N, Direction::W, Direction::S}) {
        const ShiftResult r = shift(I, c, s);
        CHECK(r.augmented.is_independent());
        if (!r.augmented.is_m_even()) ++even_fail;
        if (!r.augmented.is_m_even() && !r.augmented.is_m_odd()) ++homog_fail;
    }
    CHECK(even_fail == 2);   // directions N and W move the pocket next to U_1
    CHECK(homog_fail == 1);  // direction W breaks both parity conditions
}

TEST_CASE("peierls tail") {
    SUBCASE("r = 1/2 hand values, exactly") {
        // mu = 1.5 and lambda = 9.125 are exactly representable and give
        // r = 5.0625 / 10.125 = 1/2 exactly
        const TailParams p{1.5, 9.125, 2};  // L = ceil(sqrt2) = 2
        const TailResult t = peierls_tail(p);
        CHECK(t.ratio == 0.5);
        CHECK(t.first_term == 2);
        CHECK(t.tail == 0.5);  // exact in binary floating point
        CHECK_FALSE(t.below_one_third);
        const TailResult t3 = peierls_tail({1.5, 9.125, 3});  // L = ceil(3 sqrt2 / 2) = 3
        CHECK(t3.first_term == 3);
        CHECK(t3.tail == 0.25);
        CHECK(t3.below_one_third);
    }
    SUBCASE("closed form equals direct partial summation") {
        for (double mu : {1.2, 1.5, 1.58746, 1.7}) {
            for (double lambda_extra : {0.1, 0.5, 2.0}) {
                const double lambda = std::pow(mu, 4) - 1 + lambda_extra;
                for (unsigned m : {1u, 3u, 10u, 25u}) {
                    const TailResult t = peierls_tail({mu, lambda, m});
                    if (t.ratio > 0.99) continue;
                    double direct = 0.0, term = std::pow(t.ratio, t.first_term);
                    for (int k = 0; k < 20000 && term > 1e-300; ++k) {
                        direct += term;
                        term *= t.ratio;
                    }
                    CHECK(t.tail == doctest::Approx(direct).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("minimal m is finite for the headline parameters") {
        const unsigned m = minimal_m_for_tail(1.58746, 5.3506 + 0.1);
        CHECK(m > 0);
        CHECK(m < 100000);
        CHECK(peierls_tail({1.58746, 5.4506, m}).below_one_third);
        if (m > 0) CHECK_FALSE(peierls_tail({1.58746, 5.4506, m - 1}).below_one_third);
    }
    SUBCASE("divergence error when lambda <= mu^4 - 1") {
        CHECK_THROWS_AS(peierls_tail({1.6, std::pow(1.6, 4) - 1.0, 5}), std::domain_error);
        CHECK_THROWS_AS(peierls_tail({1.6, 1.0, 5}), std::domain_error);
    }
    SUBCASE("mu must exceed one") {
        CHECK_THROWS_AS(peierls_tail({0.9, 10.0, 5}), std::invalid_argument);
    }
}
