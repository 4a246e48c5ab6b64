#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "taxi/transfer_matrix.hpp"
#include "taxi/walks.hpp"

using namespace taxi;

TEST_CASE("entry totals equal walk counts") {
    const CountTable& ref = reference_walk_counts();
    SUBCASE("m=1, n=2") {
        const TransferMatrix M = build_transfer_matrix(1, 2);
        CHECK(M.dim == 2);
        CHECK(M.total() == ref.at(2));
    }
    SUBCASE("m=2, n=4") {
        const TransferMatrix M = build_transfer_matrix(2, 4);
        CHECK(M.dim == 4);
        CHECK(M.total() == 10);
    }
    SUBCASE("m=4, n=12") {
        const TransferMatrix M = build_transfer_matrix(4, 12, 2);
        CHECK(M.dim == ref.at(4).get_ui());
        CHECK(M.total() == ref.at(12));
    }
    SUBCASE("parallel build matches sequential") {
        const TransferMatrix a = build_transfer_matrix(3, 15, 1);
        const TransferMatrix b = build_transfer_matrix(3, 15, 4);
        CHECK(a.entries == b.entries);
    }
}

TEST_CASE("collatz-wielandt bound on small explicit matrices") {
    SUBCASE("identity") {
        TransferMatrix M;
        M.m = 1;
        M.n = 2;
        M.dim = 3;
        M.entries = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        const EigenvalueBound ev = dominant_eigenvalue_upper(M, 50);
        CHECK(mpq_class(ev.num, ev.den).get_d() == doctest::Approx(1.0));
    }
    SUBCASE("diagonal [2,1] converges to 2") {
        TransferMatrix M;
        M.m = 1;
        M.n = 2;
        M.dim = 2;
        M.entries = {2, 0, 0, 1};
        const EigenvalueBound ev = dominant_eigenvalue_upper(M, 200);
        const double bound = mpq_class(ev.num, ev.den).get_d();
        CHECK(bound >= 2.0);  // always an upper bound
        CHECK(bound == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("certified bound dominates the spectral radius witness") {
        // random nonnegative matrices: upper >= (max_i min ratio) at ones
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> entry(0, 6);
        for (int rep = 0; rep < 30; ++rep) {
            TransferMatrix M;
            M.m = 1;
            M.n = 2;
            M.dim = 5;
            M.entries.resize(25);
            bool nonzero = false;
            for (auto& e : M.entries) {
                e = static_cast<std::uint64_t>(entry(rng));
                nonzero |= e != 0;
            }
            if (!nonzero) M.entries[0] = 1;
            const EigenvalueBound ev = dominant_eigenvalue_upper(M, 100);
            // Collatz-Wielandt lower witness at the all-ones vector
            std::uint64_t minrow = UINT64_MAX;
            for (int i = 0; i < 5; ++i) {
                std::uint64_t row = 0;
                for (int j = 0; j < 5; ++j) row += M.entries[i * 5 + j];
                minrow = std::min(minrow, row);
            }
            CHECK(mpq_class(ev.num, ev.den).get_d() >= static_cast<double>(minrow) - 1e-9);
        }
    }
}

TEST_CASE("alm bound behaviour") {
    SUBCASE("m=0 recovers the subadditivity bound") {
        const TransferMatrix M = build_transfer_matrix(0, 12);
        REQUIRE(M.dim == 1);
        CHECK(M.total() == 460);
        const BoundReport alm = alm_upper_bound(M);
        const BoundReport sub = subadditive_upper_bound(reference_walk_counts(), 12).primary;
        CHECK(alm.value_scaled == sub.value_scaled);
    }
    SUBCASE("A(2,12): (n-m)-th root lies between the lower bound and golden ratio") {
        const BoundReport b = alm_upper_bound(2, 12, 2);
        CHECK(b.value_approx() >= 1.5557);
        CHECK(b.value_approx() <= 1.61804);
    }
    SUBCASE("A(8,28) desk preset within the consistency window") {
        const BoundReport b = alm_upper_bound(8, 28, 2);
        CHECK(b.value_approx() > 1.5557);
        CHECK(b.value_approx() < 1.62);
        CHECK(b.is_upper);
    }
}

TEST_CASE("bound is invariant under a permuted walk ordering") {
    const TransferMatrix base = build_transfer_matrix(2, 6);
    std::vector<std::uint32_t> perm(base.dim);
    std::iota(perm.begin(), perm.end(), 0u);
    std::mt19937 rng(12345);
    std::shuffle(perm.begin(), perm.end(), rng);
    const TransferMatrix shuffled = build_transfer_matrix(2, 6, 1, &perm);
    CHECK(base.total() == shuffled.total());
    const BoundReport a = alm_upper_bound(base, 10);
    const BoundReport b = alm_upper_bound(shuffled, 10);
    CHECK(a.value() == b.value());  // identical to all 10 decimals
}

TEST_CASE("matrix CSV dump") {
    const TransferMatrix M = build_transfer_matrix(1, 3);
    const auto path = std::filesystem::temp_directory_path() / "taxi_test_matrix.csv";
    M.save_csv(path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "i,j,count");
    std::uint64_t total = 0;
    std::string line;
    while (std::getline(in, line)) {
        const auto c2 = line.rfind(',');
        total += std::stoull(line.substr(c2 + 1));
    }
    CHECK(total == 6);  // c_3
    std::filesystem::remove(path);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_transfer_matrix(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(build_transfer_matrix(5, 4), std::invalid_argument);
}
