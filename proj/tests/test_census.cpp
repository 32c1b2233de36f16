#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <utility>

#include "heiq/census.hpp"
#include "heiq/util.hpp"

using namespace heiq;

TEST_CASE("degree table for stable orders") {
    CHECK(good_pair(12).d == 5);
    CHECK(good_pair(15).d == 5);
    CHECK(good_pair(16).d == 7);
    CHECK(good_pair(22).d == 8);
    CHECK(good_pair(24).d == 11);
    CHECK(good_pair(34).d == 13);
    CHECK(good_pair(40).d == 19);
    CHECK(good_pair(58).d == 23);
    CHECK(good_pair(59).d == 23);
    CHECK(good_pair(60).d == 29);  // q = 5
    CHECK(good_pair(72).d == 31);  // q = 6
    CHECK(good_pair(84).d == 37);  // q = 7
    CHECK_THROWS_AS(good_pair(11), error);

    for (int n = 12; n <= 200; ++n) {
        GoodPair gp = good_pair(n);
        CHECK(good_pair_conditions(gp.n, gp.d));
        CHECK(2 * gp.d + 2 <= n);
        CHECK(n <= 3 * gp.d);
    }
}

TEST_CASE("orbit canonicalization") {
    auto ctx = make_field(3, 3);
    SECTION("trivial cases") {
        CHECK(orbit_canonical(*ctx, Subspace::zero(3, 3)) == Subspace::zero(3, 3));
        CHECK(orbit_canonical(*ctx, Subspace::full(3, 3)) == Subspace::full(3, 3));
    }
    SECTION("all 13 lines of GF(27) share one canonical form") {
        auto lines = enumerate_subspaces(3, 3, 1);
        REQUIRE(lines.size() == 13);
        std::set<std::vector<std::int64_t>> canon;
        for (const auto& l : lines) canon.insert(orbit_canonical(*ctx, l).basis.a);
        CHECK(canon.size() == 1);
    }
    SECTION("canonical form is an orbit member and idempotent") {
        Rng rng(kDefaultSeed);
        for (int trial = 0; trial < 10; ++trial) {
            Mat m(2, 3, 0);
            for (auto& v : m.a) v = rand_below(rng, 3);
            Subspace s = Subspace::from_generators(3, 3, m);
            Subspace c = orbit_canonical(*ctx, s);
            CHECK(oracle_orbit_test(*ctx, s, c));
            CHECK(orbit_canonical(*ctx, c) == c);
        }
    }
}

TEST_CASE("census bounds") {
    Rational lb = census_lower_bound(3, 5, 2);
    CHECK(lb.num == 729);
    CHECK(lb.den == 1210);
    Rational eff = census_effective_bound(3, 5, 2);
    CHECK(eff.num == 729 * 2);
    CHECK(eff.den == 1210);
    Rational lb0 = census_lower_bound(3, 4, 0);
    CHECK(lb0.num == 1);
    CHECK(lb0.den == 4 * 80);
}

TEST_CASE("census at (3, 3, 2): one orbit of 13 kernels") {
    CensusOptions opt;
    opt.validate_pairs = 6;
    CensusReport rep = run_census(3, 3, 2, opt);
    CHECK(rep.subspace_count == 13);
    CHECK(rep.orbit_count == 1);
    CHECK(rep.n == 8);
    CHECK(rep.stable_regime);  // (8, 3) satisfies the degree conditions
    REQUIRE(rep.orbits.size() == 1);
    CHECK(rep.orbits[0].size == 13);
    CHECK(rep.orbits[0].floor_m == 1);
    CHECK(rep.orbits[0].floor_d == 3);
    CHECK(rep.validated_pairs > 0);
}

TEST_CASE("census at (3, 2, 1): one orbit of 4 kernels, unstable") {
    CensusReport rep = run_census(3, 2, 1);
    CHECK(rep.subspace_count == 4);
    CHECK(rep.orbit_count == 1);
    CHECK_FALSE(rep.stable_regime);
    // floor collapses to the prime field here
    CHECK(rep.orbits[0].floor_m == 2);
    CHECK(rep.orbits[0].floor_d == 1);
}

TEST_CASE("census at (3, 4, 2): subfield kernels split off their own orbit") {
    // n = 10, d = 4 violates the degree conditions (2 divides 4), and indeed
    // the 10 kernels that are GF(9)-submodules of GF(81) collapse to the
    // floor H_2(GF(9)); the other 120 stay indigenous to H_1(GF(81))
    CensusReport rep = run_census(3, 4, 2);
    CHECK(rep.subspace_count == 130);
    CHECK(rep.orbit_count == 3);
    CHECK_FALSE(rep.stable_regime);
    std::multiset<std::uint64_t> sizes;
    std::multiset<std::pair<int, int>> floors;
    for (const auto& o : rep.orbits) {
        sizes.insert(o.size);
        floors.insert({o.floor_m, o.floor_d});
        CHECK((4 * 80) % o.size == 0);  // orbit-stabilizer
    }
    CHECK(sizes == std::multiset<std::uint64_t>{10, 40, 80});
    CHECK(floors == std::multiset<std::pair<int, int>>{{1, 4}, {1, 4}, {2, 2}});
}

TEST_CASE("prime-field scalars act trivially on subspaces") {
    auto ctx = make_field(3, 4);
    Rng rng(kDefaultSeed + 5);
    for (int trial = 0; trial < 10; ++trial) {
        Mat m(2, 4, 0);
        for (auto& v : m.a) v = rand_below(rng, 3);
        Subspace s = Subspace::from_generators(3, 4, m);
        for (std::int64_t c = 1; c < 3; ++c)
            CHECK(subspace_apply(s, mult_matrix(fe_from_int(*ctx, c))) == s);
    }
}

TEST_CASE("budget guards") {
    CensusOptions opt;
    opt.max_subspaces = 10;
    CHECK_THROWS_AS(run_census(3, 5, 2, opt), budget_error);
}
