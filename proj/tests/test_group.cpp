#include <catch2/catch_amalgamated.hpp>

#include "heiq/group.hpp"
#include "heiq/util.hpp"

using namespace heiq;

namespace {

GroupElement random_element(Rng& rng, const Class2Group& g) {
    std::vector<std::int64_t> u(g.dim_v()), s(g.dim_w());
    for (auto& v : u) v = rand_below(rng, g.p());
    for (auto& v : s) v = rand_below(rng, g.p());
    return g.element(std::move(u), std::move(s));
}

}  // namespace

TEST_CASE("baer product basics") {
    auto ctx = make_field(3, 1);
    Class2Group g = heisenberg(1, *ctx);
    REQUIRE(g.dim_v() == 2);
    REQUIRE(g.dim_w() == 1);

    GroupElement e = g.element({1, 0}, {0});
    GroupElement f = g.element({0, 1}, {0});
    // (e;0)(f;0) = (e+f; ½·1) with ½ = 2 mod 3
    GroupElement prod = g.multiply(e, f);
    CHECK(prod.u == std::vector<std::int64_t>{1, 1});
    CHECK(prod.s == std::vector<std::int64_t>{2});

    // inverse is coordinate negation
    Rng rng(kDefaultSeed);
    for (int t = 0; t < 20; ++t) {
        GroupElement x = random_element(rng, g);
        CHECK(g.multiply(x, g.inverse(x)) == g.identity());
        CHECK(g.multiply(x, g.identity()) == x);
    }
}

TEST_CASE("associativity") {
    Rng rng(kDefaultSeed + 1);
    auto ctx9 = make_field(3, 2);
    for (const Class2Group& g : {heisenberg(1, *make_field(3, 1)), heisenberg(1, *ctx9), heisenberg(2, *make_field(3, 1))}) {
        for (int t = 0; t < 100; ++t) {
            GroupElement a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
            CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
        }
    }
}

TEST_CASE("powers") {
    Rng rng(kDefaultSeed + 2);
    Class2Group g = heisenberg(1, *make_field(3, 2));
    for (int t = 0; t < 20; ++t) {
        GroupElement x = random_element(rng, g);
        CHECK(g.power(x, 0) == g.identity());
        CHECK(g.power(x, 3) == g.identity());  // exponent p
        // e-fold product agrees with coordinate scaling up to 2p
        GroupElement acc = g.identity();
        for (int e = 1; e <= 6; ++e) {
            acc = g.multiply(acc, x);
            CHECK(g.power(x, e) == acc);
        }
    }
}

TEST_CASE("commutators match the four-fold product") {
    Rng rng(kDefaultSeed + 3);
    for (const Class2Group& g : {heisenberg(1, *make_field(3, 1)), heisenberg(1, *make_field(3, 2))}) {
        // [ (e;0), (f;0) ] = (0; j(e,f)) on all basis pairs
        for (int i = 0; i < g.dim_v(); ++i)
            for (int j = 0; j < g.dim_v(); ++j) {
                std::vector<std::int64_t> ui(g.dim_v(), 0), uj(g.dim_v(), 0);
                ui[i] = 1;
                uj[j] = 1;
                GroupElement a = g.element(ui, std::vector<std::int64_t>(g.dim_w(), 0));
                GroupElement b = g.element(uj, std::vector<std::int64_t>(g.dim_w(), 0));
                GroupElement lhs = g.commutator(a, b);
                GroupElement rhs = g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b));
                CHECK(lhs == rhs);
            }
        for (int t = 0; t < 100; ++t) {
            GroupElement a = random_element(rng, g), b = random_element(rng, g);
            GroupElement rhs = g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b));
            CHECK(g.commutator(a, b) == rhs);
            CHECK(g.commutator(a, a) == g.identity());
        }
    }
}

TEST_CASE("heisenberg orders and center") {
    Class2Group h1 = heisenberg(1, *make_field(3, 1));
    CHECK(h1.order() == 27);
    auto cert1 = center_and_derived(h1);
    CHECK(cert1.ok);
    CHECK(cert1.center.dim() == 1);   // center of order 3
    CHECK(cert1.derived == cert1.center);

    Class2Group h9 = heisenberg(1, *make_field(3, 2));
    CHECK(h9.order() == 729);  // 3^6

    Class2Group h2 = heisenberg(2, *make_field(3, 1));
    auto cert2 = center_and_derived(h2);
    CHECK(cert2.ok);
    CHECK(cert2.derived.dim() == 1);
    CHECK(cert2.center.dim() == 1);
}

TEST_CASE("certification failures") {
    PrimeField k{3};
    // abelian: zero tensor
    Class2Group abelian(3, PBimap(k, 2, 2, 1, BimapKind::alternating));
    auto cert = center_and_derived(abelian);
    CHECK_FALSE(cert.ok);
    CHECK(cert.violation.find("abelian") != std::string::npos);
    CHECK_THROWS_AS(extract_bimap(abelian), error);

    // degenerate summand: center strictly contains derived
    PBimap b(k, 4, 4, 1, BimapKind::alternating);
    b.at(0, 1, 0) = 1;
    b.at(1, 0, 0) = 2;  // coordinates 2,3 are radical
    auto cert2 = center_and_derived(Class2Group(3, b));
    CHECK_FALSE(cert2.ok);
    CHECK(cert2.center.dim() > cert2.derived.dim());

    // image smaller than W
    PBimap c(k, 2, 2, 2, BimapKind::alternating);
    c.at(0, 1, 0) = 1;
    c.at(1, 0, 0) = 2;
    auto cert3 = center_and_derived(Class2Group(3, c));
    CHECK_FALSE(cert3.ok);
}

TEST_CASE("extract and rebuild") {
    Class2Group h = heisenberg(1, *make_field(3, 2));
    PBimap b = extract_bimap(h);
    CHECK(radical(b, 3).dim() == 0);
    // the rebuilt group has the same commutation data: identity is an isomorphism
    Class2Group g(3, b);
    PrimeField k{3};
    GroupIso iso{make_identity(k, 4), make_identity(k, 2), std::nullopt};
    CHECK(check_isomorphism(g, h, iso).ok);
}

TEST_CASE("quotient group") {
    Class2Group h = heisenberg(1, *make_field(3, 2));
    Subspace n = Subspace::from_generators(3, 2, mat_from(3, 1, 2, {1, 0}));
    Class2Group q = quotient_group(h, n);
    CHECK(q.order() == 243);  // 3^5
    CHECK(q.dim_w() == 1);

    CHECK_THROWS_AS(quotient_group(h, Subspace::full(3, 2)), error);
    CHECK_THROWS_AS(quotient_group(h, Subspace::zero(3, 3)), mismatch_error);

    Class2Group same = quotient_group(h, Subspace::zero(3, 2));
    CHECK(same.order() == h.order());
    CHECK(same.comm().t == h.comm().t);
}

TEST_CASE("brahana groups") {
    PrimeField k{3};
    // dot product on K^1, K = GF(9), flattened to Z/3
    auto ctx = make_field(3, 2);
    ExtField kf{ctx.get()};
    KBimap dot(kf, 1, 1, 1, BimapKind::general);
    dot.at(0, 0, 0) = fe_one(*ctx);
    PBimap dot_flat = flatten_bimap(*ctx, dot);
    Class2Group g = brahana(3, dot_flat);
    CHECK(g.order() == 729);
    auto cert = center_and_derived(g);
    CHECK(cert.ok);
    check_alternating(k, g.comm());

    // c = 0 gives an abelian group
    Class2Group ab = brahana(3, PBimap(k, 2, 2, 1, BimapKind::general));
    CHECK_FALSE(center_and_derived(ab).ok);

    // alternating extension property on random vectors: b((u,v),(u,v)) = 0
    Rng rng(kDefaultSeed + 11);
    for (int t = 0; t < 50; ++t) {
        std::vector<std::int64_t> x(g.dim_v());
        for (auto& v : x) v = rand_below(rng, 3);
        CHECK(evaluate(k, g.comm(), x, x) == std::vector<std::int64_t>(g.dim_w(), 0));
    }
}

TEST_CASE("isomorphism checking") {
    PrimeField k{3};
    Class2Group g = heisenberg(1, *make_field(3, 2));

    SECTION("identity is valid") {
        GroupIso iso{make_identity(k, 4), make_identity(k, 2), std::nullopt};
        CHECK(check_isomorphism(g, g, iso).ok);
    }

    SECTION("central shear is an automorphism for any tau") {
        Rng rng(kDefaultSeed + 12);
        for (int t = 0; t < 10; ++t) {
            Mat tau(4, 2, 0);
            for (auto& v : tau.a) v = rand_below(rng, 3);
            GroupIso iso{make_identity(k, 4), make_identity(k, 2), tau};
            CHECK(check_isomorphism(g, g, iso).ok);
            // spot-check the homomorphism property on elements
            for (int r = 0; r < 10; ++r) {
                GroupElement a = g.element({rand_below(rng, 3), rand_below(rng, 3), rand_below(rng, 3), rand_below(rng, 3)},
                                           {rand_below(rng, 3), rand_below(rng, 3)});
                GroupElement b = g.element({rand_below(rng, 3), rand_below(rng, 3), rand_below(rng, 3), rand_below(rng, 3)},
                                           {rand_below(rng, 3), rand_below(rng, 3)});
                CHECK(apply_iso(g, iso, g.multiply(a, b)) ==
                      g.multiply(apply_iso(g, iso, a), apply_iso(g, iso, b)));
            }
        }
    }

    SECTION("random non-pseudo-isometries are rejected with a witness") {
        Rng rng(kDefaultSeed + 13);
        int rejected = 0;
        for (int t = 0; t < 20; ++t) {
            Mat f(4, 4, 0), fhat(2, 2, 0);
            for (auto& v : f.a) v = rand_below(rng, 3);
            for (auto& v : fhat.a) v = rand_below(rng, 3);
            auto res = check_isomorphism(g, g, GroupIso{f, fhat, std::nullopt});
            if (!res.ok) {
                ++rejected;
                if (res.failure == "pseudo-isometry relation fails") CHECK(res.witness.first >= 0);
            }
        }
        CHECK(rejected > 0);
    }
}
