#include <catch2/catch_amalgamated.hpp>

#include "heiq/ff.hpp"
#include "heiq/linalg.hpp"
#include "heiq/util.hpp"

using namespace heiq;

namespace {

// Oracle: irreducibility of low-degree f by exhaustive root / divisor search.
bool oracle_has_root(const Poly& f, std::int64_t p) {
    for (std::int64_t r = 0; r < p; ++r) {
        std::int64_t v = 0, pw = 1;
        for (auto c : f) {
            v = mod_reduce(v + c * pw, p);
            pw = mod_mul(pw, r, p);
        }
        if (v == 0) return true;
    }
    return false;
}

// Oracle: trial division by every monic polynomial of degree in [1, max_deg].
bool oracle_irreducible(const Poly& f, std::int64_t p, int max_deg) {
    for (int deg = 1; deg <= max_deg; ++deg) {
        std::uint64_t total = 1;
        for (int i = 0; i < deg; ++i) total *= static_cast<std::uint64_t>(p);
        for (std::uint64_t k = 0; k < total; ++k) {
            Poly g(deg + 1, 0);
            std::uint64_t v = k;
            for (int i = 0; i < deg; ++i) {
                g[i] = static_cast<std::int64_t>(v % p);
                v /= p;
            }
            g[deg] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("find_irreducible canonical moduli") {
    CHECK(find_irreducible(3, 1) == Poly{0, 1});   // x
    CHECK(find_irreducible(3, 2) == Poly{1, 0, 1});  // x^2 + 1, no root mod 3
    CHECK_FALSE(oracle_has_root(Poly{1, 0, 1}, 3));

    // degree 5: the first monic polynomial with no factor of degree <= 2
    Poly f5 = find_irreducible(3, 5);
    CHECK(poly_deg(f5) == 5);
    CHECK(oracle_irreducible(f5, 3, 2));
    // nothing smaller qualifies
    bool found_smaller = false;
    for (std::uint64_t k = 0; ; ++k) {
        Poly g(6, 0);
        std::uint64_t v = k;
        for (int i = 0; i < 5; ++i) {
            g[i] = static_cast<std::int64_t>(v % 3);
            v /= 3;
        }
        g[5] = 1;
        if (g == f5) break;
        if (oracle_irreducible(g, 3, 2)) { found_smaller = true; break; }
    }
    CHECK_FALSE(found_smaller);
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(Poly{1, 0, 1}, 3));            // x^2+1
    CHECK_FALSE(is_irreducible(Poly{2, 0, 1}, 3));      // x^2-1 = (x-1)(x+1)
    Poly f{1, 2, 0, 0, 0, 1};                           // x^5+2x+1
    CHECK(is_irreducible(f, 3) == oracle_irreducible(f, 3, 2));
    CHECK_THROWS_AS(is_irreducible(Poly{1, 2}, 3), error);  // non-monic
    CHECK_THROWS_AS(is_irreducible(Poly{}, 3), error);
}

TEST_CASE("GF(9) arithmetic") {
    auto ctx = make_field(3, 2);  // Z/3[x]/(x^2+1)
    REQUIRE(ctx->modulus == Poly{1, 0, 1});
    FieldElement x = fe_gen(*ctx);
    CHECK(x * x == fe_from_int(*ctx, 2));  // x^2 = -1 = 2
    CHECK(fe_inv(fe_one(*ctx)) == fe_one(*ctx));
    CHECK_THROWS_AS(fe_inv(fe_zero(*ctx)), error);

    auto ctx27 = make_field(3, 3);
    FieldElement y = fe_gen(*ctx27);
    CHECK_THROWS_AS(x + y, mismatch_error);
}

TEST_CASE("multiplicative order and frobenius") {
    for (int d : {1, 2, 3, 5}) {
        auto ctx = make_field(3, d);
        std::uint64_t q = ctx->order();
        Rng rng(kDefaultSeed + d);
        for (int trial = 0; trial < 20; ++trial) {
            FieldElement a = fe_from_index(*ctx, 1 + static_cast<std::uint64_t>(rand_below(rng, q - 1)));
            CHECK(fe_pow(a, q - 1) == fe_one(*ctx));
            FieldElement b = fe_from_index(*ctx, static_cast<std::uint64_t>(rand_below(rng, q)));
            int e = static_cast<int>(rand_below(rng, d)) ;
            CHECK(fe_frobenius(a * b, e) == fe_frobenius(a, e) * fe_frobenius(b, e));
            CHECK(fe_frobenius(a + b, e) == fe_frobenius(a, e) + fe_frobenius(b, e));
        }
        // frobenius(d) is the identity
        FieldElement g = fe_gen(*ctx);
        CHECK(fe_frobenius(g, d) == g);
    }
}

TEST_CASE("frobenius matrix order") {
    for (int d : {2, 3, 4}) {
        auto ctx = make_field(3, d);
        PrimeField k{3};
        Mat f(d, d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) f.at(i, j) = ctx->frobenius[i * d + j];
        Mat acc = f;
        int order = 1;
        while (!mat_eq(k, acc, make_identity(k, d))) {
            acc = mat_mul(k, acc, f);
            ++order;
            REQUIRE(order <= d);
        }
        CHECK(order == d);
    }
}

TEST_CASE("subfield criterion") {
    auto ctx = make_field(3, 4);
    std::uint64_t q = ctx->order();
    // elements of the subfield GF(3^2): exactly those fixed by frobenius^2
    int count = 0;
    for (std::uint64_t i = 0; i < q; ++i)
        if (fe_in_subfield(fe_from_index(*ctx, i), 2)) ++count;
    CHECK(count == 9);
    count = 0;
    for (std::uint64_t i = 0; i < q; ++i)
        if (fe_in_subfield(fe_from_index(*ctx, i), 1)) ++count;
    CHECK(count == 3);
}

TEST_CASE("minimal_polynomial of matrices") {
    PrimeField k{3};
    CHECK(minimal_polynomial(3, make_identity(k, 4)) == Poly{2, 1});  // x - 1
    CHECK(minimal_polynomial(3, make_zero(k, 3, 3)) == Poly{0, 1});   // x
    Poly f{1, 0, 1};
    CHECK(minimal_polynomial(3, companion_matrix(3, f)) == f);
    Poly g = find_irreducible(3, 5);
    CHECK(minimal_polynomial(3, companion_matrix(3, g)) == g);
}

TEST_CASE("element minimal polynomials") {
    auto ctx = make_field(3, 3);
    FieldElement g = fe_gen(*ctx);
    CHECK(fe_min_poly(g) == ctx->modulus);
    CHECK(fe_min_poly(fe_from_int(*ctx, 2)) == Poly{1, 1});  // x + 1 = x - 2
}
