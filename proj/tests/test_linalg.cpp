#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "heiq/linalg.hpp"
#include "heiq/util.hpp"

using namespace heiq;

namespace {

Mat random_mat(Rng& rng, std::int64_t p, int r, int c) {
    Mat m(r, c, 0);
    for (auto& v : m.a) v = rand_below(rng, p);
    return m;
}

Mat random_invertible(Rng& rng, std::int64_t p, int n) {
    PrimeField k{p};
    while (true) {
        Mat m = random_mat(rng, p, n, n);
        if (try_inverse(k, m)) return m;
    }
}

}  // namespace

TEST_CASE("rref, kernel, solve basics") {
    PrimeField k{3};
    CHECK(kernel(k, make_identity(k, 4)).rows == 0);

    // 0·x = 0 has full kernel and the zero solution
    Mat z = make_zero(k, 3, 2);
    auto sol = solve(k, z, {0, 0});
    CHECK(sol.consistent);
    CHECK(sol.particular == std::vector<std::int64_t>{0, 0, 0});
    CHECK(sol.homogeneous.rows == 3);

    // inconsistent system
    auto bad = solve(k, z, {1, 0});
    CHECK_FALSE(bad.consistent);

    CHECK_THROWS_AS(mat_mul(k, make_zero(k, 2, 3), make_zero(k, 2, 3)), mismatch_error);
}

TEST_CASE("rank + nullity") {
    Rng rng(kDefaultSeed);
    PrimeField k{3};
    for (int trial = 0; trial < 50; ++trial) {
        Mat m = random_mat(rng, 3, 6, 6);
        CHECK(rank(k, m) + kernel(k, m).rows == 6);
    }
}

TEST_CASE("solve returns a particular solution") {
    Rng rng(kDefaultSeed + 1);
    PrimeField k{5};
    for (int trial = 0; trial < 30; ++trial) {
        Mat m = random_mat(rng, 5, 4, 6);
        std::vector<std::int64_t> x(4);
        for (auto& v : x) v = rand_below(rng, 5);
        auto b = vec_mat(k, x, m);
        auto sol = solve(k, m, b);
        REQUIRE(sol.consistent);
        CHECK(vec_mat(k, sol.particular, m) == b);
    }
}

TEST_CASE("subspace lattice") {
    Rng rng(kDefaultSeed + 2);
    std::int64_t p = 3;
    for (int trial = 0; trial < 30; ++trial) {
        Subspace s = Subspace::from_generators(p, 6, random_mat(rng, p, 1 + rand_below(rng, 4), 6));
        Subspace t = Subspace::from_generators(p, 6, random_mat(rng, p, 1 + rand_below(rng, 4), 6));
        Subspace su = subspace_sum(s, t);
        Subspace in = subspace_intersect(s, t);
        CHECK(su.dim() + in.dim() == s.dim() + t.dim());
        CHECK(su.contains(s));
        CHECK(su.contains(t));
        CHECK(s.contains(in));
        CHECK(t.contains(in));
    }
    Subspace s = Subspace::from_generators(p, 6, mat_from(p, 2, 6, {1, 0, 0, 1, 2, 0, 0, 1, 1, 0, 0, 2}));
    CHECK(subspace_intersect(s, s) == s);
    CHECK(subspace_sum(s, Subspace::zero(p, 6)) == s);
    CHECK_THROWS_AS(subspace_sum(s, Subspace::zero(p, 5)), mismatch_error);
}

TEST_CASE("echelon form is canonical") {
    Rng rng(kDefaultSeed + 3);
    PrimeField k{3};
    for (int trial = 0; trial < 25; ++trial) {
        Subspace s = Subspace::from_generators(3, 6, random_mat(rng, 3, 3, 6));
        // change of generating set: invertible mixing of the basis rows
        Mat g = random_invertible(rng, 3, s.dim());
        Mat mixed = mat_mul(k, g, s.basis);
        Subspace s2 = Subspace::from_generators(3, 6, mixed);
        CHECK(s == s2);
    }
}

TEST_CASE("quotient map") {
    std::int64_t p = 3;
    Subspace s = Subspace::from_generators(p, 4, mat_from(p, 1, 4, {1, 2, 0, 1}));
    Mat q = quotient_map(s);
    CHECK(q.rows == 4);
    CHECK(q.cols == 3);
    PrimeField k{p};
    // the subspace dies in the quotient
    auto img = vec_mat(k, {1, 2, 0, 1}, q);
    CHECK(img == std::vector<std::int64_t>{0, 0, 0});
    CHECK(rank(k, q) == 3);
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(5, 5, 3) == 1);
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    CHECK(gaussian_binomial(5, 2, 3) == 1210);
    CHECK(gaussian_binomial(5, 3, 3) == 1210);
    for (int d = 0; d <= 8; ++d)
        for (int s = 0; s <= d; ++s) CHECK(gaussian_binomial(d, s, 3) == gaussian_binomial(d, d - s, 3));
    // a value past 64 bits
    mpz_class big = gaussian_binomial(40, 20, 3);
    CHECK(big > mpz_class("18446744073709551615"));
}

TEST_CASE("subspace enumeration") {
    auto subs = enumerate_subspaces(3, 2, 1);
    CHECK(subs.size() == 4);

    for (int d = 0; d <= 5; ++d)
        for (int t = 0; t <= d; ++t) {
            auto all = enumerate_subspaces(3, d, t);
            CHECK(mpz_class(all.size()) == gaussian_binomial(d, t, 3));
            std::set<std::vector<std::int64_t>> seen;
            for (const auto& s : all) {
                CHECK(s.dim() == t);
                seen.insert(s.basis.a);
            }
            CHECK(seen.size() == all.size());
        }

    auto zero_only = enumerate_subspaces(3, 4, 0);
    REQUIRE(zero_only.size() == 1);
    CHECK(zero_only[0].dim() == 0);

    CHECK(enumerate_subspaces(3, 5, 3).size() == 1210);
    CHECK_THROWS_AS(enumerate_subspaces(3, 30, 15), budget_error);
}

TEST_CASE("flattened K-linear maps compose") {
    auto ctx = make_field(3, 3);
    ExtField kf{ctx.get()};
    PrimeField k{3};
    Rng rng(kDefaultSeed + 4);
    KMat a(2, 2, fe_zero(*ctx)), b(2, 2, fe_zero(*ctx));
    for (auto& v : a.a) v = fe_from_index(*ctx, static_cast<std::uint64_t>(rand_below(rng, 27)));
    for (auto& v : b.a) v = fe_from_index(*ctx, static_cast<std::uint64_t>(rand_below(rng, 27)));
    Mat fa = flatten_kmatrix(*ctx, a), fb = flatten_kmatrix(*ctx, b);
    CHECK(mat_eq(k, mat_mul(k, fa, fb), flatten_kmatrix(*ctx, mat_mul(kf, a, b))));

    // frobenius flattening is semilinear: F ∘ flat(a) = flat(a^σ) ∘ F
    Mat fr = flatten_frobenius(*ctx, 2, 1);
    KMat asig = a;
    for (auto& v : asig.a) v = fe_frobenius(v, 1);
    CHECK(mat_eq(k, mat_mul(k, fa, fr), mat_mul(k, fr, flatten_kmatrix(*ctx, asig))));
}
