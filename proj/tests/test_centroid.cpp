#include <catch2/catch_amalgamated.hpp>

#include "heiq/centroid.hpp"
#include "heiq/util.hpp"

using namespace heiq;

namespace {

// b = j1 ⊕ j2: two symplectic planes pairing into separate W coordinates.
PBimap split_form() {
    PrimeField k{3};
    PBimap b(k, 4, 4, 2, BimapKind::alternating);
    b.at(0, 1, 0) = 1;
    b.at(1, 0, 0) = 2;
    b.at(2, 3, 1) = 1;
    b.at(3, 2, 1) = 2;
    return b;
}

}  // namespace

TEST_CASE("centroid of a flattened symplectic form is the field") {
    for (int d : {1, 2, 3}) {
        auto ctx = make_field(3, d);
        PBimap jf = flatten_bimap(*ctx, standard_symplectic(1, *ctx));
        CentroidRing ring = compute_centroid(jf, 3);
        CHECK(ring.dim() == d);
        CHECK(ring.commutative());
        PrimeField k{3};
        CHECK(ring.contains({make_identity(k, jf.dim_v), make_identity(k, jf.dim_w)}));
        FieldCert cert = centroid_is_field(ring);
        CHECK(cert.is_field);
        CHECK(cert.degree == d);
    }
}

TEST_CASE("centroid dimension against the brute-force count at dimV=4, dimW=1") {
    // j over GF(9), m = 1, flattened, then projected onto the first coordinate
    auto ctx = make_field(3, 2);
    PrimeField k{3};
    PBimap jf = flatten_bimap(*ctx, standard_symplectic(1, *ctx));
    Mat pi(2, 1, 0);
    pi.at(0, 0) = 1;
    PBimap b = quotient(k, jf, pi);
    REQUIRE(b.dim_v == 4);
    REQUIRE(b.dim_w == 1);

    CentroidRing ring = compute_centroid(b, 3);

    // oracle: enumerate every (f, h) pair directly against the definition
    std::uint64_t count = 0;
    std::vector<std::int64_t> f(16);
    for (std::uint64_t code = 0; code < 43046721ULL /* 3^16 */; ++code) {
        std::uint64_t v = code;
        for (int i = 0; i < 16; ++i) {
            f[i] = static_cast<std::int64_t>(v % 3);
            v /= 3;
        }
        for (std::int64_t h = 0; h < 3; ++h) {
            bool ok = true;
            for (int i = 0; i < 4 && ok; ++i)
                for (int j = 0; j < 4 && ok; ++j) {
                    std::int64_t left = 0, right = 0, mid = 0;
                    for (int a = 0; a < 4; ++a) {
                        left += f[i * 4 + a] * b.at(a, j, 0);
                        right += f[j * 4 + a] * b.at(i, a, 0);
                    }
                    mid = h * b.at(i, j, 0);
                    if ((left - mid) % 3 != 0 || (right - mid) % 3 != 0) ok = false;
                }
            if (ok) ++count;
        }
    }
    mpz_class expect = mpz_pow(3, static_cast<unsigned long>(ring.dim()));
    CHECK(mpz_class(static_cast<unsigned long>(count)) == expect);
}

TEST_CASE("direct sums produce idempotents, not fields") {
    CentroidRing ring = compute_centroid(split_form(), 3);
    CHECK(ring.dim() == 2);
    FieldCert cert = centroid_is_field(ring);
    CHECK_FALSE(cert.is_field);
    CHECK(cert.reason.find("reducible") != std::string::npos);
}

TEST_CASE("one-dimensional centroid is the prime field") {
    PBimap j = standard_symplectic_prime(2, 3);
    CentroidRing ring = compute_centroid(j, 3);
    CHECK(ring.dim() == 1);
    FieldCert cert = centroid_is_field(ring);
    CHECK(cert.is_field);
    CHECK(cert.degree == 1);
}

TEST_CASE("degenerate and partial-image bimaps are rejected") {
    PrimeField k{3};
    PBimap degenerate(k, 2, 2, 1, BimapKind::alternating);
    CHECK_THROWS_AS(compute_centroid(degenerate, 3), error);
}

TEST_CASE("faithfulness of the restriction to W") {
    // the map (f,h) -> h is injective on the centroid of a nondegenerate
    // full-image bimap: check by rank of the h-blocks
    auto ctx = make_field(3, 2);
    PBimap jf = flatten_bimap(*ctx, standard_symplectic(1, *ctx));
    CentroidRing ring = compute_centroid(jf, 3);
    Mat hs(ring.dim(), jf.dim_w * jf.dim_w, 0);
    for (int r = 0; r < ring.dim(); ++r)
        for (std::size_t i = 0; i < ring.basis[r].h.a.size(); ++i)
            hs.at(r, static_cast<int>(i)) = ring.basis[r].h.a[i];
    CHECK(rank(PrimeField{3}, hs) == ring.dim());
}

TEST_CASE("generalized Heisenberg recognition via centroids") {
    for (int m : {1, 2}) {
        for (int d : {1, 2, 3}) {
            Class2Group h = heisenberg(m, *make_field(3, d));
            auto rec = is_generalized_heisenberg(h);
            REQUIRE(rec.yes);
            CHECK(rec.m == m);
            CHECK(rec.field->d == d);
            CHECK(rec.field->p == 3);
        }
    }

    SECTION("quotients with collapsed centers are not generalized Heisenberg over the big field") {
        Class2Group h = heisenberg(1, *make_field(3, 3));
        Subspace n = Subspace::from_generators(3, 3, mat_from(3, 1, 3, {1, 0, 0}));
        Class2Group q = quotient_group(h, n);
        auto rec = is_generalized_heisenberg(q);
        CHECK_FALSE(rec.yes);
    }

    SECTION("abelian groups fail shape certification") {
        PrimeField k{3};
        Class2Group abelian(3, PBimap(k, 2, 2, 1, BimapKind::alternating));
        auto rec = is_generalized_heisenberg(abelian);
        CHECK_FALSE(rec.yes);
        CHECK(rec.reason.find("shape") != std::string::npos);
    }
}
