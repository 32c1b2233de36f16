#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "heiq/census.hpp"
#include "heiq/invariants.hpp"
#include "heiq/util.hpp"

using namespace heiq;

TEST_CASE("heisenberg groups are Camina groups") {
    for (int m : {1, 2}) {
        for (int d : {1, 2}) {
            Class2Group h = heisenberg(m, *make_field(3, d));
            CaminaResult res = is_camina(h);
            CHECK(res.is_camina);
            CHECK(res.exhaustive);
        }
    }
}

TEST_CASE("nonabelian quotients stay Camina") {
    auto ctx = make_field(3, 3);
    Class2Group h = heisenberg(1, *ctx);
    for (const auto& n : enumerate_subspaces(3, 3, 1)) {
        CaminaResult res = is_camina(quotient_group(h, n));
        CHECK(res.is_camina);
    }
}

TEST_CASE("a split pairing is not Camina") {
    // W is 2-dimensional but u = e1 only pairs into the first coordinate
    PrimeField k{3};
    PBimap b(k, 4, 4, 2, BimapKind::alternating);
    b.at(0, 1, 0) = 1;
    b.at(1, 0, 0) = 2;
    b.at(2, 3, 1) = 1;
    b.at(3, 2, 1) = 2;
    CaminaResult res = is_camina(Class2Group(3, b));
    CHECK_FALSE(res.is_camina);
}

namespace {

// centralizer orders element by element, compared with the rank formula
void check_class_data_brute(const Class2Group& g) {
    std::uint64_t order = g.order().get_ui();
    ClassData cd = class_data(g);
    std::map<std::uint64_t, std::uint64_t> brute;  // centralizer order -> element count
    for (std::uint64_t i = 0; i < order; ++i) {
        GroupElement a = g.element_at(i);
        std::uint64_t cent = 0;
        for (std::uint64_t j = 0; j < order; ++j) {
            GroupElement b = g.element_at(j);
            if (g.multiply(a, b) == g.multiply(b, a)) ++cent;
        }
        ++brute[cent];
    }
    // central elements have full centralizer; a u of rank r contributes
    // p^dimW elements with centralizer p^(dimV - r + dimW)
    std::uint64_t pw = 1;
    for (int i = 0; i < g.dim_w(); ++i) pw *= static_cast<std::uint64_t>(g.p());
    std::map<std::uint64_t, std::uint64_t> formula;
    formula[order] = cd.central_elements.get_ui();
    for (const auto& [r, count] : cd.rank_counts) {
        std::uint64_t cent = 1;
        for (int i = 0; i < g.dim_v() - r + g.dim_w(); ++i) cent *= static_cast<std::uint64_t>(g.p());
        formula[cent] += count * pw;
    }
    CHECK(brute == formula);
}

}  // namespace

TEST_CASE("class data against brute force up to order 3^6") {
    auto ctx = make_field(3, 2);
    Class2Group h = heisenberg(1, *ctx);
    Subspace n = Subspace::from_generators(3, 2, mat_from(3, 1, 2, {1, 1}));
    Class2Group g = quotient_group(h, n);  // order 3^5
    REQUIRE(g.order() == 243);
    check_class_data_brute(g);
    check_class_data_brute(h);                              // order 3^6
    check_class_data_brute(heisenberg(1, *make_field(3, 1)));  // order 3^3

    // a non-Camina group with mixed class sizes
    PrimeField k{3};
    PBimap b(k, 4, 4, 2, BimapKind::alternating);
    b.at(0, 1, 0) = 1;
    b.at(1, 0, 0) = 2;
    b.at(2, 3, 1) = 1;
    b.at(3, 2, 1) = 2;
    check_class_data_brute(Class2Group(3, b));  // order 3^6
}

TEST_CASE("character invariant pairs") {
    Class2Group h9 = heisenberg(1, *make_field(3, 2));
    CaminaResult cam = is_camina(h9);
    CharacterInvariant ci = character_invariant(h9, cam);
    CHECK(ci.index_of_derived == 81);  // 3^4
    CHECK(ci.derived_order == 9);      // 3^2
    CHECK(ci.character_determining);
}

TEST_CASE("indecomposability flags") {
    SECTION("indigenous quotients: directly and centrally indecomposable") {
        auto ctx = make_field(3, 3);
        Class2Group h = heisenberg(1, *ctx);
        Subspace n = Subspace::from_generators(3, 3, mat_from(3, 1, 3, {1, 0, 0}));
        Class2Group g = quotient_group(h, n);
        RecognitionResult rec = recognize(g);
        REQUIRE(rec.is_quotient);
        Indecomposability ind = indecomposability(g, rec);
        CHECK(ind.directly_indecomposable);
        CHECK(ind.centrally_indecomposable);
        CHECK(ind.type == InvolutionType::symplectic);
    }
    SECTION("m = 2 covers are centrally decomposable with 2 members") {
        Class2Group h = heisenberg(2, *make_field(3, 1));
        RecognitionResult rec = recognize(h);
        REQUIRE(rec.is_quotient);
        Indecomposability ind = indecomposability(h, rec);
        CHECK(ind.directly_indecomposable);
        CHECK_FALSE(ind.centrally_indecomposable);
        CHECK(ind.central_decomposition_size == 2);
    }
    SECTION("collapsed GF(9) quotients decompose (floor m = 2)") {
        auto ctx = make_field(3, 2);
        Class2Group h = heisenberg(1, *ctx);
        Subspace n = Subspace::from_generators(3, 2, mat_from(3, 1, 2, {0, 1}));
        Class2Group g = quotient_group(h, n);
        RecognitionResult rec = recognize(g);
        REQUIRE(rec.is_quotient);
        Indecomposability ind = indecomposability(g, rec);
        CHECK_FALSE(ind.centrally_indecomposable);
        CHECK(ind.central_decomposition_size == 2);
    }
}

TEST_CASE("automorphism order components") {
    CHECK(sp_order(1, 3, 1) == 24);   // |Sp(2,3)| = |SL(2,3)|
    CHECK(sp_order(1, 3, 2) == 720);  // |Sp(2,9)| = |SL(2,9)|
    CHECK(sp_order(2, 3, 1) == 51840);

    auto ctx = make_field(3, 3);
    Class2Group h = heisenberg(1, *ctx);
    Subspace n = Subspace::from_generators(3, 3, mat_from(3, 1, 3, {1, 0, 0}));
    Class2Group g = quotient_group(h, n);  // order 3^8, indigenous
    RecognitionResult rec = recognize(g);
    REQUIRE(rec.is_quotient);
    AutReport ar = aut_components(g, rec, true);
    CHECK(ar.m == 1);
    CHECK(ar.d == 3);
    CHECK(ar.n == 8);
    CHECK(ar.sp_order == sp_order(1, 3, 3));
    // hom part: p^(2md(n−2md)) = 3^(6·2) = 3^12
    CHECK(ar.hom_part_order == mpz_pow(3, 12));
    // gcd(8, 3) = 1 so f = 1; e | 3
    for (auto [e, f] : ar.possible_quotient_shapes) {
        CHECK(f == 1);
        CHECK((e == 1 || e == 3));
    }
    CHECK(ar.possible_quotient_shapes.size() == 2);
    CHECK(ar.exact);
    CHECK(ar.stabilizer_subfield_degree == 1);
    CHECK(ar.galois_stabilizer_order >= 1);
}

TEST_CASE("full profile bundles") {
    auto ctx = make_field(3, 2);
    Class2Group h = heisenberg(1, *ctx);
    InvariantProfile prof = invariant_profile(h);
    CHECK(prof.p == 3);
    CHECK(prof.n == 6);
    CHECK(prof.exponent == 3);
    CHECK(prof.camina.is_camina);
    CHECK(prof.classes.uniform);
    CHECK(prof.recognized);
    CHECK(prof.floor_m == 1);
    CHECK(prof.floor_d == 2);
}

TEST_CASE("sp order formula against determinant counting at m = 1, d = 1") {
    // |Sp(2,3)| = number of 2x2 matrices over Z/3 with determinant 1
    std::uint64_t count = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int e = 0; e < 3; ++e)
                    if (mod_reduce(a * e - b * c, 3) == 1) ++count;
    CHECK(count == 24);
    CHECK(sp_order(1, 3, 1) == count);
}

TEST_CASE("kernel stabilizers at (3, 4, 2) factor through orbit sizes") {
    CensusReport rep = run_census(3, 4, 2);
    auto ctx = make_field(3, 4);
    Class2Group h = heisenberg(1, *ctx);
    std::multiset<int> exact_galois_orders;
    for (const auto& o : rep.orbits) {
        // stabilizer in the scalar group and the image in the Galois group
        int scal = 0;
        for (std::uint64_t ci = 1; ci < ctx->order(); ++ci)
            if (subspace_apply(o.representative, mult_matrix(fe_from_index(*ctx, ci))) == o.representative)
                ++scal;
        int gal = 0;
        for (int i = 0; i < ctx->d; ++i) {
            Subspace mi = subspace_semilinear_image(*ctx, o.representative, i, fe_one(*ctx));
            if (subspace_scale_solver(*ctx, mi, o.representative)) ++gal;
        }
        // orbit-stabilizer: |orbit|·|stabilizer| = d·(p^d − 1)
        CHECK(static_cast<std::uint64_t>(scal) * gal * o.size == 320);
        if (o.floor_m == 1) {
            Class2Group g = quotient_group(h, o.representative);
            RecognitionResult rec = recognize(g);
            REQUIRE(rec.is_quotient);
            AutReport ar = aut_components(g, rec, true);
            CHECK(ar.stabilizer_subfield_degree == 1);
            exact_galois_orders.insert(ar.galois_stabilizer_order);
        } else {
            // the collapsing kernels are exactly the GF(9)-submodules
            CHECK(scal == 8);
            FieldElement gen = fe_zero(*ctx);
            for (std::uint64_t i = 2; i < ctx->order(); ++i) {
                FieldElement s = fe_from_index(*ctx, i);
                if (fe_in_subfield(s, 2) && poly_deg(fe_min_poly(s)) == 2) { gen = s; break; }
            }
            CHECK(o.representative.contains(subspace_apply(o.representative, mult_matrix(gen))));
        }
    }
    CHECK(exact_galois_orders == std::multiset<int>{2, 4});
}
