#pragma once

// The acceptance suite: ten end-to-end checks pinning the behavior of the
// whole pipeline at desk scale, from element arithmetic up to the census and
// the invariant sweep. Each check runs standalone and reports pass/fail with
// a measured detail string; budget-limited checks report SKIPPED when their
// budget is set below what they need.

#include <chrono>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heiq/census.hpp"
#include "heiq/group.hpp"
#include "heiq/invariants.hpp"
#include "heiq/isotest.hpp"
#include "heiq/recognize.hpp"
#include "heiq/util.hpp"

namespace heiq {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

struct SelftestOptions {
    std::uint64_t census_budget = 1000000;  // max subspaces; 0 skips census checks
    std::uint64_t gl_budget = 30000000;     // max |GL(n,p)| for exhaustive sweeps; 0 skips
    std::uint64_t seed = kDefaultSeed;
};

namespace selftest_detail {

struct Failure {
    std::string what;
};

inline void expect(bool cond, const std::string& what) {
    if (!cond) throw Failure{what};
}

inline GroupElement random_element(Rng& rng, const Class2Group& g) {
    std::vector<std::int64_t> u(g.dim_v()), s(g.dim_w());
    for (auto& v : u) v = rand_below(rng, g.p());
    for (auto& v : s) v = rand_below(rng, g.p());
    return g.element(std::move(u), std::move(s));
}

// 1. element arithmetic in Grp(j) over GF(3)
inline std::string check_baer_layer(const SelftestOptions& opt) {
    Class2Group g = heisenberg(1, *make_field(3, 1));
    Rng rng(opt.seed);
    for (int t = 0; t < 100; ++t) {
        GroupElement a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
        expect(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)), "associativity");
    }
    for (int i = 0; i < g.dim_v(); ++i)
        for (int j = 0; j < g.dim_v(); ++j) {
            std::vector<std::int64_t> ui(g.dim_v(), 0), uj(g.dim_v(), 0);
            ui[i] = 1;
            uj[j] = 1;
            GroupElement a = g.element(ui, {0}), b = g.element(uj, {0});
            GroupElement four = g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b));
            expect(g.commutator(a, b) == four, "commutator formula vs four-fold product");
        }
    for (std::uint64_t i = 0; i < 27; ++i) {
        GroupElement x = g.element_at(i);
        expect(g.multiply(g.multiply(x, x), x) == g.identity(), "exponent p");
        expect(g.power(x, 3) == g.identity(), "power formula");
    }
    return "100 triples associative, 4 basis commutators, 27 cubes trivial";
}

// 2. recognition round trip on the covers
inline std::string check_recognition_roundtrip(const SelftestOptions&) {
    int cases = 0;
    for (int m : {1, 2})
        for (int d : {1, 2, 3}) {
            RecognitionResult rec = recognize(heisenberg(m, *make_field(3, d)));
            expect(rec.is_quotient, "cover not recognized");
            expect(rec.desc.m == m && rec.desc.d == d, "wrong cover parameters");
            expect(rec.desc.kernel_m.dim() == 0, "nonzero kernel on a cover");
            ++cases;
        }
    return std::to_string(cases) + " covers reproduced exactly";
}

// 3. field collapse GF(9) -> Z/3 with oracle confirmation
inline std::string check_field_collapse(const SelftestOptions& opt) {
    auto ctx = make_field(3, 2);
    Class2Group h = heisenberg(1, *ctx);
    Class2Group h2 = heisenberg(2, *make_field(3, 1));
    auto kernels = enumerate_subspaces(3, 2, 1);
    expect(kernels.size() == 4, "expected 4 kernels in GF(9)");
    for (const auto& n : kernels) {
        Class2Group q = quotient_group(h, n);
        RecognitionResult rec = recognize(q);
        expect(rec.is_quotient && rec.desc.m == 2 && rec.desc.d == 1, "floor is not H_2(GF(3))");
        IsoResult iso = iso_test(q, h2);
        expect(iso.decided && iso.isomorphic, "fast path refused the isomorphism");
        expect(check_isomorphism(q, h2, iso.witness->iso).ok, "witness fails verification");
    }
    if (opt.gl_budget == 0) throw budget_error("GL sweep budget is 0");
    Class2Group q0 = quotient_group(h, kernels[0]);
    auto sweep = oracle_pseudo_isometry(extract_bimap(q0), extract_bimap(h2), 3, true, opt.gl_budget);
    expect(sweep.found, "exhaustive sweep found no pseudo-isometry");
    return "4 kernels isomorphic to H_2(GF(3)); full sweep over " + std::to_string(sweep.candidates) +
           " invertible candidates found " + std::to_string(sweep.count) + " pseudo-isometries";
}

// 4. the stable regime at (n, d) = (8, 3)
inline std::string check_stable_regime(const SelftestOptions& opt) {
    auto ctx = make_field(3, 3);
    Class2Group h = heisenberg(1, *ctx);
    auto kernels = enumerate_subspaces(3, 3, 1);
    expect(kernels.size() == 13, "expected 13 kernels");
    std::vector<Class2Group> quotients;
    for (const auto& n : kernels) {
        Class2Group q = quotient_group(h, n);
        RecognitionResult rec = recognize(q);
        expect(rec.is_quotient && rec.desc.m == 1 && rec.desc.d == 3, "floor is not H_1(GF(27))");
        quotients.push_back(std::move(q));
    }
    CensusOptions copt;
    copt.max_subspaces = opt.census_budget;
    copt.seed = opt.seed;
    if (opt.census_budget == 0) throw budget_error("census budget is 0");
    CensusReport rep = run_census(3, 3, 2, copt);
    expect(rep.orbit_count == 1, "census found more than one orbit");
    int pairs = 0;
    for (std::size_t a = 0; a < quotients.size(); ++a)
        for (std::size_t b = a + 1; b < quotients.size(); ++b) {
            IsoResult iso = iso_test(quotients[a], quotients[b]);
            expect(iso.decided && iso.isomorphic, "pair refused");
            expect(check_isomorphism(quotients[a], quotients[b], iso.witness->iso).ok,
                   "witness fails verification");
            ++pairs;
        }
    return "13 floors correct, 1 orbit, " + std::to_string(pairs) + " pairs isomorphic with witnesses";
}

// 5. the separation regime at (p, d, s) = (3, 5, 2)
inline std::string check_separation(const SelftestOptions& opt) {
    if (opt.census_budget == 0) throw budget_error("census budget is 0");
    expect(good_pair(12).d == 5, "degree table broken at n = 12");
    CensusOptions copt;
    copt.max_subspaces = opt.census_budget;
    copt.seed = opt.seed;
    copt.validate_pairs = 0;
    CensusReport rep = run_census(3, 5, 2, copt);
    expect(rep.subspace_count == 1210, "kernel count is not 1210");
    expect(mpz_class(1210) == gaussian_binomial(5, 3, 3), "gaussian binomial mismatch");
    expect(rep.orbit_count >= 2, "expected at least 2 orbits (effective bound 1210/605)");
    expect(rep.orbit_count >= 1, "coarse bound ceil(729/1210) = 1 violated");
    expect(rep.stable_regime, "(12, 5) must satisfy the degree conditions");

    auto ctx = make_field(3, 5);
    Class2Group h = heisenberg(1, *ctx);
    // pairwise separation of the representatives
    std::vector<Class2Group> reps;
    for (const auto& o : rep.orbits) reps.push_back(quotient_group(h, o.representative));
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            IsoResult iso = iso_test(reps[a], reps[b]);
            expect(iso.decided && !iso.isomorphic, "representatives of distinct orbits tested isomorphic");
        }
    // the canonical partition agrees with direct orbit enumeration
    std::set<std::vector<std::int64_t>> seen;
    std::uint64_t covered = 0;
    for (const auto& o : rep.orbits) {
        std::set<std::vector<std::int64_t>> orbit_members;
        for (int i = 0; i < 5; ++i) {
            Subspace mi = subspace_semilinear_image(*ctx, o.representative, i, fe_one(*ctx));
            for (std::uint64_t ci = 1; ci < ctx->order(); ++ci) {
                Subspace img = subspace_apply(mi, mult_matrix(fe_from_index(*ctx, ci)));
                orbit_members.insert(img.basis.a);
            }
        }
        expect(orbit_members.size() == o.size, "direct orbit size disagrees with the census bucket");
        for (const auto& m : orbit_members) {
            expect(seen.insert(m).second, "orbits overlap");
            ++covered;
        }
    }
    expect(covered == 1210, "orbits do not cover all kernels");
    return "1210 kernels, " + std::to_string(rep.orbit_count) +
           " orbits, pairwise separated, partition matches direct enumeration";
}

// 6. indistinguishability of the separated quotients
inline std::string check_indistinguishability(const SelftestOptions& opt) {
    if (opt.census_budget == 0) throw budget_error("census budget is 0");
    CensusOptions copt;
    copt.max_subspaces = opt.census_budget;
    copt.seed = opt.seed;
    CensusReport rep = run_census(3, 5, 2, copt);
    auto ctx = make_field(3, 5);
    Class2Group h = heisenberg(1, *ctx);
    mpz_class expect_order = mpz_pow(3, 12);
    mpz_class expect_index = mpz_pow(3, 10);
    mpz_class expect_derived = mpz_pow(3, 2);
    std::string first_pair;
    for (const auto& o : rep.orbits) {
        Class2Group g = quotient_group(h, o.representative);
        expect(g.order() == expect_order, "order is not 3^12");
        InvariantProfile prof = invariant_profile(g);
        expect(prof.exponent == 3, "exponent is not 3");
        expect(prof.camina.is_camina && prof.camina.exhaustive, "not exhaustively Camina");
        expect(prof.character.index_of_derived == expect_index, "[G:G'] is not 3^10");
        expect(prof.character.derived_order == expect_derived, "|G'| is not 3^2");
        expect(prof.classes.uniform, "noncentral centralizer orders differ");
        expect(prof.classes.noncentral_centralizer_order == expect_index,
               "noncentral centralizers are not [G:G']");
        expect(prof.recognized && prof.indec.directly_indecomposable, "not directly indecomposable");
        expect(prof.indec.centrally_indecomposable, "not centrally indecomposable");
        expect(prof.indec.type == InvolutionType::symplectic, "not symplectic type");
        std::string pair = prof.character.index_of_derived.get_str() + "," +
                           prof.character.derived_order.get_str();
        if (first_pair.empty())
            first_pair = pair;
        else
            expect(pair == first_pair, "character pairs differ across orbits");
    }
    return std::to_string(rep.orbits.size()) +
           " orbit representatives share order 3^12, exponent 3, pair (3^10, 3^2), Camina, "
           "uniform centralizers 3^10, both indecomposability flags, symplectic type";
}

// 7. pseudo-isometry group orders by exhaustive sweep
inline std::string check_aut_orders(const SelftestOptions& opt) {
    if (opt.gl_budget == 0) throw budget_error("GL sweep budget is 0");
    PBimap j1 = standard_symplectic_prime(1, 3);
    auto sweep1 = oracle_pseudo_isometry(j1, j1, 3, true, opt.gl_budget);
    expect(sweep1.count == 48, "pseudo-isometry group of H_1(GF(3)) has order " +
                                   std::to_string(sweep1.count) + ", expected 48 = 1*2*24");
    auto ctx = make_field(3, 2);
    PBimap j9 = flatten_bimap(*ctx, standard_symplectic(1, *ctx));
    auto sweep9 = oracle_pseudo_isometry(j9, j9, 3, true, opt.gl_budget);
    expect(sweep9.count == 11520, "pseudo-isometry group of H_1(GF(9)) has order " +
                                      std::to_string(sweep9.count) + ", expected 11520 = 2*8*720");
    return "orders 48 = |Gal|*|K^x|*|Sp(2,3)| and 11520 = 2*8*|Sp(2,9)| confirmed over " +
           std::to_string(sweep1.candidates + sweep9.candidates) + " candidates";
}

// 8. the scaling solver, randomized
inline std::string check_scale_solver(const SelftestOptions& opt) {
    int done = 0, mismatches = 0;
    for (int d : {3, 5, 8}) {
        auto ctx = make_field(3, d);
        Rng rng(opt.seed + static_cast<std::uint64_t>(d));
        PrimeField k{3};
        int trials = d == 8 ? 334 : 333;
        for (int t = 0; t < trials; ++t) {
            int dim = 1 + static_cast<int>(rand_below(rng, d - 1));
            Subspace u;
            do {
                Mat m(dim, d, 0);
                for (auto& v : m.a) v = rand_below(rng, 3);
                u = Subspace::from_generators(3, d, m);
            } while (u.dim() != dim);
            FieldElement c = fe_from_index(*ctx, 1 + static_cast<std::uint64_t>(rand_below(
                                                      rng, static_cast<std::int64_t>(ctx->order() - 1))));
            Subspace v = subspace_apply(u, mult_matrix(c));
            auto found = subspace_scale_solver(*ctx, u, v);
            expect(found.has_value(), "solver missed a valid scaling");
            expect(subspace_apply(u, mult_matrix(*found)) == v, "solver scalar does not carry U to Uc");
            ++done;
            if (t % 10 == 0 && dim < d) {
                // dimension mismatch must refuse immediately
                Subspace w = Subspace::from_generators(
                    3, d, make_identity(k, d));
                expect(!subspace_scale_solver(*ctx, u, w).has_value(), "dimension gate failed");
                ++mismatches;
            }
        }
    }
    return std::to_string(done) + " random scalings recovered exactly, " + std::to_string(mismatches) +
           " dimension mismatches refused";
}

// 9. the degree-selection table
inline std::string check_degree_table(const SelftestOptions&) {
    struct Row { int lo, hi, d; };
    const Row table[] = {{12, 15, 5}, {16, 21, 7}, {22, 23, 8}, {24, 33, 11},
                         {34, 39, 13}, {40, 57, 19}, {58, 59, 23}};
    for (const auto& row : table)
        for (int n = row.lo; n <= row.hi; ++n)
            expect(good_pair(n).d == row.d, "table value differs at n = " + std::to_string(n));
    for (int n = 12; n <= 200; ++n) {
        GoodPair gp = good_pair(n);
        expect(good_pair_conditions(gp.n, gp.d), "conditions fail at n = " + std::to_string(n));
    }
    return "table reproduced on [12, 59]; conditions verified on [12, 200]";
}

// 10. the hyperbolic-pair construction bridge
inline std::string check_brahana_bridge(const SelftestOptions&) {
    auto ctx = make_field(3, 2);
    ExtField kf{ctx.get()};
    KBimap dot(kf, 1, 1, 1, BimapKind::general);
    dot.at(0, 0, 0) = fe_one(*ctx);
    Class2Group g = brahana(3, flatten_bimap(*ctx, dot));
    RecognitionResult rec = recognize(g);
    expect(rec.is_quotient && rec.desc.m == 1 && rec.desc.d == 2, "floor is not H_1(GF(9))");
    IsoResult iso = iso_test(g, heisenberg(1, *ctx));
    expect(iso.decided && iso.isomorphic, "not isomorphic to H_1(GF(9))");
    return "dot-product group recognized as H_1(GF(9)) with a verified isomorphism";
}

}  // namespace selftest_detail

inline std::vector<CheckResult> run_acceptance(const SelftestOptions& opt = {},
                                               const std::function<void(const CheckResult&)>& emit = {}) {
    using Fn = std::string (*)(const SelftestOptions&);
    const std::pair<const char*, Fn> checks[] = {
        {"baer-layer", selftest_detail::check_baer_layer},
        {"recognition-roundtrip", selftest_detail::check_recognition_roundtrip},
        {"field-collapse", selftest_detail::check_field_collapse},
        {"stable-regime", selftest_detail::check_stable_regime},
        {"separation", selftest_detail::check_separation},
        {"indistinguishability", selftest_detail::check_indistinguishability},
        {"aut-orders", selftest_detail::check_aut_orders},
        {"scale-solver", selftest_detail::check_scale_solver},
        {"degree-table", selftest_detail::check_degree_table},
        {"brahana-bridge", selftest_detail::check_brahana_bridge},
    };
    std::vector<CheckResult> results;
    for (const auto& [name, fn] : checks) {
        CheckResult r;
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            r.detail = fn(opt);
            r.pass = true;
        } catch (const budget_error& e) {
            r.skipped = true;
            r.detail = e.what();
        } catch (const selftest_detail::Failure& f) {
            r.detail = f.what;
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (emit) emit(r);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace heiq
