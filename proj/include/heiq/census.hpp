#pragma once

// Kernel census: enumerate Z/p-subspaces of K, canonicalize under the
// Galois-scalar action, count isomorphism classes exactly, evaluate the
// counting bounds, and the degree-selection arithmetic for stable orders.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heiq/error.hpp"
#include "heiq/isotest.hpp"
#include "heiq/linalg.hpp"
#include "heiq/util.hpp"

namespace heiq {

// ---------------------------------------------------------------------------
// Degree selection: for each n >= 12 a degree d with 2d+2 <= n <= 3d and no
// divisor of d in [n-2d, d)
// ---------------------------------------------------------------------------

struct GoodPair {
    int n = 0;
    int d = 0;
};

inline bool good_pair_conditions(int n, int d) {
    if (!(2 * d + 2 <= n && n <= 3 * d)) return false;
    for (int i = std::max(1, n - 2 * d); i < d; ++i)
        if (d % i == 0) return false;
    return true;
}

/// The table for 12 <= n <= 59, then n = 12q + r with d = 5q + e where e in
/// [1,4] makes d ≡ 1, 7, 11, 17, 23, or 29 (mod 30).
inline GoodPair good_pair(int n) {
    if (n < 12) throw error("good_pair: need n >= 12");
    int d;
    if (n <= 15) d = 5;
    else if (n <= 21) d = 7;
    else if (n <= 23) d = 8;
    else if (n <= 33) d = 11;
    else if (n <= 39) d = 13;
    else if (n <= 57) d = 19;
    else if (n <= 59) d = 23;
    else {
        int q = n / 12;
        d = 0;
        for (int e = 1; e <= 4; ++e) {
            int cand = 5 * q + e;
            int r30 = cand % 30;
            if (r30 == 1 || r30 == 7 || r30 == 11 || r30 == 17 || r30 == 23 || r30 == 29) {
                d = cand;
                break;
            }
        }
        if (d == 0) throw error("good_pair: no admissible residue (unreachable)");
    }
    if (!good_pair_conditions(n, d))
        throw error("good_pair: selected degree fails verification for n = " + std::to_string(n));
    return {n, d};
}

// ---------------------------------------------------------------------------
// Orbit canonicalization under Gal(K) ⋉ K^×
// ---------------------------------------------------------------------------

/// The minimal echelon basis among all d·(p^d − 1) images (M·σ^i)·c.
inline Subspace orbit_canonical(const FieldCtx& ctx, const Subspace& m,
                                std::uint64_t budget = 531441 /* 3^12 */) {
    if (ctx.order() > budget) throw budget_error("orbit_canonical: |K| exceeds the budget");
    Subspace best = m;
    for (int i = 0; i < ctx.d; ++i) {
        Subspace mi = subspace_apply(m, flatten_frobenius(ctx, 1, i));
        for (std::uint64_t ci = 1; ci < ctx.order(); ++ci) {
            Subspace img = subspace_apply(mi, mult_matrix(fe_from_index(ctx, ci)));
            if (img < best) best = img;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// The census
// ---------------------------------------------------------------------------

struct Rational {
    mpz_class num, den;
    std::string str() const { return num.get_str() + "/" + den.get_str(); }
};

/// p^(s(d−s)) / (d·(p^d − 1)): the printed orbit-count lower bound.
inline Rational census_lower_bound(std::int64_t p, int d, int s) {
    Rational r;
    r.num = mpz_pow(p, static_cast<unsigned long>(s * (d - s)));
    r.den = mpz_class(d) * (mpz_pow(p, static_cast<unsigned long>(d)) - 1);
    return r;
}

/// The same bound with the trivially-acting prime-field scalars removed.
inline Rational census_effective_bound(std::int64_t p, int d, int s) {
    Rational r = census_lower_bound(p, d, s);
    r.num *= (p - 1);
    return r;
}

struct OrbitInfo {
    Subspace representative;  // canonical form
    std::uint64_t size = 0;
    int floor_m = -1, floor_d = -1;  // minimal cover of H/representative
};

struct CensusReport {
    std::int64_t p = 0;
    int d = 0, s = 0, n = 0;
    mpz_class subspace_count;
    std::uint64_t orbit_count = 0;
    Rational lower_bound, effective_bound;
    std::vector<OrbitInfo> orbits;  // ordered by canonical representative
    bool stable_regime = false;     // good-pair conditions hold for (n, d)
    std::uint64_t validated_pairs = 0;
    std::uint64_t workers = 1;
};

struct CensusOptions {
    std::uint64_t max_subspaces = 1000000;
    std::uint64_t max_field = 531441;  // 3^12
    int validate_pairs = 0;            // cross-check this many sampled pairs with iso_test
    bool with_floors = true;           // run recognition per representative
    std::uint64_t seed = kDefaultSeed;
};

/// Enumerates all codimension-s subspaces of K = GF(p^d), buckets them by
/// canonical orbit representative, and optionally cross-validates the
/// partition against the isomorphism test on the corresponding quotients.
inline CensusReport run_census(std::int64_t p, int d, int s, const CensusOptions& opt = {}) {
    if (s < 0 || s > d) throw error("run_census: need 0 <= s <= d");
    CensusReport rep;
    rep.p = p;
    rep.d = d;
    rep.s = s;
    rep.n = 2 * d + s;
    rep.subspace_count = gaussian_binomial(d, d - s, p);
    rep.lower_bound = census_lower_bound(p, d, s);
    rep.effective_bound = census_effective_bound(p, d, s);
    rep.stable_regime = good_pair_conditions(rep.n, d);
    if (rep.subspace_count > mpz_class(static_cast<unsigned long>(opt.max_subspaces)))
        throw budget_error("run_census: " + rep.subspace_count.get_str() + " subspaces exceed the budget " +
                           std::to_string(opt.max_subspaces));
    auto ctx = make_field(p, d);
    if (ctx->order() > opt.max_field) throw budget_error("run_census: |K| exceeds the budget");

    std::vector<Subspace> all = enumerate_subspaces(p, d, d - s, opt.max_subspaces);

    // canonicalize (partitioned across workers; merged in enumeration order)
    std::vector<Subspace> canon(all.size());
    rep.workers = worker_count();
    parallel_chunks(all.size(), [&](std::size_t lo, std::size_t hi, unsigned) {
        for (std::size_t i = lo; i < hi; ++i) canon[i] = orbit_canonical(*ctx, all[i], opt.max_field);
    });
    std::map<std::vector<std::int64_t>, OrbitInfo> buckets;
    std::map<std::vector<std::int64_t>, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto key = canon[i].basis.a;
        key.push_back(canon[i].dim());
        auto it = buckets.find(key);
        if (it == buckets.end()) {
            OrbitInfo info;
            info.representative = canon[i];
            info.size = 1;
            buckets.emplace(key, std::move(info));
        } else {
            ++it->second.size;
        }
        members[key].push_back(i);
    }
    rep.orbit_count = buckets.size();

    // orbit sizes divide |Gal ⋉ K^×|
    std::uint64_t group_order = static_cast<std::uint64_t>(d) * (ctx->order() - 1);
    for (auto& [key, info] : buckets)
        if (group_order % info.size != 0)
            throw error("run_census: orbit size " + std::to_string(info.size) +
                        " does not divide the acting group order");

    // recognition per representative
    if (opt.with_floors) {
        Class2Group h = heisenberg(1, *ctx);
        for (auto& [key, info] : buckets) {
            if (info.representative.dim() == d) {
                info.floor_m = 0;  // quotient by all of H' is abelian; skip
                continue;
            }
            RecognitionResult rec = recognize(quotient_group(h, info.representative));
            if (!rec.is_quotient) throw error("run_census: representative failed recognition");
            info.floor_m = rec.desc.m;
            info.floor_d = rec.desc.d;
            if (rep.stable_regime && !(rec.desc.m == 1 && rec.desc.d == d))
                throw error("run_census: stable regime violated: representative floor is H_" +
                            std::to_string(rec.desc.m) + " over degree " + std::to_string(rec.desc.d));
        }
    }

    // sampled cross-validation: intra-orbit pairs must be isomorphic, one
    // representative pair per orbit pair must not be
    if (opt.validate_pairs > 0) {
        Class2Group h = heisenberg(1, *ctx);
        Rng rng(opt.seed);
        std::vector<const std::vector<std::size_t>*> orbit_members;
        for (auto& [key, v] : members) orbit_members.push_back(&v);
        for (int t = 0; t < opt.validate_pairs; ++t) {
            std::size_t oi = static_cast<std::size_t>(rand_below(rng, static_cast<std::int64_t>(orbit_members.size())));
            std::size_t oj = static_cast<std::size_t>(rand_below(rng, static_cast<std::int64_t>(orbit_members.size())));
            const auto& mi = *orbit_members[oi];
            const auto& mj = *orbit_members[oj];
            const Subspace& a = all[mi[static_cast<std::size_t>(rand_below(rng, static_cast<std::int64_t>(mi.size())))]];
            const Subspace& b = all[mj[static_cast<std::size_t>(rand_below(rng, static_cast<std::int64_t>(mj.size())))]];
            if (a.dim() == d || b.dim() == d) continue;  // abelian quotients out of scope
            IsoResult r = iso_test(quotient_group(h, a), quotient_group(h, b));
            if (!r.decided) throw error("run_census: validation pair failed recognition");
            if (r.isomorphic != (oi == oj))
                throw error("run_census: iso_test disagrees with the orbit partition");
            ++rep.validated_pairs;
        }
    }

    for (auto& [key, info] : buckets) rep.orbits.push_back(std::move(info));
    return rep;
}

}  // namespace heiq
