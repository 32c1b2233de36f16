#pragma once

// Group-theoretic invariant suite for class-2 exponent-p groups: the Camina
// property, centralizer orders and class sizes through the rank formula,
// the character-table invariant pair, direct/central indecomposability, and
// the order components of the automorphism group.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "heiq/centroid.hpp"
#include "heiq/group.hpp"
#include "heiq/isotest.hpp"
#include "heiq/recognize.hpp"
#include "heiq/util.hpp"

namespace heiq {

/// rank of the map v ↦ b(u, v) for a fixed u.
inline int pairing_rank(const Class2Group& g, const std::vector<std::int64_t>& u) {
    PrimeField k{g.p()};
    Mat m(g.dim_v(), g.dim_w(), 0);
    const PBimap& b = g.comm();
    for (int j = 0; j < g.dim_v(); ++j)
        for (int t = 0; t < g.dim_w(); ++t) {
            std::int64_t acc = 0;
            for (int i = 0; i < g.dim_v(); ++i) acc += u[i] * b.at(i, j, t) % g.p();
            m.at(j, t) = mod_reduce(acc, g.p());
        }
    return rank(k, m);
}

struct CaminaResult {
    bool is_camina = false;
    bool exhaustive = false;  // all nonzero u swept (definitive)
    std::uint64_t checked = 0;
};

/// g^G = gG' for every noncentral g: equivalently the pairing with every
/// nonzero u is onto W. Exhaustive when p^dimV fits the budget; otherwise a
/// spanning-set plus seeded-random sweep (flagged as non-exhaustive).
inline CaminaResult is_camina(const Class2Group& g, std::uint64_t budget = 59049 /* 3^10 */,
                              std::uint64_t seed = kDefaultSeed) {
    CaminaResult res;
    ShapeCertificate cert = center_and_derived(g);
    if (!cert.ok) throw error("is_camina: " + cert.violation);
    mpz_class total = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_v()));
    if (total <= mpz_class(static_cast<unsigned long>(budget))) {
        res.exhaustive = true;
        std::uint64_t count = total.get_ui();
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            std::vector<std::int64_t> u(g.dim_v());
            std::uint64_t v = idx;
            for (int i = 0; i < g.dim_v(); ++i) {
                u[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(g.p()));
                v /= static_cast<std::uint64_t>(g.p());
            }
            ++res.checked;
            if (pairing_rank(g, u) != g.dim_w()) return res;
        }
        res.is_camina = true;
        return res;
    }
    // spanning set then seeded random
    for (int i = 0; i < g.dim_v(); ++i) {
        std::vector<std::int64_t> u(g.dim_v(), 0);
        u[i] = 1;
        ++res.checked;
        if (pairing_rank(g, u) != g.dim_w()) return res;
    }
    Rng rng(seed);
    for (int t = 0; t < 64; ++t) {
        std::vector<std::int64_t> u(g.dim_v());
        bool nz = false;
        for (auto& x : u) {
            x = rand_below(rng, g.p());
            nz |= (x != 0);
        }
        if (!nz) continue;
        ++res.checked;
        if (pairing_rank(g, u) != g.dim_w()) return res;
    }
    res.is_camina = true;  // caveat: not exhaustive above the budget
    return res;
}

struct ClassData {
    // noncentral ranks: rank r occurs for `count` u-values; each contributes
    // p^dimW elements with centralizer order p^(dimV - r + dimW)
    std::map<int, std::uint64_t> rank_counts;
    mpz_class central_elements;    // centralizer = G
    bool uniform = false;          // all noncentral centralizers equal
    mpz_class noncentral_centralizer_order;  // when uniform
};

/// Centralizer orders via |C_G(g)| = p^(dimV − rank + dimW) for g = (u; s).
inline ClassData class_data(const Class2Group& g, std::uint64_t budget = 59049) {
    ClassData out;
    mpz_class total = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_v()));
    if (total > mpz_class(static_cast<unsigned long>(budget)))
        throw budget_error("class_data: u-sweep exceeds the budget");
    out.central_elements = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_w()));
    std::uint64_t count = total.get_ui();
    for (std::uint64_t idx = 1; idx < count; ++idx) {
        std::vector<std::int64_t> u(g.dim_v());
        std::uint64_t v = idx;
        for (int i = 0; i < g.dim_v(); ++i) {
            u[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(g.p()));
            v /= static_cast<std::uint64_t>(g.p());
        }
        ++out.rank_counts[pairing_rank(g, u)];
    }
    out.uniform = out.rank_counts.size() == 1;
    if (out.uniform) {
        int r = out.rank_counts.begin()->first;
        out.noncentral_centralizer_order = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_v() - r + g.dim_w()));
    }
    return out;
}

struct CharacterInvariant {
    mpz_class index_of_derived;  // [G : G']
    mpz_class derived_order;     // |G'|
    bool character_determining = false;  // true for Camina class-2 groups
};

inline CharacterInvariant character_invariant(const Class2Group& g, const CaminaResult& camina) {
    CharacterInvariant out;
    out.index_of_derived = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_v()));
    out.derived_order = mpz_pow(g.p(), static_cast<unsigned long>(g.dim_w()));
    out.character_determining = camina.is_camina;
    return out;
}

struct Indecomposability {
    bool directly_indecomposable = false;
    bool centrally_indecomposable = false;
    int central_decomposition_size = 0;  // m of the minimal cover
    InvolutionType type = InvolutionType::symplectic;
};

/// Direct indecomposability from the centroid being a field; central
/// indecomposability exactly when the minimal cover has m = 1; otherwise the
/// fully refined central decomposition has m members.
inline Indecomposability indecomposability(const Class2Group& g, const RecognitionResult& rec) {
    if (!rec.is_quotient) throw error("indecomposability: group is not a recognized quotient");
    Indecomposability out;
    CentroidRing ring = compute_centroid(g.comm(), g.p());
    FieldCert cert = centroid_is_field(ring);
    out.directly_indecomposable = cert.is_field;
    out.central_decomposition_size = rec.desc.m;
    out.centrally_indecomposable = (rec.desc.m == 1);
    out.type = rec.desc.involution;
    return out;
}

struct AutReport {
    int m = 0, d = 0, n = 0;
    mpz_class sp_order;        // |Sp(2m, p^d)|
    mpz_class hom_part_order;  // p^(2md·(n−2md))
    std::vector<std::pair<int, int>> possible_quotient_shapes;  // (e, f): Z_e ⋉ Z_{p^f−1}
    // exact mode: the stabilizer data of the kernel
    bool exact = false;
    int stabilizer_subfield_degree = 0;  // [k : Z/p] for k = {s : Ms ⊆ M}
    int galois_stabilizer_order = 0;     // |{i : (Mσ^i)c = M for some c}|
};

inline mpz_class sp_order(int m, std::int64_t p, int d) {
    // |Sp(2m, q)| = q^(m²)·prod_{i=1..m} (q^(2i) − 1), q = p^d
    mpz_class q = mpz_pow(p, static_cast<unsigned long>(d));
    mpz_class out = 1;
    for (int i = 0; i < m * m * d; ++i) out *= p;
    for (int i = 1; i <= m; ++i) {
        mpz_class qi;
        mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(2 * i));
        out *= qi - 1;
    }
    return out;
}

/// Order components of Aut G for an indigenous quotient of order p^n: the
/// centralizer-of-G' part is Sp(2m,K) extended by p^(2md(n−2md)) central
/// shears; the quotient Aut G / C is constrained to Z_e ⋉ k^× with e | d and
/// |k| = p^f, f | gcd(n, d).
inline AutReport aut_components(const Class2Group& g, const RecognitionResult& rec, bool exact = false) {
    if (!rec.is_quotient) throw error("aut_components: group is not a recognized quotient");
    AutReport out;
    out.m = rec.desc.m;
    out.d = rec.desc.d;
    out.n = g.dim_v() + g.dim_w();
    out.sp_order = sp_order(out.m, g.p(), out.d);
    out.hom_part_order = mpz_pow(g.p(), static_cast<unsigned long>(2 * out.m * out.d * (out.n - 2 * out.m * out.d)));
    int gcd_nd = std::gcd(out.n, out.d);
    for (int e = 1; e <= out.d; ++e) {
        if (out.d % e != 0) continue;
        for (int f = 1; f <= gcd_nd; ++f) {
            if (gcd_nd % f != 0) continue;
            out.possible_quotient_shapes.push_back({e, f});
        }
    }
    if (exact) {
        out.exact = true;
        const FieldCtx& ctx = *rec.desc.field;
        const Subspace& m = rec.desc.kernel_m;
        // k = {s : Ms ⊆ M}: largest subfield degree f | d whose generator maps M into M
        out.stabilizer_subfield_degree = 1;
        for (int f = out.d; f >= 1; --f) {
            if (out.d % f != 0) continue;
            // find a generator of the subfield GF(p^f) inside K: an element
            // fixed by frobenius^f whose minimal polynomial has degree f
            FieldElement gen = fe_zero(ctx);
            bool found = false;
            for (std::uint64_t i = 2; i < ctx.order() && !found; ++i) {
                FieldElement s = fe_from_index(ctx, i);
                if (!fe_in_subfield(s, f)) continue;
                if (poly_deg(fe_min_poly(s)) == f) {
                    gen = s;
                    found = true;
                }
            }
            if (!found) continue;  // f = 1 handled below
            Subspace img = subspace_apply(m, mult_matrix(gen));
            if (m.contains(img)) {
                out.stabilizer_subfield_degree = f;
                break;
            }
        }
        out.galois_stabilizer_order = 0;
        for (int i = 0; i < out.d; ++i) {
            Subspace mi = subspace_semilinear_image(ctx, m, i, fe_one(ctx));
            if (subspace_scale_solver(ctx, mi, m)) ++out.galois_stabilizer_order;
        }
    }
    return out;
}

/// Everything above in one bundle, as the CLI and census emit it.
struct InvariantProfile {
    std::int64_t p = 0;
    int n = 0;  // log_p |G|
    int exponent = 0;
    CaminaResult camina;
    ClassData classes;
    CharacterInvariant character;
    Indecomposability indec;
    bool recognized = false;
    int floor_m = 0, floor_d = 0;
};

inline InvariantProfile invariant_profile(const Class2Group& g, std::uint64_t budget = 59049) {
    InvariantProfile out;
    out.p = g.p();
    out.n = g.dim_v() + g.dim_w();
    out.exponent = static_cast<int>(g.p());  // exponent p by construction
    out.camina = is_camina(g, budget);
    out.classes = class_data(g, budget);
    out.character = character_invariant(g, out.camina);
    RecognitionResult rec = recognize(g);
    out.recognized = rec.is_quotient;
    if (rec.is_quotient) {
        out.floor_m = rec.desc.m;
        out.floor_d = rec.desc.d;
        out.indec = indecomposability(g, rec);
    }
    return out;
}

}  // namespace heiq
