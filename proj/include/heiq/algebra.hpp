#pragma once

// Shared machinery for finite-dimensional matrix algebras over Z/p given by
// a basis: coordinate solving, and the decision "is this commutative algebra
// a finite field?" together with an explicit isomorphism to GF(p^e).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiq/error.hpp"
#include "heiq/ff.hpp"
#include "heiq/linalg.hpp"
#include "heiq/util.hpp"

namespace heiq {

/// Coordinates of v in the row space of rows, if it lies there.
inline std::optional<std::vector<std::int64_t>> coords_in_rows(std::int64_t p, const Mat& rows,
                                                               const std::vector<std::int64_t>& v) {
    PrimeField k{p};
    auto sol = solve(k, rows, v);
    if (!sol.consistent) return std::nullopt;
    return sol.particular;
}

/// Certificate that a commutative algebra is a field, with the isomorphism
/// data: a generator r (its minimal polynomial is irreducible of full degree)
/// and a root rho of that polynomial in the canonical GF(p^e).
struct FieldCert {
    bool is_field = false;
    std::string reason;  // set when not a field or undecided
    int degree = 0;
    FieldCtxPtr ctx;                       // canonical GF(p^e)
    std::vector<std::int64_t> gen_coords;  // generator in the algebra basis
    Mat gen_rep;                           // its representing matrix
    Poly min_poly;
    FieldElement rho;  // root of min_poly in ctx
    Mat pow_coords;    // e×e: row i = algebra coordinates of r^i
    Mat pow_coords_inv;
    Mat rho_pow;  // e×e over Z/p: row i = coefficients of rho^i
    Mat rho_pow_inv;

    /// Algebra coordinates -> field element (sum of generator powers).
    FieldElement to_field(const std::vector<std::int64_t>& coords) const {
        PrimeField k{ctx->p};
        auto c = vec_mat(k, coords, pow_coords_inv);
        auto e = vec_mat(k, c, rho_pow);
        return FieldElement(ctx.get(), e);
    }

    /// Field element -> algebra coordinates.
    std::vector<std::int64_t> from_field(const FieldElement& v) const {
        PrimeField k{ctx->p};
        auto c = vec_mat(k, v.c, rho_pow_inv);
        return vec_mat(k, c, pow_coords);
    }
};

/// First root of an irreducible f in GF(p^e) (e = deg f), scanning elements
/// in index order. Deterministic; cost |K|·deg f, fine at desk scale.
inline FieldElement find_root(const FieldCtxPtr& ctx, const Poly& f) {
    for (std::uint64_t i = 0; i < ctx->order(); ++i) {
        FieldElement x = fe_from_index(*ctx, i);
        FieldElement acc = fe_zero(*ctx);
        FieldElement pw = fe_one(*ctx);
        for (std::size_t j = 0; j < f.size(); ++j) {
            acc = acc + fe_scale(pw, f[j]);
            pw = pw * x;
        }
        if (acc.is_zero()) return x;
    }
    throw error("find_root: no root found (polynomial not irreducible of matching degree?)");
}

/// Decides whether the commutative algebra spanned by `reps` (a faithful
/// matrix representation; reps.size() = algebra dimension) is a field.
///
/// A candidate element with a reducible minimal polynomial certifies "not a
/// field" (it yields an idempotent or a nilpotent); a candidate whose minimal
/// polynomial is irreducible of full degree certifies "field". Candidates are
/// tried deterministically: basis, pairwise sums, 4·dim seeded random
/// combinations, then exhaustively when |algebra| <= exhaustive_budget.
inline FieldCert detect_field(std::int64_t p, const std::vector<Mat>& reps,
                              std::uint64_t exhaustive_budget = 59049 /* 3^10 */,
                              std::uint64_t seed = kDefaultSeed) {
    FieldCert out;
    int n = static_cast<int>(reps.size());
    if (n == 0) {
        out.reason = "zero algebra";
        return out;
    }
    int nn = reps[0].rows;
    PrimeField k{p};

    auto rep_of = [&](const std::vector<std::int64_t>& coords) {
        Mat m = make_zero(k, nn, nn);
        for (int i = 0; i < n; ++i)
            if (coords[i] != 0) m = mat_add(k, m, mat_scale(k, reps[i], coords[i]));
        return m;
    };

    // examine one candidate; returns true when settled either way
    auto examine = [&](const std::vector<std::int64_t>& coords) -> bool {
        Mat m = rep_of(coords);
        Poly mp = minimal_polynomial(p, m);
        if (poly_deg(mp) < 1) return false;  // zero element
        if (!is_irreducible(mp, p)) {
            out.is_field = false;
            out.reason = "element with reducible minimal polynomial " + poly_to_string(mp);
            return true;
        }
        if (poly_deg(mp) != n) return false;  // generates a proper subfield
        // found a generator: build the isomorphism
        out.is_field = true;
        out.degree = n;
        out.ctx = make_field(p, n);
        out.gen_coords = coords;
        out.gen_rep = m;
        out.min_poly = mp;
        out.rho = find_root(out.ctx, mp);
        out.rho_pow = Mat(n, n, 0);
        FieldElement pw = fe_one(*out.ctx);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) out.rho_pow.at(i, j) = pw.c[j];
            pw = pw * out.rho;
        }
        out.rho_pow_inv = inverse(k, out.rho_pow);
        // coordinates of generator powers in the algebra basis
        Mat vec_basis(n, nn * nn, 0);
        for (int i = 0; i < n; ++i)
            for (std::size_t idx = 0; idx < reps[i].a.size(); ++idx)
                vec_basis.at(i, static_cast<int>(idx)) = reps[i].a[idx];
        out.pow_coords = Mat(n, n, 0);
        Mat acc = make_identity(k, nn);
        for (int i = 0; i < n; ++i) {
            std::vector<std::int64_t> v(acc.a);
            auto c = coords_in_rows(p, vec_basis, v);
            if (!c) throw error("detect_field: generator power escapes the algebra (basis not closed?)");
            for (int j = 0; j < n; ++j) out.pow_coords.at(i, j) = (*c)[j];
            acc = mat_mul(k, acc, m);
        }
        out.pow_coords_inv = inverse(k, out.pow_coords);
        return true;
    };

    // phase 1: basis elements
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> c(n, 0);
        c[i] = 1;
        if (examine(c)) return out;
    }
    // phase 2: pairwise sums
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<std::int64_t> c(n, 0);
            c[i] = 1;
            c[j] = 1;
            if (examine(c)) return out;
        }
    // phase 3: seeded random combinations
    Rng rng(seed);
    for (int t = 0; t < 4 * n; ++t) {
        std::vector<std::int64_t> c(n);
        bool nonzero = false;
        for (auto& v : c) {
            v = rand_below(rng, p);
            nonzero |= (v != 0);
        }
        if (nonzero && examine(c)) return out;
    }
    // phase 4: exhaustive sweep when the algebra is small enough
    mpz_class size = mpz_pow(p, static_cast<unsigned long>(n));
    if (size <= mpz_class(static_cast<unsigned long>(exhaustive_budget))) {
        std::uint64_t total = size.get_ui();
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            std::vector<std::int64_t> c(n);
            std::uint64_t v = idx;
            for (int i = 0; i < n; ++i) {
                c[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(p));
                v /= static_cast<std::uint64_t>(p);
            }
            if (examine(c)) return out;
        }
        out.is_field = false;
        out.reason = "exhausted: no element has an irreducible minimal polynomial of full degree";
        return out;
    }
    throw budget_error("detect_field: undecided after random trials and algebra too large to sweep");
}

}  // namespace heiq
