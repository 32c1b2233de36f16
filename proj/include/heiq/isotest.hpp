#pragma once

// Isomorphism testing for recognized quotients: the deterministic
// subspace-scaling solver over a field extension, the Galois loop assembling
// verified witnesses, and two brute-force oracles used to validate the fast
// path (direct orbit enumeration, and exhaustive pseudo-isometry search).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiq/error.hpp"
#include "heiq/group.hpp"
#include "heiq/recognize.hpp"
#include "heiq/util.hpp"

namespace heiq {

// ---------------------------------------------------------------------------
// The scaling solver: given Z/p-subspaces U, V of K, find c with U·c = V
// ---------------------------------------------------------------------------

/// Solves u_i·c = sum_j alpha_ij v_j as a Z/p-linear system in (c, alpha).
/// Any solution with c != 0 scales U onto V exactly (c is then invertible and
/// the dimensions match). Returns the deterministic representative: the last
/// row of the reduced echelon basis of the c-block of the solution space,
/// which is the lexicographically smallest valid scalar.
inline std::optional<FieldElement> subspace_scale_solver(const FieldCtx& ctx, const Subspace& u,
                                                         const Subspace& v) {
    if (u.ambient != ctx.d || v.ambient != ctx.d) throw mismatch_error("scale solver: ambient must be K");
    if (u.dim() != v.dim()) return std::nullopt;
    int s = u.dim(), d = ctx.d;
    PrimeField k{ctx.p};
    if (s == 0) return fe_one(ctx);
    // unknowns: c (d coords) then alpha (s·s); equations: d per basis vector
    Mat sys(d + s * s, static_cast<int>(s) * d, 0);
    for (int i = 0; i < s; ++i) {
        FieldElement ui(&ctx, std::vector<std::int64_t>(u.basis.a.begin() + static_cast<std::size_t>(i) * d,
                                                        u.basis.a.begin() + static_cast<std::size_t>(i + 1) * d));
        Mat mu = mult_matrix(ui);  // c ↦ coords of u_i·c
        for (int a = 0; a < d; ++a)
            for (int t = 0; t < d; ++t) sys.at(a, i * d + t) = mu.at(a, t);
        for (int j = 0; j < s; ++j)
            for (int t = 0; t < d; ++t)
                sys.at(d + i * s + j, i * d + t) = k.neg(v.basis.at(j, t));
    }
    Mat sol = kernel(k, sys);  // rows: (c | alpha) solutions
    // c-block of the solution space, in canonical echelon form
    Mat cblock(sol.rows, d, 0);
    for (int r = 0; r < sol.rows; ++r)
        for (int t = 0; t < d; ++t) cblock.at(r, t) = sol.at(r, t);
    Echelon<PrimeField> ce = rref(k, std::move(cblock));
    if (ce.mat.rows == 0) return std::nullopt;  // the solution space forces c = 0
    // last echelon row: the nonzero solution with the most leading zeros
    std::vector<std::int64_t> c(ce.mat.a.end() - d, ce.mat.a.end());
    return FieldElement(&ctx, std::move(c));
}

/// Image of a Z/p-subspace of K under x ↦ frobenius^i(x)·c.
inline Subspace subspace_semilinear_image(const FieldCtx& ctx, const Subspace& m, int i,
                                          const FieldElement& c) {
    PrimeField k{ctx.p};
    Mat f = flatten_frobenius(ctx, 1, i);
    Mat mc = mult_matrix(c);
    return subspace_apply(m, mat_mul(k, f, mc));
}

// ---------------------------------------------------------------------------
// The isomorphism test
// ---------------------------------------------------------------------------

struct IsoWitness {
    int galois_exponent = 0;  // 0 <= i < d
    FieldElement scalar;      // c in K^×
    GroupIso iso;             // the assembled verified isomorphism G1 -> G2
};

struct IsoResult {
    bool decided = false;      // false only when recognition failed
    bool isomorphic = false;
    std::string reason;        // for negative or undecided answers
    std::optional<IsoWitness> witness;
    std::vector<std::string> transcript;  // one line per Galois exponent
    RecognitionResult rec1, rec2;
};

/// Right inverse of a surjective map given by rows (ambient × target):
/// returns r (target × ambient) with r·m = identity on the target.
inline Mat right_inverse(std::int64_t p, const Mat& m) {
    PrimeField k{p};
    Mat r(m.cols, m.rows, 0);
    for (int t = 0; t < m.cols; ++t) {
        std::vector<std::int64_t> rhs(m.cols, 0);
        rhs[t] = 1;
        auto sol = solve(k, m, rhs);
        if (!sol.consistent) throw error("right_inverse: map is not surjective");
        for (int a = 0; a < m.rows; ++a) r.at(t, a) = sol.particular[a];
    }
    return r;
}

/// Full isomorphism test: recognize both groups, compare floors, then loop
/// over the Galois exponents solving for a scalar that carries one kernel to
/// the other. A positive answer ships a verified isomorphism; the negative
/// answer ships the per-exponent no-solution transcript.
inline IsoResult iso_test(const Class2Group& g1, const Class2Group& g2) {
    IsoResult out;
    out.rec1 = recognize(g1);
    out.rec2 = recognize(g2);
    if (!out.rec1.is_quotient || !out.rec2.is_quotient) {
        out.reason = "recognition failed: " +
                     (out.rec1.is_quotient ? out.rec2.failed_stage : out.rec1.failed_stage);
        return out;
    }
    out.decided = true;
    const QuotientDescriptor& d1 = out.rec1.desc;
    const QuotientDescriptor& d2 = out.rec2.desc;
    if (g1.order() != g2.order()) {
        out.reason = "order mismatch";
        return out;
    }
    if (d1.p != d2.p || d1.m != d2.m || d1.d != d2.d) {
        out.reason = "minimal covers differ: H_" + std::to_string(d1.m) + "(GF(" + std::to_string(d1.p) +
                     "^" + std::to_string(d1.d) + ")) vs H_" + std::to_string(d2.m) + "(GF(" +
                     std::to_string(d2.p) + "^" + std::to_string(d2.d) + "))";
        return out;
    }
    const FieldCtx& ctx = *d1.field;
    PrimeField k{ctx.p};
    Class2Group h = heisenberg(d1.m, ctx);
    for (int i = 0; i < ctx.d; ++i) {
        Subspace mi = subspace_semilinear_image(ctx, d1.kernel_m, i, fe_one(ctx));
        auto c = subspace_scale_solver(ctx, mi, d2.kernel_m);
        if (!c) {
            out.transcript.push_back("sigma^" + std::to_string(i) + ": no scalar");
            continue;
        }
        out.transcript.push_back("sigma^" + std::to_string(i) + ": c found");
        // automorphism of H: u ↦ u^(σ^i)·diag(I_m, c·I_m), s ↦ s^(σ^i)·c
        ExtField kf{&ctx};
        KMat diag = make_identity(kf, 2 * d1.m);
        for (int a = d1.m; a < 2 * d1.m; ++a) diag.at(a, a) = *c;
        Mat phi_v = mat_mul(k, flatten_frobenius(ctx, 2 * d1.m, i), flatten_kmatrix(ctx, diag));
        Mat phi_w = mat_mul(k, flatten_frobenius(ctx, 1, i), mult_matrix(*c));
        // induced map G1 -> G2: pull back through epi1, apply Phi, push through epi2
        Mat f = mat_mul(k, inverse(k, d1.epi_v), mat_mul(k, phi_v, d2.epi_v));
        Mat fhat = mat_mul(k, right_inverse(ctx.p, d1.epi_w), mat_mul(k, phi_w, d2.epi_w));
        GroupIso iso{f, fhat, std::nullopt};
        IsoCheck chk = check_isomorphism(g1, g2, iso);
        if (!chk.ok) throw error("iso_test: assembled witness failed verification: " + chk.failure);
        out.isomorphic = true;
        out.witness = IsoWitness{i, *c, std::move(iso)};
        return out;
    }
    out.reason = "kernels lie in different Galois-scalar orbits";
    return out;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Exhaustively applies all d·(p^d − 1) semilinear scalings to M and tests
/// equality with N. Ground truth for the orbit structure on kernels.
inline bool oracle_orbit_test(const FieldCtx& ctx, const Subspace& m, const Subspace& n,
                              std::uint64_t budget = 531441 /* 3^12 */) {
    if (ctx.order() > budget)
        throw budget_error("oracle_orbit_test: |K| exceeds the budget");
    if (m.dim() != n.dim()) return false;
    for (int i = 0; i < ctx.d; ++i) {
        Subspace mi = subspace_semilinear_image(ctx, m, i, fe_one(ctx));
        for (std::uint64_t ci = 1; ci < ctx.order(); ++ci) {
            FieldElement c = fe_from_index(ctx, ci);
            if (subspace_apply(mi, mult_matrix(c)) == n) return true;
        }
    }
    return false;
}

/// Exhaustive pseudo-isometry search between two bimaps over Z/p: sweeps all
/// invertible f (rank-pruned row enumeration), solving for the unique fhat on
/// a spanning set of value pairs and verifying the rest. Ground truth for
/// isomorphism of the corresponding groups.
///
/// count_all = false stops at the first pseudo-isometry (existence oracle);
/// count_all = true returns the number of pairs (f, fhat) (the order of the
/// pseudo-isometry group when b1 = b2).
struct PseudoIsometrySearch {
    bool found = false;
    std::uint64_t count = 0;
    std::uint64_t candidates = 0;  // invertible f examined
};

inline PseudoIsometrySearch oracle_pseudo_isometry(const PBimap& b1, const PBimap& b2, std::int64_t p,
                                                   bool count_all = false,
                                                   std::uint64_t gl_budget = 30000000) {
    PseudoIsometrySearch res;
    if (b1.dim_v != b2.dim_v || b1.dim_w != b2.dim_w) return res;  // shape mismatch: no pseudo-isometry
    int n = b1.dim_v, w = b1.dim_w;
    // |GL(n, p)| guard
    mpz_class gl = 1;
    for (int i = 0; i < n; ++i) gl *= mpz_pow(p, static_cast<unsigned long>(n)) - mpz_pow(p, static_cast<unsigned long>(i));
    if (gl > mpz_class(static_cast<unsigned long>(gl_budget)))
        throw budget_error("oracle_pseudo_isometry: |GL(" + std::to_string(n) + "," + std::to_string(p) +
                           ")| = " + gl.get_str() + " exceeds the budget");
    PrimeField k{p};
    // spanning pairs of b1 values: choose basis pairs whose value rows span W
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.push_back({i, j});
    Mat vals(static_cast<int>(pairs.size()), w, 0);
    for (std::size_t r = 0; r < pairs.size(); ++r)
        for (int t = 0; t < w; ++t) vals.at(static_cast<int>(r), t) = b1.at(pairs[r].first, pairs[r].second, t);
    Echelon<PrimeField> ve = rref(k, vals);
    if (static_cast<int>(ve.pivots.size()) < w)
        throw error("oracle_pseudo_isometry: b1 values do not span W");
    // pick w pairs giving an invertible value matrix, greedily
    std::vector<std::pair<int, int>> span_pairs;
    Mat picked(0, w, 0);
    for (std::size_t r = 0; r < pairs.size() && static_cast<int>(span_pairs.size()) < w; ++r) {
        Mat trial = picked;
        Mat one(1, w, 0);
        for (int t = 0; t < w; ++t) one.at(0, t) = vals.at(static_cast<int>(r), t);
        trial = vstack(trial, one);
        if (rank(k, trial) > picked.rows) {
            picked = std::move(trial);
            span_pairs.push_back(pairs[r]);
        }
    }
    Mat picked_inv = inverse(k, picked);
    // verification pairs: everything with a nonzero b1 value, plus zero-value ones
    // (those must stay zero under any fhat)
    struct PairCheck { int i, j; bool zero; };
    std::vector<PairCheck> checks;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool z = true;
            for (int t = 0; t < w; ++t) z &= (b1.at(i, j, t) == 0);
            checks.push_back({i, j, z});
        }

    // enumerate invertible f row by row with rank pruning; the echelon of the
    // accepted prefix rows is maintained incrementally per depth
    std::vector<std::vector<std::int64_t>> ech_rows(static_cast<std::size_t>(n));   // reduced rows per depth
    std::vector<int> ech_pivot(static_cast<std::size_t>(n), -1);
    auto reduces_to_zero = [&](int depth, std::vector<std::int64_t>& row) {
        for (int r = 0; r < depth; ++r) {
            std::int64_t c = row[ech_pivot[r]];
            if (c == 0) continue;
            const auto& er = ech_rows[r];
            for (int t = 0; t < n; ++t) {
                std::int64_t v = row[t] - c * er[t] % p;
                row[t] = v < 0 ? v + p : v >= p ? v - p : v;
            }
        }
        for (int t = 0; t < n; ++t)
            if (row[t] != 0) return false;
        return true;
    };
    std::uint64_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= static_cast<std::uint64_t>(p);

    // b2 as w Gram matrices for fast evaluation
    std::vector<Mat> gram2(w, Mat(n, n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < w; ++t) gram2[t].at(i, j) = b2.at(i, j, t);

    Mat f(n, n, 0);
    std::vector<std::uint64_t> stack_code(static_cast<std::size_t>(n), 0);
    int depth = 0;
    while (depth >= 0) {
        if (stack_code[depth] == pn) {
            stack_code[depth] = 0;
            --depth;
            if (depth >= 0) ++stack_code[depth];
            continue;
        }
        // decode row `depth`
        std::uint64_t code = stack_code[depth];
        std::vector<std::int64_t> row(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) {
            std::int64_t v = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(p));
            f.at(depth, c) = v;
            row[c] = v;
            code /= static_cast<std::uint64_t>(p);
        }
        // rank check: does the new row extend the span of the accepted prefix?
        if (reduces_to_zero(depth, row)) {
            ++stack_code[depth];
            continue;
        }
        if (depth + 1 < n) {
            int piv = 0;
            while (row[piv] == 0) ++piv;
            std::int64_t inv = mod_inv(row[piv], p);
            for (int t = 0; t < n; ++t) row[t] = row[t] * inv % p;
            ech_pivot[depth] = piv;
            ech_rows[depth] = std::move(row);
            ++depth;
            continue;
        }
        // full invertible candidate
        ++res.candidates;
        // fhat from the spanning pairs: rows b2(f_i, f_j) for (i,j) in span_pairs
        Mat target(w, w, 0);
        bool ok = true;
        auto value2 = [&](int i, int j, int t) {
            // f_i · gram2[t] · f_j^T; entries are < p, so the raw sums stay
            // far below 2^63 and one reduction at the end suffices
            std::int64_t acc = 0;
            const std::int64_t* gr = gram2[t].a.data();
            const std::int64_t* fj = f.a.data() + static_cast<std::size_t>(j) * n;
            for (int a = 0; a < n; ++a) {
                std::int64_t fia = f.at(i, a);
                if (fia == 0) continue;
                std::int64_t inner = 0;
                const std::int64_t* ga = gr + static_cast<std::size_t>(a) * n;
                for (int c = 0; c < n; ++c) inner += ga[c] * fj[c];
                acc += fia * inner;
            }
            return mod_reduce(acc, p);
        };
        for (int r = 0; r < w; ++r)
            for (int t = 0; t < w; ++t) target.at(r, t) = value2(span_pairs[r].first, span_pairs[r].second, t);
        Mat fhat = mat_mul(k, picked_inv, target);
        bool fhat_inv = w == 1 ? fhat.a[0] != 0
                      : w == 2 ? (fhat.a[0] * fhat.a[3] - fhat.a[1] * fhat.a[2]) % p != 0
                               : try_inverse(k, fhat).has_value();
        if (fhat_inv) {
            for (const auto& pc : checks) {
                for (int t = 0; t < w && ok; ++t) {
                    std::int64_t lhs = value2(pc.i, pc.j, t);
                    std::int64_t rhs = 0;
                    if (!pc.zero)
                        for (int l = 0; l < w; ++l) rhs += b1.at(pc.i, pc.j, l) * fhat.at(l, t);
                    if (lhs != mod_reduce(rhs, p)) ok = false;
                }
                if (!ok) break;
            }
        } else {
            ok = false;
        }
        if (ok) {
            res.found = true;
            ++res.count;
            if (!count_all) return res;
        }
        ++stack_code[depth];
    }
    return res;
}

}  // namespace heiq
