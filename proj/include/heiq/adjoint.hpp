#pragma once

// The adjoint ring of a bimap with its exchange involution (f,g) ↦ (g,f),
// simplicity/irreducibility certification, the center field and the induced
// K-structure on V, involution classification, the tensor product V ⊗_A V
// with its canonical projection onto W, and ⊥-decompositions.

#include <cstdint>
#include <string>
#include <vector>

#include "heiq/algebra.hpp"
#include "heiq/bimap.hpp"
#include "heiq/error.hpp"
#include "heiq/linalg.hpp"

namespace heiq {

struct AdjointPair {
    Mat f;  // action on the left factor
    Mat g;  // action on the right factor (opposite ring)
};

struct StarAlgebra {
    std::int64_t p = 0;
    int dim_v = 0;
    std::vector<AdjointPair> basis;
    Mat vec_basis;  // rows = vectorized (f | g)

    int dim() const { return static_cast<int>(basis.size()); }

    static AdjointPair star(const AdjointPair& a) { return {a.g, a.f}; }

    /// (f1,g1)(f2,g2) = (f1 f2, g2 g1): the right factor composes opposite.
    AdjointPair mul(const AdjointPair& a, const AdjointPair& b) const {
        PrimeField k{p};
        return {mat_mul(k, a.f, b.f), mat_mul(k, b.g, a.g)};
    }

    bool contains(const AdjointPair& a) const {
        std::vector<std::int64_t> v(a.f.a);
        v.insert(v.end(), a.g.a.begin(), a.g.a.end());
        return coords_in_rows(p, vec_basis, v).has_value();
    }

    std::vector<std::int64_t> coords_of(const AdjointPair& a) const {
        std::vector<std::int64_t> v(a.f.a);
        v.insert(v.end(), a.g.a.begin(), a.g.a.end());
        auto c = coords_in_rows(p, vec_basis, v);
        if (!c) throw error("StarAlgebra: element outside the algebra");
        return *c;
    }

    AdjointPair from_coords(const std::vector<std::int64_t>& c) const {
        PrimeField k{p};
        AdjointPair out{make_zero(k, dim_v, dim_v), make_zero(k, dim_v, dim_v)};
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (c[i] == 0) continue;
            out.f = mat_add(k, out.f, mat_scale(k, basis[i].f, c[i]));
            out.g = mat_add(k, out.g, mat_scale(k, basis[i].g, c[i]));
        }
        return out;
    }
};

/// Solves b(u f, v) = b(u, v g) for all basis u, v. Requires b nondegenerate
/// (so the restriction to either side is faithful).
inline StarAlgebra compute_adjoint(const PBimap& b, std::int64_t p) {
    PrimeField k{p};
    if (b.dim_u != b.dim_v) throw error("compute_adjoint: bimap must have U = V");
    if (!is_nondegenerate(k, b)) throw error("compute_adjoint: degenerate bimap");
    int n = b.dim_v, w = b.dim_w;
    // unknowns: f (n²) then g (n²); equations indexed (i, j, t):
    //   sum_a f[i][a] c[a][j][t] - sum_a g[j][a] c[i][a][t] = 0
    Mat sys(n * n * w, 2 * n * n, 0);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < w; ++t) {
                for (int a = 0; a < n; ++a) {
                    sys.at(row, i * n + a) = b.at(a, j, t);
                    sys.at(row, n * n + j * n + a) = k.neg(b.at(i, a, t));
                }
                ++row;
            }
    Mat sol = kernel(k, transpose(sys));
    StarAlgebra alg;
    alg.p = p;
    alg.dim_v = n;
    alg.vec_basis = sol;
    for (int r = 0; r < sol.rows; ++r) {
        AdjointPair a{Mat(n, n, 0), Mat(n, n, 0)};
        for (int i = 0; i < n * n; ++i) {
            a.f.a[i] = sol.at(r, i);
            a.g.a[i] = sol.at(r, n * n + i);
        }
        alg.basis.push_back(std::move(a));
    }
    if (!alg.contains({make_identity(k, n), make_identity(k, n)}))
        throw error("compute_adjoint: identity pair missing (unreachable)");
    if (b.kind == BimapKind::alternating || b.kind == BimapKind::hermitian)
        for (const auto& a : alg.basis)
            if (!alg.contains(StarAlgebra::star(a)))
                throw error("compute_adjoint: not closed under the involution");
    return alg;
}

// ---------------------------------------------------------------------------
// Center, simplicity, involution type
// ---------------------------------------------------------------------------

struct CenterData {
    std::vector<AdjointPair> basis;
    std::vector<std::vector<std::int64_t>> coords;  // in the algebra basis
    FieldCert field;                                // center as a field, when it is one
};

/// The center {z : za = az for all a}, solved in algebra coordinates, plus
/// the field certificate. The center of a *-ring is *-stable as a set.
inline CenterData center_of(const StarAlgebra& alg, std::uint64_t seed = kDefaultSeed) {
    PrimeField k{alg.p};
    int n = alg.dim();
    // commutator of z = sum x_i basis_i with each basis_j must vanish;
    // it suffices to kill the f-components (the g-parts are determined).
    int nn = alg.dim_v * alg.dim_v;
    Mat sys(0, 0, 0);
    std::vector<std::vector<std::int64_t>> rows;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            Mat comm = mat_sub(k, mat_mul(k, alg.basis[i].f, alg.basis[j].f),
                               mat_mul(k, alg.basis[j].f, alg.basis[i].f));
            // column block j: coefficient of x_i in equation set j
            if (rows.empty()) rows.assign(n, std::vector<std::int64_t>());
            rows[i].insert(rows[i].end(), comm.a.begin(), comm.a.end());
        }
    }
    Mat m(n, n * nn, 0);
    for (int i = 0; i < n; ++i)
        for (std::size_t c = 0; c < rows[i].size(); ++c) m.at(i, static_cast<int>(c)) = rows[i][c];
    Mat sol = kernel(k, m);
    CenterData out;
    std::vector<Mat> reps;
    for (int r = 0; r < sol.rows; ++r) {
        std::vector<std::int64_t> c(sol.a.begin() + static_cast<std::size_t>(r) * n,
                                    sol.a.begin() + static_cast<std::size_t>(r + 1) * n);
        AdjointPair z = alg.from_coords(c);
        reps.push_back(z.f);
        out.basis.push_back(std::move(z));
        out.coords.push_back(std::move(c));
    }
    out.field = detect_field(alg.p, reps, 59049, seed);
    return out;
}

struct SimplicityCert {
    bool ok = false;
    std::string reason;
    CenterData center;
    int e = 0;  // [k : Z/p] for the center field k
    int n = 0;  // dim_k V
};

/// Irreducibility + simplicity. The orbit sweep A·v = V over a spanning set
/// is a fast necessary filter; the decisive certificate is: the center is a
/// field k and dim_k A = (dim_k V)², which forces A = End_k(V).
inline SimplicityCert is_simple_irreducible(const StarAlgebra& alg, std::uint64_t seed = kDefaultSeed) {
    PrimeField k{alg.p};
    SimplicityCert cert;
    int nv = alg.dim_v;
    for (int s = 0; s < nv; ++s) {
        // grow the orbit span of e_s under the basis actions
        Mat span(1, nv, 0);
        span.at(0, s) = 1;
        int r = 1;
        bool grew = true;
        while (grew && r < nv) {
            grew = false;
            Mat next = span;
            for (const auto& a : alg.basis) next = vstack(next, mat_mul(k, span, a.f));
            Echelon<PrimeField> e = rref(k, std::move(next));
            if (static_cast<int>(e.pivots.size()) > r) {
                r = static_cast<int>(e.pivots.size());
                span = std::move(e.mat);
                grew = true;
            }
        }
        if (r < nv) {
            cert.reason = "proper invariant subspace found from basis vector " + std::to_string(s);
            return cert;
        }
    }
    cert.center = center_of(alg, seed);
    if (!cert.center.field.is_field) {
        cert.reason = "center is not a field: " + cert.center.field.reason;
        return cert;
    }
    cert.e = cert.center.field.degree;
    if (nv % cert.e != 0) {
        cert.reason = "V is not a module over the center field";
        return cert;
    }
    cert.n = nv / cert.e;
    if (alg.dim() != cert.n * cert.n * cert.e) {
        cert.reason = "dim_k A = " + std::to_string(alg.dim() / cert.e) + " differs from (dim_k V)^2 = " +
                      std::to_string(cert.n * cert.n);
        return cert;
    }
    cert.ok = true;
    return cert;
}

enum class InvolutionType { orthogonal, unitary, exchange, symplectic };

inline const char* to_string(InvolutionType t) {
    switch (t) {
        case InvolutionType::orthogonal: return "orthogonal";
        case InvolutionType::unitary: return "unitary";
        case InvolutionType::exchange: return "exchange";
        default: return "symplectic";
    }
}

/// Classifies the involution on a simple algebra A ≅ M_n(k): if * moves the
/// center, unitary; otherwise the k-dimension of the *-symmetric space is
/// n(n+1)/2 (orthogonal) or n(n-1)/2 (symplectic). The exchange type has a
/// non-field center and cannot reach here.
inline InvolutionType classify_involution(const StarAlgebra& alg, const SimplicityCert& cert) {
    if (!cert.ok) throw error("classify_involution: algebra not certified simple");
    PrimeField k{alg.p};
    for (const auto& z : cert.center.basis) {
        AdjointPair zs = StarAlgebra::star(z);
        if (!mat_eq(k, zs.f, z.f) || !mat_eq(k, zs.g, z.g)) return InvolutionType::unitary;
    }
    // star as a linear map on algebra coordinates
    int n = alg.dim();
    Mat star_mat(n, n, 0);
    for (int i = 0; i < n; ++i) {
        auto c = alg.coords_of(StarAlgebra::star(alg.basis[i]));
        for (int j = 0; j < n; ++j) star_mat.at(i, j) = c[j];
    }
    Mat fixed = kernel(k, mat_sub(k, star_mat, make_identity(k, n)));
    int sym_dim = fixed.rows;  // over Z/p
    int nk = cert.n;
    if (sym_dim == cert.e * nk * (nk + 1) / 2) return InvolutionType::orthogonal;
    if (sym_dim == cert.e * nk * (nk - 1) / 2) return InvolutionType::symplectic;
    throw error("classify_involution: symmetric subspace has unexpected dimension " + std::to_string(sym_dim));
}

// ---------------------------------------------------------------------------
// The K-structure on V coming from the center field
// ---------------------------------------------------------------------------

/// V viewed as a K-vector space through the center action, with coordinate
/// maps in the polynomial basis of the canonical GF(p^e).
struct KStructure {
    FieldCtxPtr ctx;
    int e = 0;  // [K : Z/p]
    int r = 0;  // dim_K V
    Mat z;                  // generator action on V (f-part)
    std::vector<Mat> zpow;  // z^0 .. z^(e-1)
    Mat embed;              // (r·e) × dimV: row (a·e + j) = v_a · scalar(x̄^j)
    Mat embed_inv;
    Mat rho_pow_inv;  // converts polynomial coords of K to generator-power coords

    /// Action of the scalar λ ∈ K on V.
    Mat scalar_action(const FieldElement& lam) const {
        PrimeField k{ctx->p};
        auto c = vec_mat(k, lam.c, rho_pow_inv);
        Mat m = make_zero(k, z.rows, z.cols);
        for (int i = 0; i < e; ++i)
            if (c[i] != 0) m = mat_add(k, m, mat_scale(k, zpow[i], c[i]));
        return m;
    }

    std::vector<FieldElement> to_k_coords(const std::vector<std::int64_t>& v) const {
        PrimeField k{ctx->p};
        auto flat = vec_mat(k, v, embed_inv);
        std::vector<FieldElement> out;
        out.reserve(r);
        for (int a = 0; a < r; ++a)
            out.emplace_back(ctx.get(), std::vector<std::int64_t>(flat.begin() + a * e, flat.begin() + (a + 1) * e));
        return out;
    }

    std::vector<std::int64_t> from_k_coords(const std::vector<FieldElement>& x) const {
        PrimeField k{ctx->p};
        std::vector<std::int64_t> flat(static_cast<std::size_t>(r) * e, 0);
        for (int a = 0; a < r; ++a)
            for (int j = 0; j < e; ++j) flat[a * e + j] = x[a].c[j];
        return vec_mat(k, flat, embed);
    }

    /// Z/p matrix on V-coordinates of a K-linear map given in K-coordinates.
    Mat kmat_action(const KMat& t) const {
        PrimeField k{ctx->p};
        return mat_mul(k, embed_inv, mat_mul(k, flatten_kmatrix(*ctx, t), embed));
    }
};

/// Builds the K-structure from a certified center field: a greedy K-free
/// basis v_1, v_2, ... of V where K acts through the generator z.
inline KStructure k_structure(const StarAlgebra& alg, const SimplicityCert& cert) {
    PrimeField k{alg.p};
    int nv = alg.dim_v;
    KStructure ks;
    ks.ctx = cert.center.field.ctx;
    ks.e = cert.e;
    ks.r = cert.n;
    // generator coordinates are relative to the center basis
    ks.z = make_zero(k, nv, nv);
    for (std::size_t i = 0; i < cert.center.basis.size(); ++i) {
        std::int64_t c = cert.center.field.gen_coords[i];
        if (c != 0) ks.z = mat_add(k, ks.z, mat_scale(k, cert.center.basis[i].f, c));
    }
    ks.zpow.clear();
    Mat acc = make_identity(k, nv);
    for (int i = 0; i < ks.e; ++i) {
        ks.zpow.push_back(acc);
        acc = mat_mul(k, acc, ks.z);
    }
    ks.rho_pow_inv = cert.center.field.rho_pow_inv;
    // scalar actions of the polynomial basis x̄^j
    std::vector<Mat> wj;
    FieldElement xbar = fe_gen(*ks.ctx);
    FieldElement pw = fe_one(*ks.ctx);
    for (int j = 0; j < ks.e; ++j) {
        wj.push_back(ks.scalar_action(pw));
        pw = pw * xbar;
    }
    // greedy basis
    Mat embed(0, nv, 0);
    Mat span(0, nv, 0);
    int slots = 0;
    for (int s = 0; s < nv && slots < ks.r; ++s) {
        std::vector<std::int64_t> v(nv, 0);
        v[s] = 1;
        // skip if already in the K-span of chosen vectors
        Subspace cur = Subspace::from_generators(alg.p, nv, span);
        if (cur.contains_vector(v)) continue;
        for (int j = 0; j < ks.e; ++j) {
            auto row = vec_mat(k, v, wj[j]);
            Mat one(1, nv, 0);
            for (int c = 0; c < nv; ++c) one.at(0, c) = row[c];
            embed = vstack(embed, one);
            span = vstack(span, one);
        }
        ++slots;
    }
    if (slots != ks.r || embed.rows != nv) throw error("k_structure: failed to build a K-free basis");
    ks.embed = embed;
    ks.embed_inv = inverse(k, embed);
    return ks;
}

// ---------------------------------------------------------------------------
// The tensor product V ⊗_A V and its projection onto W
// ---------------------------------------------------------------------------

struct TensorSpace {
    int dim = 0;   // dim_Z/p of V ⊗_A V
    Mat proj;      // dimV² × dim: quotient map from V⊗V
    Mat section;   // dim × dimV²: unit-vector section (section·proj = I)
    PBimap form;   // the induced bimap V × V → V ⊗_A V
    Mat pihat;     // dim × dimW with b = form · pihat
};

/// V ⊗_A V as V⊗V modulo the balanced relations (u f)⊗v − u⊗(v g) over the
/// algebra basis, with the unique factorization b = (⊗_A)·π̂.
inline TensorSpace tensor_over(const StarAlgebra& alg, const PBimap& b) {
    PrimeField k{alg.p};
    int n = alg.dim_v;
    if (b.dim_v != n || b.dim_u != n) throw mismatch_error("tensor_over: dimension mismatch");
    Mat rels(alg.dim() * n * n, n * n, 0);
    int r = 0;
    for (const auto& pair : alg.basis)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int a = 0; a < n; ++a) {
                    rels.at(r, a * n + j) = k.add(rels.at(r, a * n + j), pair.f.at(i, a));
                    rels.at(r, i * n + a) = k.sub(rels.at(r, i * n + a), pair.g.at(j, a));
                }
                ++r;
            }
    Subspace rel_space = Subspace::from_generators(alg.p, n * n, rels);
    TensorSpace ts;
    ts.proj = quotient_map(rel_space);
    ts.dim = ts.proj.cols;
    // section: unit vectors at the non-pivot coordinates
    std::vector<char> is_pivot(n * n, 0);
    for (int c : rel_space.pivots) is_pivot[c] = 1;
    ts.section = Mat(ts.dim, n * n, 0);
    int idx = 0;
    for (int c = 0; c < n * n; ++c)
        if (!is_pivot[c]) ts.section.at(idx++, c) = 1;
    // induced bimap: image of e_i ⊗ e_j
    ts.form = PBimap(k, n, n, ts.dim, BimapKind::general);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < ts.dim; ++t) ts.form.at(i, j, t) = ts.proj.at(i * n + j, t);
    // alternating when the relations force it
    bool alt = true;
    for (int i = 0; i < n && alt; ++i)
        for (int t = 0; t < ts.dim && alt; ++t)
            if (ts.form.at(i, i, t) != 0) alt = false;
    for (int i = 0; i < n && alt; ++i)
        for (int j = 0; j < n && alt; ++j)
            for (int t = 0; t < ts.dim && alt; ++t)
                if (ts.form.at(i, j, t) != k.neg(ts.form.at(j, i, t))) alt = false;
    if (alt) ts.form.kind = BimapKind::alternating;
    // π̂: unique solution of form·π̂ = b on all basis pairs
    ts.pihat = Mat(ts.dim, b.dim_w, 0);
    Mat lhs = transpose(ts.proj);  // dim × n²; solve x·lhs = column of b
    for (int w = 0; w < b.dim_w; ++w) {
        std::vector<std::int64_t> rhs(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rhs[i * n + j] = b.at(i, j, w);
        auto sol = solve(k, lhs, rhs);
        if (!sol.consistent) throw error("tensor_over: b does not factor through the tensor (unreachable)");
        for (int t = 0; t < ts.dim; ++t) ts.pihat.at(t, w) = sol.particular[t];
    }
    return ts;
}

// ---------------------------------------------------------------------------
// ⊥-decomposition via the hyperbolic basis of the tensor form
// ---------------------------------------------------------------------------

struct PerpDecomposition {
    std::vector<Subspace> lines;   // ⊥-summands of V, as Z/p subspaces
    std::vector<Mat> idempotents;  // *-invariant projections, summing to 1
};

struct KFormData {
    KStructure ks;
    TensorSpace ts;
    KBimap kform;  // the tensor form rewritten as a K-form on K^r
    Mat z0;        // e×e: row j = q0 · (scalar x̄^j on the tensor space)
    Mat z0_inv;
};

/// Rewrites ⊗_A as a K-form for the center field K: the tensor space is
/// one-dimensional over K; values are read through a fixed K-basis vector q0.
inline KFormData tensor_k_form(const StarAlgebra& alg, const PBimap& b, const SimplicityCert& cert) {
    PrimeField k{alg.p};
    KFormData out;
    out.ks = k_structure(alg, cert);
    out.ts = tensor_over(alg, b);
    int e = out.ks.e;
    if (out.ts.dim != e)
        throw error("tensor_k_form: tensor space dimension " + std::to_string(out.ts.dim) +
                    " != center degree " + std::to_string(e));
    int n = alg.dim_v;
    // center generator acting on the tensor space: q ↦ section(q)·(z ⊗ 1)·proj
    Mat zten(n * n, n * n, 0);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            std::int64_t v = out.ks.z.at(a, c);
            if (v == 0) continue;
            for (int bidx = 0; bidx < n; ++bidx) zten.at(a * n + bidx, c * n + bidx) = v;
        }
    Mat zq = mat_mul(k, out.ts.section, mat_mul(k, zten, out.ts.proj));
    // powers and the polynomial-basis rows over q0 = first unit vector
    std::vector<Mat> zq_pow;
    Mat acc = make_identity(k, e);
    for (int i = 0; i < e; ++i) {
        zq_pow.push_back(acc);
        acc = mat_mul(k, acc, zq);
    }
    auto scalar_on_q = [&](const FieldElement& lam) {
        auto c = vec_mat(k, lam.c, out.ks.rho_pow_inv);
        Mat m = make_zero(k, e, e);
        for (int i = 0; i < e; ++i)
            if (c[i] != 0) m = mat_add(k, m, mat_scale(k, zq_pow[i], c[i]));
        return m;
    };
    out.z0 = Mat(e, e, 0);
    FieldElement pw = fe_one(*out.ks.ctx);
    for (int j = 0; j < e; ++j) {
        Mat w = scalar_on_q(pw);
        for (int c = 0; c < e; ++c) out.z0.at(j, c) = w.at(0, c);  // q0 = e_0
        pw = pw * fe_gen(*out.ks.ctx);
    }
    out.z0_inv = inverse(k, out.z0);
    // the K-form on K^r
    ExtField kf{out.ks.ctx.get()};
    out.kform = KBimap(kf, out.ks.r, out.ks.r, 1, BimapKind::general);
    for (int a = 0; a < out.ks.r; ++a) {
        std::vector<std::int64_t> va(out.ks.embed.a.begin() + static_cast<std::size_t>(a * e) * n,
                                     out.ks.embed.a.begin() + static_cast<std::size_t>(a * e) * n + n);
        for (int c = 0; c < out.ks.r; ++c) {
            std::vector<std::int64_t> vc(out.ks.embed.a.begin() + static_cast<std::size_t>(c * e) * n,
                                         out.ks.embed.a.begin() + static_cast<std::size_t>(c * e) * n + n);
            auto q = evaluate(k, out.ts.form, va, vc);
            auto coeffs = vec_mat(k, q, out.z0_inv);
            out.kform.at(a, c, 0) = FieldElement(out.ks.ctx.get(), coeffs);
        }
    }
    // the K-form inherits the alternating kind from the tensor form
    bool alt = true;
    for (int a = 0; a < out.ks.r && alt; ++a)
        if (!out.kform.at(a, a, 0).is_zero()) alt = false;
    for (int a = 0; a < out.ks.r && alt; ++a)
        for (int c = a + 1; c < out.ks.r && alt; ++c)
            if (!(out.kform.at(a, c, 0) == -out.kform.at(c, a, 0))) alt = false;
    if (alt) out.kform.kind = BimapKind::alternating;
    return out;
}

/// ⊥-decomposition of a nondegenerate alternating bimap whose adjoint ring is
/// simple of symplectic type: hyperbolic lines of the tensor K-form, pulled
/// back to V, together with the corresponding *-invariant idempotents.
inline PerpDecomposition perp_decompose(const PBimap& b, std::int64_t p) {
    StarAlgebra alg = compute_adjoint(b, p);
    SimplicityCert cert = is_simple_irreducible(alg);
    if (!cert.ok) throw error("perp_decompose: " + cert.reason);
    KFormData kd = tensor_k_form(alg, b, cert);
    ExtField kf{kd.ks.ctx.get()};
    PrimeField k{p};
    if (kd.kform.kind != BimapKind::alternating)
        throw error("perp_decompose: tensor form is not alternating");
    KMat t = hyperbolic_basis(kf, kd.kform);
    int m = kd.ks.r / 2;
    PerpDecomposition out;
    KMat tinv = inverse(kf, t);
    for (int a = 0; a < m; ++a) {
        // the line spanned over K by hyperbolic pair rows a and m+a of t
        Mat rows(0, alg.dim_v, 0);
        for (int which : {a, m + a}) {
            std::vector<FieldElement> g(t.cols, fe_zero(*kd.ks.ctx));
            for (int c = 0; c < t.cols; ++c) g[c] = t.at(which, c);
            for (int j = 0; j < kd.ks.e; ++j) {
                std::vector<FieldElement> scaled(g);
                FieldElement xj = fe_pow(fe_gen(*kd.ks.ctx), static_cast<std::uint64_t>(j));
                for (auto& v : scaled) v = v * xj;
                auto flat = kd.ks.from_k_coords(scaled);
                Mat one(1, alg.dim_v, 0);
                for (int c = 0; c < alg.dim_v; ++c) one.at(0, c) = flat[c];
                rows = vstack(rows, one);
            }
        }
        out.lines.push_back(Subspace::from_generators(p, alg.dim_v, rows));
        // projection onto the line in K-coordinates: t^{-1} · diag(a, m+a) · t
        KMat diag(kd.ks.r, kd.ks.r, fe_zero(*kd.ks.ctx));
        diag.at(a, a) = fe_one(*kd.ks.ctx);
        diag.at(m + a, m + a) = fe_one(*kd.ks.ctx);
        KMat pk = mat_mul(kf, tinv, mat_mul(kf, diag, t));
        Mat idem = kd.ks.kmat_action(pk);
        out.idempotents.push_back(std::move(idem));
    }
    // verification: idempotent, *-invariant, orthogonal, summing to 1
    Mat sum = make_zero(k, alg.dim_v, alg.dim_v);
    for (std::size_t i = 0; i < out.idempotents.size(); ++i) {
        const Mat& ei = out.idempotents[i];
        if (!mat_eq(k, mat_mul(k, ei, ei), ei)) throw error("perp_decompose: projection not idempotent");
        if (!alg.contains({ei, ei})) throw error("perp_decompose: idempotent not *-invariant");
        for (std::size_t j = 0; j < i; ++j)
            if (!mat_eq(k, mat_mul(k, ei, out.idempotents[j]), make_zero(k, alg.dim_v, alg.dim_v)))
                throw error("perp_decompose: idempotents not orthogonal");
        sum = mat_add(k, sum, ei);
    }
    if (!mat_eq(k, sum, make_identity(k, alg.dim_v))) throw error("perp_decompose: idempotents do not sum to 1");
    return out;
}

}  // namespace heiq
