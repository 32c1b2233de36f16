#pragma once

// Biadditive maps b : U × V → W as structure tensors, with radicals,
// quotients by W-epimorphisms, pseudo-isometry checking, and hyperbolic
// bases for nondegenerate alternating forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiq/error.hpp"
#include "heiq/linalg.hpp"

namespace heiq {

enum class BimapKind { general, alternating, hermitian };

inline const char* to_string(BimapKind k) {
    switch (k) {
        case BimapKind::general: return "general";
        case BimapKind::alternating: return "alternating";
        default: return "hermitian";
    }
}

template <class F>
struct Bimap {
    int dim_u = 0, dim_v = 0, dim_w = 0;
    BimapKind kind = BimapKind::general;
    std::vector<typename F::Elt> t;  // t[(i·dim_v + j)·dim_w + k] = b(u_i, v_j)_k

    Bimap() = default;
    Bimap(const F& f, int du, int dv, int dw, BimapKind kind_)
        : dim_u(du), dim_v(dv), dim_w(dw), kind(kind_),
          t(static_cast<std::size_t>(du) * dv * dw, f.zero()) {}

    typename F::Elt& at(int i, int j, int k) {
        return t[(static_cast<std::size_t>(i) * dim_v + j) * dim_w + k];
    }
    const typename F::Elt& at(int i, int j, int k) const {
        return t[(static_cast<std::size_t>(i) * dim_v + j) * dim_w + k];
    }
};

using PBimap = Bimap<PrimeField>;
using KBimap = Bimap<ExtField>;

/// Validates the alternating axioms on the stored tensor: b(u,u) = 0 on the
/// diagonal and antisymmetry everywhere.
template <class F>
void check_alternating(const F& f, const Bimap<F>& b) {
    if (b.dim_u != b.dim_v) throw error("alternating bimap needs U = V");
    for (int i = 0; i < b.dim_v; ++i)
        for (int k = 0; k < b.dim_w; ++k)
            if (!f.is_zero(b.at(i, i, k))) throw error("alternating bimap with b(u,u) != 0");
    for (int i = 0; i < b.dim_v; ++i)
        for (int j = i + 1; j < b.dim_v; ++j)
            for (int k = 0; k < b.dim_w; ++k)
                if (!f.eq(b.at(i, j, k), f.neg(b.at(j, i, k))))
                    throw error("alternating bimap without antisymmetry");
}

template <class F>
std::vector<typename F::Elt> evaluate(const F& f, const Bimap<F>& b,
                                      const std::vector<typename F::Elt>& u,
                                      const std::vector<typename F::Elt>& v) {
    if (static_cast<int>(u.size()) != b.dim_u || static_cast<int>(v.size()) != b.dim_v)
        throw mismatch_error("evaluate: coordinate length mismatch");
    std::vector<typename F::Elt> w(b.dim_w, f.zero());
    for (int i = 0; i < b.dim_u; ++i) {
        if (f.is_zero(u[i])) continue;
        for (int j = 0; j < b.dim_v; ++j) {
            if (f.is_zero(v[j])) continue;
            auto c = f.mul(u[i], v[j]);
            for (int k = 0; k < b.dim_w; ++k) w[k] = f.add(w[k], f.mul(c, b.at(i, j, k)));
        }
    }
    return w;
}

/// Right radical {v : b(U, v) = 0}, as rref rows.
template <class F>
Matrix<F> right_radical_basis(const F& f, const Bimap<F>& b) {
    // v is in the radical iff v annihilates the dim_v × (dim_u·dim_w) matrix
    Matrix<F> m(b.dim_v, b.dim_u * b.dim_w, f.zero());
    for (int j = 0; j < b.dim_v; ++j)
        for (int i = 0; i < b.dim_u; ++i)
            for (int k = 0; k < b.dim_w; ++k) m.at(j, i * b.dim_w + k) = b.at(i, j, k);
    return kernel(f, m);
}

template <class F>
Matrix<F> left_radical_basis(const F& f, const Bimap<F>& b) {
    Matrix<F> m(b.dim_u, b.dim_v * b.dim_w, f.zero());
    for (int i = 0; i < b.dim_u; ++i)
        for (int j = 0; j < b.dim_v; ++j)
            for (int k = 0; k < b.dim_w; ++k) m.at(i, j * b.dim_w + k) = b.at(i, j, k);
    return kernel(f, m);
}

inline Subspace radical(const PBimap& b, std::int64_t p) {
    PrimeField f{p};
    return Subspace::from_generators(p, b.dim_v, right_radical_basis(f, b));
}

template <class F>
bool is_nondegenerate(const F& f, const Bimap<F>& b) {
    return right_radical_basis(f, b).rows == 0 && left_radical_basis(f, b).rows == 0;
}

/// Span of all values b(u_i, v_j) inside W, as rref rows.
template <class F>
Matrix<F> image_basis(const F& f, const Bimap<F>& b) {
    Matrix<F> m(b.dim_u * b.dim_v, b.dim_w, f.zero());
    for (int i = 0; i < b.dim_u; ++i)
        for (int j = 0; j < b.dim_v; ++j)
            for (int k = 0; k < b.dim_w; ++k) m.at(i * b.dim_v + j, k) = b.at(i, j, k);
    return image(f, m);
}

/// The canonical nondegenerate alternating K-form j(u,v) = u [0 I; -I 0] v^t
/// on K^(2m), with one-dimensional W.
inline KBimap standard_symplectic(int m, const FieldCtx& ctx) {
    if (m < 1) throw error("standard_symplectic: m must be >= 1");
    ExtField f{&ctx};
    KBimap b(f, 2 * m, 2 * m, 1, BimapKind::alternating);
    for (int i = 0; i < m; ++i) {
        b.at(i, m + i, 0) = fe_one(ctx);
        b.at(m + i, i, 0) = -fe_one(ctx);
    }
    return b;
}

inline PBimap standard_symplectic_prime(int m, std::int64_t p) {
    if (m < 1) throw error("standard_symplectic: m must be >= 1");
    PrimeField f{p};
    PBimap b(f, 2 * m, 2 * m, 1, BimapKind::alternating);
    for (int i = 0; i < m; ++i) {
        b.at(i, m + i, 0) = 1;
        b.at(m + i, i, 0) = p - 1;
    }
    return b;
}

/// Scalar restriction of a K-bimap to Z/p through the polynomial basis of
/// the context (the canonical flattening used everywhere downstream).
inline PBimap flatten_bimap(const FieldCtx& ctx, const KBimap& b) {
    int d = ctx.d;
    PrimeField pf{ctx.p};
    PBimap out(pf, b.dim_u * d, b.dim_v * d, b.dim_w * d, b.kind);
    FieldElement xa = fe_one(ctx);
    for (int a = 0; a < d; ++a) {
        FieldElement xb = fe_one(ctx);
        for (int bb = 0; bb < d; ++bb) {
            FieldElement prod = xa * xb;
            for (int i = 0; i < b.dim_u; ++i)
                for (int j = 0; j < b.dim_v; ++j)
                    for (int k = 0; k < b.dim_w; ++k) {
                        FieldElement w = prod * b.at(i, j, k);
                        for (int c = 0; c < d; ++c)
                            out.at(i * d + a, j * d + bb, k * d + c) = w.c[c];
                    }
            xb = xb * fe_gen(ctx);
        }
        xa = xa * fe_gen(ctx);
    }
    return out;
}

/// Composes the tensor with a W-epimorphism pi (dim_w × dim_w', full rank,
/// dim_w' >= 1). Preserves the alternating kind.
template <class F>
Bimap<F> quotient(const F& f, const Bimap<F>& b, const Matrix<F>& pi) {
    if (pi.rows != b.dim_w) throw mismatch_error("quotient: pi row count != dim_w");
    if (pi.cols < 1) throw error("quotient: target W' must be nonzero");
    if (rank(f, pi) != pi.cols) throw error("quotient: pi is not surjective");
    Bimap<F> out(f, b.dim_u, b.dim_v, pi.cols, b.kind);
    for (int i = 0; i < b.dim_u; ++i)
        for (int j = 0; j < b.dim_v; ++j) {
            std::vector<typename F::Elt> w(b.dim_w);
            for (int k = 0; k < b.dim_w; ++k) w[k] = b.at(i, j, k);
            auto w2 = vec_mat(f, w, pi);
            for (int k = 0; k < pi.cols; ++k) out.at(i, j, k) = w2[k];
        }
    return out;
}

/// Pulls b back along an invertible change of basis g on V: b'(u,v) = b(ug, vg).
template <class F>
Bimap<F> pullback(const F& f, const Bimap<F>& b, const Matrix<F>& g) {
    if (b.dim_u != b.dim_v || g.rows != b.dim_v || g.cols != b.dim_v)
        throw mismatch_error("pullback: shape mismatch");
    Bimap<F> out(f, b.dim_v, b.dim_v, b.dim_w, b.kind);
    for (int i = 0; i < b.dim_v; ++i) {
        std::vector<typename F::Elt> gi(g.cols);
        for (int c = 0; c < g.cols; ++c) gi[c] = g.at(i, c);
        for (int j = 0; j < b.dim_v; ++j) {
            std::vector<typename F::Elt> gj(g.cols);
            for (int c = 0; c < g.cols; ++c) gj[c] = g.at(j, c);
            auto w = evaluate(f, b, gi, gj);
            for (int k = 0; k < b.dim_w; ++k) out.at(i, j, k) = w[k];
        }
    }
    return out;
}

/// Checks the relation b'(uf, vf) = b(u,v)·fhat on all basis pairs, which
/// suffices by bilinearity. fhat may be a proper epimorphism.
template <class F>
bool is_pseudo_isometry(const F& k, const Bimap<F>& b, const Bimap<F>& b2, const Matrix<F>& f,
                        const Matrix<F>& fhat) {
    if (f.rows != b.dim_v || f.cols != b2.dim_v) return false;
    if (fhat.rows != b.dim_w || fhat.cols != b2.dim_w) return false;
    for (int i = 0; i < b.dim_v; ++i) {
        std::vector<typename F::Elt> fi(f.cols);
        for (int c = 0; c < f.cols; ++c) fi[c] = f.at(i, c);
        for (int j = 0; j < b.dim_v; ++j) {
            std::vector<typename F::Elt> fj(f.cols);
            for (int c = 0; c < f.cols; ++c) fj[c] = f.at(j, c);
            auto lhs = evaluate(k, b2, fi, fj);
            std::vector<typename F::Elt> w(b.dim_w);
            for (int c = 0; c < b.dim_w; ++c) w[c] = b.at(i, j, c);
            auto rhs = vec_mat(k, w, fhat);
            for (int c = 0; c < b2.dim_w; ++c)
                if (!k.eq(lhs[c], rhs[c])) return false;
        }
    }
    return true;
}

struct PseudoIsometry {
    Mat f;     // invertible on V
    Mat fhat;  // invertible on W (or an epimorphism when used as a quotient map)
};

/// Symplectic Gram–Schmidt for a nondegenerate alternating form with
/// one-dimensional W: returns T (rows = new basis in old coordinates) with
/// b(T_i, T_j) equal to the standard form, pairs ordered e_1..e_m, f_1..f_m.
/// Pivots: first remaining vector, then its lexicographically first partner.
template <class F>
Matrix<F> hyperbolic_basis(const F& k, const Bimap<F>& b) {
    if (b.dim_w != 1) throw error("hyperbolic_basis: W must be one-dimensional");
    if (b.kind != BimapKind::alternating) throw error("hyperbolic_basis: form must be alternating");
    check_alternating(k, b);
    int n = b.dim_v;
    auto pair_val = [&](const std::vector<typename F::Elt>& x, const std::vector<typename F::Elt>& y) {
        return evaluate(k, b, x, y)[0];
    };
    // working complement basis, shrinks two rows per round
    std::vector<std::vector<typename F::Elt>> rem;
    for (int i = 0; i < n; ++i) {
        std::vector<typename F::Elt> e(n, k.zero());
        e[i] = k.one();
        rem.push_back(std::move(e));
    }
    std::vector<std::vector<typename F::Elt>> es, fs;
    while (!rem.empty()) {
        std::vector<typename F::Elt> u = rem.front();
        int partner = -1;
        for (std::size_t j = 1; j < rem.size(); ++j)
            if (!k.is_zero(pair_val(u, rem[j]))) { partner = static_cast<int>(j); break; }
        if (partner < 0)
            throw error("hyperbolic_basis: degenerate input, witness vector " + elt_vec_to_string(k, u));
        std::vector<typename F::Elt> v = rem[partner];
        auto s = pair_val(u, v);
        auto inv = k.inv(s);
        for (auto& c : v) c = k.mul(c, inv);  // now b(u, v) = 1
        // project the rest onto the perpendicular complement of <u, v>
        std::vector<std::vector<typename F::Elt>> next;
        for (std::size_t j = 1; j < rem.size(); ++j) {
            if (static_cast<int>(j) == partner) continue;
            auto w = rem[j];
            auto a1 = pair_val(v, w);  // w' = w + b(v,w)·u − b(u,w)·v
            auto a2 = pair_val(u, w);
            for (int c = 0; c < n; ++c)
                w[c] = k.add(w[c], k.sub(k.mul(a1, u[c]), k.mul(a2, v[c])));
            bool zero = true;
            for (auto& c : w)
                if (!k.is_zero(c)) { zero = false; break; }
            if (!zero) next.push_back(std::move(w));
        }
        es.push_back(std::move(u));
        fs.push_back(std::move(v));
        rem = std::move(next);
    }
    if (2 * es.size() != static_cast<std::size_t>(n))
        throw error("hyperbolic_basis: degenerate input (rank defect)");
    Matrix<F> t(n, n, k.zero());
    int m = static_cast<int>(es.size());
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < n; ++c) {
            t.at(i, c) = es[i][c];
            t.at(m + i, c) = fs[i][c];
        }
    return t;
}

}  // namespace heiq
