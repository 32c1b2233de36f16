#pragma once

// Class-2 exponent-p groups presented by their commutator tensor: element
// arithmetic on pairs (u; s) with (u;s)(v;t) = (u+v; s+t+½b(u,v)), group
// constructors (symplectic, quotient, Brahana-style), and the extraction of
// center, derived subgroup and commutation bimap.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiq/bimap.hpp"
#include "heiq/error.hpp"
#include "heiq/ff.hpp"
#include "heiq/linalg.hpp"

namespace heiq {

struct GroupElement {
    std::vector<std::int64_t> u;  // noncentral coordinates, length dimV
    std::vector<std::int64_t> s;  // central coordinates, length dimW
    bool operator==(const GroupElement& o) const { return u == o.u && s == o.s; }
};

/// Group on generators x_1..x_dimV, z_1..z_dimW with x_i^p = z_k^p = 1,
/// z_k central and [x_i, x_j] = prod_k z_k^(c[i][j][k]). Immutable.
class Class2Group {
public:
    Class2Group(std::int64_t p, PBimap comm) : p_(p), comm_(std::move(comm)), half_((p + 1) / 2) {
        if (p < 3 || p % 2 == 0) throw error("Class2Group: p must be an odd prime");
        if (comm_.dim_u != comm_.dim_v) throw error("Class2Group: commutator tensor must be square");
        check_alternating(PrimeField{p_}, comm_);
    }

    std::int64_t p() const { return p_; }
    int dim_v() const { return comm_.dim_v; }
    int dim_w() const { return comm_.dim_w; }
    const PBimap& comm() const { return comm_; }

    mpz_class order() const { return mpz_pow(p_, static_cast<unsigned long>(dim_v() + dim_w())); }

    GroupElement identity() const {
        return {std::vector<std::int64_t>(dim_v(), 0), std::vector<std::int64_t>(dim_w(), 0)};
    }

    GroupElement element(std::vector<std::int64_t> u, std::vector<std::int64_t> s) const {
        if (static_cast<int>(u.size()) != dim_v() || static_cast<int>(s.size()) != dim_w())
            throw mismatch_error("element: coordinate length mismatch");
        for (auto& x : u) x = mod_reduce(x, p_);
        for (auto& x : s) x = mod_reduce(x, p_);
        return {std::move(u), std::move(s)};
    }

    /// Element with the given index in base-p coordinate order.
    GroupElement element_at(std::uint64_t idx) const {
        std::vector<std::int64_t> u(dim_v()), s(dim_w());
        for (int i = 0; i < dim_v(); ++i) {
            u[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(p_));
            idx /= static_cast<std::uint64_t>(p_);
        }
        for (int k = 0; k < dim_w(); ++k) {
            s[k] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(p_));
            idx /= static_cast<std::uint64_t>(p_);
        }
        return {std::move(u), std::move(s)};
    }

    GroupElement multiply(const GroupElement& g, const GroupElement& h) const {
        check_member(g);
        check_member(h);
        PrimeField k{p_};
        std::vector<std::int64_t> u(dim_v()), s(dim_w());
        for (int i = 0; i < dim_v(); ++i) u[i] = k.add(g.u[i], h.u[i]);
        auto b = evaluate(k, comm_, g.u, h.u);
        for (int i = 0; i < dim_w(); ++i) s[i] = k.add(k.add(g.s[i], h.s[i]), k.mul(half_, b[i]));
        return {std::move(u), std::move(s)};
    }

    GroupElement inverse(const GroupElement& g) const {
        check_member(g);
        PrimeField k{p_};
        std::vector<std::int64_t> u(dim_v()), s(dim_w());
        for (int i = 0; i < dim_v(); ++i) u[i] = k.neg(g.u[i]);
        for (int i = 0; i < dim_w(); ++i) s[i] = k.neg(g.s[i]);
        return {std::move(u), std::move(s)};
    }

    /// g^e = (eu; es); in particular g^p = 1.
    GroupElement power(const GroupElement& g, std::int64_t e) const {
        check_member(g);
        std::int64_t c = mod_reduce(e, p_);
        std::vector<std::int64_t> u(dim_v()), s(dim_w());
        for (int i = 0; i < dim_v(); ++i) u[i] = (g.u[i] * c) % p_;
        for (int i = 0; i < dim_w(); ++i) s[i] = (g.s[i] * c) % p_;
        return {std::move(u), std::move(s)};
    }

    /// [g, h] = (0; b(u, v)); agrees with g^-1 h^-1 g h.
    GroupElement commutator(const GroupElement& g, const GroupElement& h) const {
        check_member(g);
        check_member(h);
        return {std::vector<std::int64_t>(dim_v(), 0), evaluate(PrimeField{p_}, comm_, g.u, h.u)};
    }

private:
    void check_member(const GroupElement& g) const {
        if (static_cast<int>(g.u.size()) != dim_v() || static_cast<int>(g.s.size()) != dim_w())
            throw mismatch_error("group element from a different group");
    }

    std::int64_t p_;
    PBimap comm_;
    std::int64_t half_;
};

/// The generalized Heisenberg group of degree m over GF(p^d): Grp(j) for the
/// standard symplectic form, flattened to Z/p. Order p^((2m+1)d).
inline Class2Group heisenberg(int m, const FieldCtx& ctx) {
    return Class2Group(ctx.p, flatten_bimap(ctx, standard_symplectic(m, ctx)));
}

struct ShapeCertificate {
    bool ok = false;
    std::string violation;      // empty when ok
    Subspace center;            // of (Z/p)^(dimV+dimW)
    Subspace derived;           // of (Z/p)^(dimV+dimW)
};

/// Derived subgroup 0 × im(b) and center rad(b) × W, with the certification
/// 1 < G' = Z(G) < G required by the recognition pipeline (exponent p holds
/// by construction).
inline ShapeCertificate center_and_derived(const Class2Group& g) {
    PrimeField k{g.p()};
    int dv = g.dim_v(), dw = g.dim_w();
    ShapeCertificate cert;
    Mat img = image_basis(k, g.comm());
    Mat rad = right_radical_basis(k, g.comm());
    Mat derived_rows(img.rows, dv + dw, 0);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < dw; ++c) derived_rows.at(r, dv + c) = img.at(r, c);
    cert.derived = Subspace::from_generators(g.p(), dv + dw, derived_rows);
    Mat center_rows(rad.rows + dw, dv + dw, 0);
    for (int r = 0; r < rad.rows; ++r)
        for (int c = 0; c < dv; ++c) center_rows.at(r, c) = rad.at(r, c);
    for (int r = 0; r < dw; ++r) center_rows.at(rad.rows + r, dv + r) = 1;
    cert.center = Subspace::from_generators(g.p(), dv + dw, center_rows);
    if (img.rows == 0)
        cert.violation = "1 = G': the group is abelian";
    else if (img.rows < dw)
        cert.violation = "G' < Z(G): commutator image is a proper subgroup of the central generators";
    else if (rad.rows > 0)
        cert.violation = "G' < Z(G): radical of the commutation map is nonzero";
    else
        cert.ok = true;
    return cert;
}

/// The commutation bimap on G/Z(G) × G/Z(G) → G'. Requires the shape
/// certificate; in that case the presentation tensor is already the bimap
/// in the coordinates of the quotient bases.
inline PBimap extract_bimap(const Class2Group& g) {
    ShapeCertificate cert = center_and_derived(g);
    if (!cert.ok) throw error("extract_bimap: " + cert.violation);
    return g.comm();
}

/// G/N for a central subspace N < W; N = W is rejected (abelian quotient).
inline Class2Group quotient_group(const Class2Group& g, const Subspace& n) {
    if (n.p != g.p() || n.ambient != g.dim_w())
        throw mismatch_error("quotient_group: N must be a subspace of the W coordinates");
    if (n.dim() >= g.dim_w()) throw error("quotient_group: N must be a proper subspace of W");
    PrimeField k{g.p()};
    return Class2Group(g.p(), quotient(k, g.comm(), quotient_map(n)));
}

/// Group on U × V × W with (u,v;s)(x,y;t) = (u+x, v+y; s+t+c(u,y)), encoded
/// by its alternating commutator tensor b((u,v),(x,y)) = c(u,y) − c(x,v).
inline Class2Group brahana(std::int64_t p, const PBimap& c) {
    PrimeField k{p};
    int du = c.dim_u, dv = c.dim_v, dw = c.dim_w;
    PBimap b(k, du + dv, du + dv, dw, BimapKind::alternating);
    for (int i = 0; i < du; ++i)
        for (int j = 0; j < dv; ++j)
            for (int w = 0; w < dw; ++w) {
                b.at(i, du + j, w) = c.at(i, j, w);
                b.at(du + j, i, w) = k.neg(c.at(i, j, w));
            }
    return Class2Group(p, b);
}

/// Verified map data between two groups of the same shape: (u;s) ↦
/// (u·f; s·fhat + u·tau). The relation b2(uf, vf) = b1(u,v)·fhat makes it a
/// homomorphism; invertibility of f and fhat makes it an isomorphism.
struct GroupIso {
    Mat f;
    Mat fhat;
    std::optional<Mat> tau;  // central shear, defaults to zero
};

struct IsoCheck {
    bool ok = false;
    std::string failure;
    std::pair<int, int> witness{-1, -1};  // offending basis pair when the relation fails
};

inline IsoCheck check_isomorphism(const Class2Group& g1, const Class2Group& g2, const GroupIso& iso) {
    PrimeField k{g1.p()};
    IsoCheck res;
    if (g1.p() != g2.p()) {
        res.failure = "different characteristic";
        return res;
    }
    if (iso.f.rows != g1.dim_v() || iso.f.cols != g2.dim_v() || iso.fhat.rows != g1.dim_w() ||
        iso.fhat.cols != g2.dim_w()) {
        res.failure = "shape mismatch";
        return res;
    }
    if (iso.tau && (iso.tau->rows != g1.dim_v() || iso.tau->cols != g2.dim_w())) {
        res.failure = "shear shape mismatch";
        return res;
    }
    for (int i = 0; i < g1.dim_v(); ++i)
        for (int j = 0; j < g1.dim_v(); ++j) {
            std::vector<std::int64_t> fi(iso.f.cols), fj(iso.f.cols);
            for (int c = 0; c < iso.f.cols; ++c) {
                fi[c] = iso.f.at(i, c);
                fj[c] = iso.f.at(j, c);
            }
            auto lhs = evaluate(k, g2.comm(), fi, fj);
            std::vector<std::int64_t> w(g1.dim_w());
            for (int c = 0; c < g1.dim_w(); ++c) w[c] = g1.comm().at(i, j, c);
            auto rhs = vec_mat(k, w, iso.fhat);
            if (lhs != rhs) {
                res.failure = "pseudo-isometry relation fails";
                res.witness = {i, j};
                return res;
            }
        }
    if (!try_inverse(k, iso.f)) {
        res.failure = "f is singular";
        return res;
    }
    if (!try_inverse(k, iso.fhat)) {
        res.failure = "fhat is singular";
        return res;
    }
    res.ok = true;
    return res;
}

/// Applies verified iso data to an element.
inline GroupElement apply_iso(const Class2Group& g2, const GroupIso& iso, const GroupElement& g) {
    PrimeField k{g2.p()};
    auto u = vec_mat(k, g.u, iso.f);
    auto s = vec_mat(k, g.s, iso.fhat);
    if (iso.tau) {
        auto shear = vec_mat(k, g.u, *iso.tau);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = k.add(s[i], shear[i]);
    }
    return {std::move(u), std::move(s)};
}

/// The epimorphism H → G attached to a pseudo-isometry whose fhat is a
/// surjection rather than an isomorphism; checks the relation only.
inline bool check_epimorphism(const Class2Group& h, const Class2Group& g, const Mat& f, const Mat& fhat) {
    PrimeField k{h.p()};
    return h.p() == g.p() && rank(k, fhat) == g.dim_w() &&
           try_inverse(k, f).has_value() &&
           is_pseudo_isometry(k, h.comm(), g.comm(), f, fhat);
}

}  // namespace heiq
