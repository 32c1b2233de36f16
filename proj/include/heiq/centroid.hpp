#pragma once

// The centroid of a bimap: the largest commutative ring of scalars (f; h)
// with b(uf, v) = b(u,v)h = b(u, vf). Deciding whether it is a field drives
// the recognition test "is G a generalized Heisenberg group?".

#include <cstdint>
#include <string>
#include <vector>

#include "heiq/algebra.hpp"
#include "heiq/bimap.hpp"
#include "heiq/error.hpp"
#include "heiq/group.hpp"
#include "heiq/linalg.hpp"

namespace heiq {

struct ScalarPair {
    Mat f;  // dimV × dimV
    Mat h;  // dimW × dimW
};

struct CentroidRing {
    std::int64_t p = 0;
    int dim_v = 0, dim_w = 0;
    std::vector<ScalarPair> basis;
    Mat vec_basis;  // basis rows, vectorized (f | h)

    int dim() const { return static_cast<int>(basis.size()); }

    ScalarPair mul(const ScalarPair& a, const ScalarPair& b) const {
        PrimeField k{p};
        return {mat_mul(k, a.f, b.f), mat_mul(k, a.h, b.h)};
    }

    bool contains(const ScalarPair& s) const {
        std::vector<std::int64_t> v(s.f.a);
        v.insert(v.end(), s.h.a.begin(), s.h.a.end());
        return coords_in_rows(p, vec_basis, v).has_value();
    }

    bool commutative() const {
        PrimeField k{p};
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (!mat_eq(k, mat_mul(k, basis[i].f, basis[j].f), mat_mul(k, basis[j].f, basis[i].f)))
                    return false;
        return true;
    }
};

/// Solves the homogeneous linear system defining the centroid. The bimap must
/// be nondegenerate with full image (this makes the restriction to either
/// factor faithful and forces commutativity).
inline CentroidRing compute_centroid(const PBimap& b, std::int64_t p) {
    PrimeField k{p};
    if (b.dim_u != b.dim_v) throw error("compute_centroid: bimap must have U = V");
    if (!is_nondegenerate(k, b)) throw error("compute_centroid: degenerate bimap");
    if (image_basis(k, b).rows != b.dim_w) throw error("compute_centroid: image is not all of W");
    int n = b.dim_v, w = b.dim_w;
    int unknowns = n * n + w * w;  // f entries then h entries
    // equations: for all (i, j, t):  sum_a f[i][a] c[a][j][t] - sum_l h[l][t] c[i][j][l] = 0
    //            and                 sum_a f[j][a] c[i][a][t] - sum_l h[l][t] c[i][j][l] = 0
    Mat sys(2 * n * n * w, unknowns, 0);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 0; t < w; ++t) {
                for (int a = 0; a < n; ++a) {
                    sys.at(row, i * n + a) = b.at(a, j, t);
                    sys.at(row + 1, j * n + a) = b.at(i, a, t);
                }
                for (int l = 0; l < w; ++l) {
                    std::int64_t c = k.neg(b.at(i, j, l));
                    sys.at(row, n * n + l * w + t) = c;
                    sys.at(row + 1, n * n + l * w + t) = c;
                }
                row += 2;
            }
    Mat sol = kernel(k, transpose(sys));
    CentroidRing ring;
    ring.p = p;
    ring.dim_v = n;
    ring.dim_w = w;
    ring.vec_basis = sol;
    for (int r = 0; r < sol.rows; ++r) {
        ScalarPair s{Mat(n, n, 0), Mat(w, w, 0)};
        for (int i = 0; i < n * n; ++i) s.f.a[i] = sol.at(r, i);
        for (int i = 0; i < w * w; ++i) s.h.a[i] = sol.at(r, n * n + i);
        ring.basis.push_back(std::move(s));
    }
    // sanity: unital and multiplicatively closed
    if (!ring.contains({make_identity(k, n), make_identity(k, w)}))
        throw error("compute_centroid: identity pair missing (unreachable)");
    for (const auto& a : ring.basis)
        for (const auto& c : ring.basis)
            if (!ring.contains(ring.mul(a, c))) throw error("compute_centroid: not closed under products");
    return ring;
}

/// Field test for the centroid, via its faithful restriction to V.
inline FieldCert centroid_is_field(const CentroidRing& ring, std::uint64_t seed = kDefaultSeed) {
    if (!ring.commutative()) throw error("centroid_is_field: ring is not commutative");
    std::vector<Mat> reps;
    reps.reserve(ring.basis.size());
    for (const auto& s : ring.basis) reps.push_back(s.f);
    return detect_field(ring.p, reps, 59049, seed);
}

struct HeisenbergRecognition {
    bool yes = false;
    std::string reason;
    int m = 0;
    FieldCtxPtr field;  // K with |K| = p^e
    FieldCert cert;
};

/// G is a generalized Heisenberg group iff its centroid is a field K and G'
/// is one-dimensional over K; then G ≅ H_m(K) with 2m = dim_K G/Z(G).
inline HeisenbergRecognition is_generalized_heisenberg(const Class2Group& g) {
    HeisenbergRecognition out;
    ShapeCertificate shape = center_and_derived(g);
    if (!shape.ok) {
        out.reason = "shape: " + shape.violation;
        return out;
    }
    CentroidRing ring = compute_centroid(g.comm(), g.p());
    FieldCert cert = centroid_is_field(ring);
    if (!cert.is_field) {
        out.reason = "centroid is not a field: " + cert.reason;
        return out;
    }
    int e = cert.degree;
    if (g.dim_w() != e) {
        out.reason = "center has Z/p-dimension " + std::to_string(g.dim_w()) +
                     " but the centroid field has degree " + std::to_string(e);
        return out;
    }
    if (g.dim_v() % (2 * e) != 0) {
        out.reason = "V dimension is not an even multiple of the centroid degree";
        return out;
    }
    out.yes = true;
    out.m = g.dim_v() / (2 * e);
    out.field = cert.ctx;
    out.cert = std::move(cert);
    return out;
}

}  // namespace heiq
