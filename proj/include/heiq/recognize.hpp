#pragma once

// The full recognition pipeline: decide whether a class-2 group is an
// epimorphic image of a generalized Heisenberg group, and if so produce its
// minimal cover H_m(K), an explicit verified epimorphism, and the kernel as
// a Z/p-subspace of K in canonical echelon form.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heiq/adjoint.hpp"
#include "heiq/bimap.hpp"
#include "heiq/error.hpp"
#include "heiq/group.hpp"
#include "heiq/linalg.hpp"

namespace heiq {

struct StageLog {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct QuotientDescriptor {
    std::int64_t p = 0;
    int m = 0;
    int d = 0;
    FieldCtxPtr field;  // K = GF(p^d), canonical modulus
    // epimorphism H_m(K) -> G: V-part (2md × dimV, invertible) and W-part
    // (d × dimW, surjective with kernel M)
    Mat epi_v;
    Mat epi_w;
    Subspace kernel_m;  // of (Z/p)^d; dim = d − dim W
    int tensor_dim = 0;
    InvolutionType involution = InvolutionType::symplectic;
};

struct RecognitionResult {
    bool is_quotient = false;
    std::string failed_stage;  // empty on success
    std::string reason;
    QuotientDescriptor desc;
    std::vector<StageLog> stages;
};

/// Runs the pipeline: shape certification, adjoint computation, simplicity
/// and irreducibility, center field, involution type, tensor factorization,
/// hyperbolic basis, assembly of the verified epimorphism. Any failing stage
/// produces a negative answer naming that stage.
inline RecognitionResult recognize(const Class2Group& g) {
    RecognitionResult res;
    PrimeField k{g.p()};
    auto fail = [&](const std::string& stage, const std::string& why) {
        res.failed_stage = stage;
        res.reason = why;
        res.stages.push_back({stage, false, why});
        return res;
    };
    auto pass = [&](const std::string& stage, const std::string& detail) {
        res.stages.push_back({stage, true, detail});
    };

    ShapeCertificate shape = center_and_derived(g);
    if (!shape.ok) return fail("shape certification", shape.violation);
    pass("shape certification", "1 = G^p < G' = Z(G) < G");

    PBimap b = g.comm();
    StarAlgebra alg = compute_adjoint(b, g.p());
    pass("adjoint ring", "dimension " + std::to_string(alg.dim()));

    SimplicityCert cert = is_simple_irreducible(alg);
    if (!cert.ok) return fail("simplicity", cert.reason);
    pass("simplicity", "center degree " + std::to_string(cert.e) + ", dim_K V = " + std::to_string(cert.n));

    InvolutionType itype = classify_involution(alg, cert);
    if (itype != InvolutionType::symplectic)
        return fail("involution type", std::string("adjoint involution is ") + to_string(itype) +
                                           ", not symplectic");
    if (cert.n % 2 != 0) return fail("involution type", "dim_K V is odd");
    pass("involution type", "symplectic");

    KFormData kd;
    try {
        kd = tensor_k_form(alg, b, cert);
    } catch (const error& e) {
        return fail("tensor factorization", e.what());
    }
    if (kd.kform.kind != BimapKind::alternating)
        return fail("tensor factorization", "tensor form is not alternating");
    pass("tensor factorization", "V (x)_A V has dimension " + std::to_string(kd.ts.dim));

    ExtField kf{kd.ks.ctx.get()};
    KMat t;
    try {
        t = hyperbolic_basis(kf, kd.kform);
    } catch (const error& e) {
        return fail("hyperbolic basis", e.what());
    }
    pass("hyperbolic basis", "");

    // assemble the epimorphism H_m(K) -> G
    QuotientDescriptor& desc = res.desc;
    desc.p = g.p();
    desc.d = cert.e;
    desc.m = cert.n / 2;
    desc.field = kd.ks.ctx;
    desc.tensor_dim = kd.ts.dim;
    desc.involution = itype;
    // V-part: standard K-coordinates -> hyperbolic basis -> original coordinates
    desc.epi_v = mat_mul(k, flatten_kmatrix(*desc.field, t), kd.ks.embed);
    // W-part: K -> tensor space (via the q0 basis) -> W
    desc.epi_w = mat_mul(k, kd.z0, kd.ts.pihat);
    desc.kernel_m = Subspace::from_generators(g.p(), desc.d, kernel(k, desc.epi_w));

    Class2Group h = heisenberg(desc.m, *desc.field);
    if (!check_epimorphism(h, g, desc.epi_v, desc.epi_w))
        return fail("epimorphism verification", "assembled map fails the pseudo-isometry relation");
    // induced isomorphism H/M -> G
    Class2Group hq = quotient_group(h, desc.kernel_m);
    Mat qmap = quotient_map(desc.kernel_m);
    // epi_w factors through the quotient: solve qmap · fhat_bar = epi_w
    Mat fhat_bar(qmap.cols, g.dim_w(), 0);
    for (int w = 0; w < g.dim_w(); ++w) {
        std::vector<std::int64_t> rhs(desc.d);
        for (int i = 0; i < desc.d; ++i) rhs[i] = desc.epi_w.at(i, w);
        auto sol = solve(k, transpose(qmap), rhs);
        if (!sol.consistent) return fail("epimorphism verification", "W-part does not factor through K/M");
        for (int i = 0; i < qmap.cols; ++i) fhat_bar.at(i, w) = sol.particular[i];
    }
    IsoCheck chk = check_isomorphism(hq, g, GroupIso{desc.epi_v, fhat_bar, std::nullopt});
    if (!chk.ok) return fail("epimorphism verification", "induced quotient map: " + chk.failure);
    pass("epimorphism verification",
         "H_" + std::to_string(desc.m) + "(GF(" + std::to_string(desc.p) + "^" + std::to_string(desc.d) +
             ")) -> G with kernel of dimension " + std::to_string(desc.kernel_m.dim()));

    res.is_quotient = true;
    return res;
}

/// Whether the minimal cover of G is (isomorphic to) the given generalized
/// Heisenberg group, compared through the invariants (p, m, d).
inline bool is_indigenous(const RecognitionResult& rec, std::int64_t p, int m, int d) {
    return rec.is_quotient && rec.desc.p == p && rec.desc.m == m && rec.desc.d == d;
}

inline bool is_indigenous(const Class2Group& g, int m, const FieldCtx& field) {
    RecognitionResult rec = recognize(g);
    return is_indigenous(rec, field.p, m, field.d);
}

}  // namespace heiq
