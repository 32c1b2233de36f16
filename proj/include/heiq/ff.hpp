#pragma once

// Exact arithmetic in Z/p and GF(p^d): polynomials over Z/p, deterministic
// irreducibility testing, canonical field contexts, Frobenius, subfields.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "heiq/error.hpp"

namespace heiq {

// ---------------------------------------------------------------------------
// Integers mod p
// ---------------------------------------------------------------------------

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return (a * b) % p;
}

/// Inverse of a mod p; a must be nonzero mod p.
inline std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    a = mod_reduce(a, p);
    if (a == 0) throw error("mod_inv: inverse of zero");
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return mod_reduce(t, p);
}

inline std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t p) {
    a = mod_reduce(a, p);
    std::int64_t acc = 1 % p;
    while (e) {
        if (e & 1) acc = mod_mul(acc, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Polynomials over Z/p: coefficient vectors in ascending degree, trimmed so
// the leading coefficient is nonzero (the zero polynomial is the empty vector).
// ---------------------------------------------------------------------------

using Poly = std::vector<std::int64_t>;

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline bool poly_is_zero(const Poly& f) { return f.empty(); }

inline Poly poly_from(std::initializer_list<std::int64_t> cs, std::int64_t p) {
    Poly f;
    for (auto c : cs) f.push_back(mod_reduce(c, p));
    poly_trim(f);
    return f;
}

inline Poly poly_add(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v >= p ? v - p : v;
    }
    poly_trim(r);
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b, std::int64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t v = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = v < 0 ? v + p : v;
    }
    poly_trim(r);
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    poly_trim(r);
    return r;
}

/// Division with remainder; g must be nonzero.
inline void poly_divmod(const Poly& f, const Poly& g, std::int64_t p, Poly& q, Poly& r) {
    if (poly_is_zero(g)) throw error("poly_divmod: division by zero polynomial");
    r = f;
    q.assign(f.size() > g.size() ? f.size() - g.size() + 1 : 1, 0);
    std::int64_t lead_inv = mod_inv(g.back(), p);
    while (!r.empty() && r.size() >= g.size()) {
        std::int64_t c = mod_mul(r.back(), lead_inv, p);
        std::size_t shift = r.size() - g.size();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::int64_t v = r[shift + i] - c * g[i] % p;
            r[shift + i] = v < 0 ? v + p : v;
        }
        poly_trim(r);
    }
    poly_trim(q);
}

inline Poly poly_mod(const Poly& f, const Poly& g, std::int64_t p) {
    Poly q, r;
    poly_divmod(f, g, p, q, r);
    return r;
}

inline Poly poly_make_monic(Poly f, std::int64_t p) {
    if (f.empty()) return f;
    std::int64_t inv = mod_inv(f.back(), p);
    for (auto& c : f) c = mod_mul(c, inv, p);
    return f;
}

inline Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    while (!poly_is_zero(b)) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(std::move(a), p);
}

/// t ↦ t^p mod f (p is small, so square-and-multiply over the exponent p).
inline Poly poly_pow_p_mod(const Poly& t, std::int64_t p, const Poly& f) {
    Poly acc = {1};
    Poly base = poly_mod(t, f, p);
    std::uint64_t e = static_cast<std::uint64_t>(p);
    while (e) {
        if (e & 1) acc = poly_mod(poly_mul(acc, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return acc;
}

/// x^(p^k) mod f by iterating the p-th power map k times.
inline Poly poly_x_pow_pk_mod(std::int64_t p, int k, const Poly& f) {
    Poly t = poly_mod(Poly{0, 1}, f, p);
    for (int i = 0; i < k; ++i) t = poly_pow_p_mod(t, p, f);
    return t;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Deterministic irreducibility over Z/p: f of degree n is irreducible iff
/// x^(p^n) ≡ x (mod f) and gcd(x^(p^(n/q)) − x, f) = 1 for every prime q | n.
inline bool is_irreducible(const Poly& f, std::int64_t p) {
    int n = poly_deg(f);
    if (n < 1) throw error("is_irreducible: degree must be >= 1");
    if (f.back() != 1) throw error("is_irreducible: polynomial must be monic");
    if (n == 1) return true;
    Poly x = {0, 1};
    for (std::int64_t q : prime_factors(n)) {
        Poly t = poly_x_pow_pk_mod(p, n / static_cast<int>(q), f);
        Poly g = poly_gcd(poly_sub(t, x, p), f, p);
        if (poly_deg(g) != 0) return false;
    }
    Poly t = poly_x_pow_pk_mod(p, n, f);
    return poly_sub(t, x, p).empty();
}

/// Smallest monic irreducible of degree d over Z/p, scanning constant-first:
/// candidate k encodes coefficients (k mod p, (k/p) mod p, ...) below x^d.
inline Poly find_irreducible(std::int64_t p, int d) {
    if (d < 1) throw error("find_irreducible: degree must be >= 1");
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(p);
    for (std::uint64_t k = 0; k < total; ++k) {
        Poly f(d + 1, 0);
        std::uint64_t v = k;
        for (int i = 0; i < d; ++i) {
            f[i] = static_cast<std::int64_t>(v % p);
            v /= p;
        }
        f[d] = 1;
        if (d > 1 && f[0] == 0) continue;  // divisible by x
        if (is_irreducible(f, p)) return f;
    }
    throw error("find_irreducible: exhausted candidates (unreachable)");
}

inline std::string poly_to_string(const Poly& f) {
    if (f.empty()) return "0";
    std::string s;
    for (int i = poly_deg(f); i >= 0; --i) {
        if (f[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || f[i] != 1) s += std::to_string(f[i]);
        if (i > 0) {
            if (f[i] != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Field contexts and elements
// ---------------------------------------------------------------------------

/// GF(p^d) as Z/p[x]/(modulus). The context owns the modulus and the d×d
/// Frobenius matrix of x ↦ x^p in the polynomial basis; it is immutable and
/// safe to share across threads.
struct FieldCtx {
    std::int64_t p = 0;
    int d = 0;
    Poly modulus;                         // monic irreducible of degree d
    std::vector<std::int64_t> frobenius;  // row-major d×d: row i = coords of (x^i)^p

    FieldCtx(std::int64_t p_, Poly modulus_) : p(p_), modulus(std::move(modulus_)) {
        d = poly_deg(modulus);
        if (p < 3 || p % 2 == 0) throw error("FieldCtx: p must be an odd prime");
        if (d < 1 || modulus.back() != 1) throw error("FieldCtx: modulus must be monic, degree >= 1");
        if (!is_irreducible(modulus, p)) throw error("FieldCtx: modulus is reducible");
        frobenius.assign(static_cast<std::size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i) {
            Poly xi(static_cast<std::size_t>(i) + 1, 0);
            xi[i] = 1;
            Poly fp = poly_pow_p_mod(xi, p, modulus);
            for (std::size_t j = 0; j < fp.size(); ++j) frobenius[i * d + j] = fp[j];
        }
    }

    std::uint64_t order() const {  // p^d; callers keep d small enough for 64 bits
        std::uint64_t n = 1;
        for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(p);
        return n;
    }

    bool same_as(const FieldCtx& o) const { return p == o.p && d == o.d && modulus == o.modulus; }
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Canonical context: the smallest monic irreducible modulus for (p, d).
inline FieldCtxPtr make_field(std::int64_t p, int d) {
    return std::make_shared<const FieldCtx>(p, find_irreducible(p, d));
}

inline FieldCtxPtr make_field(std::int64_t p, Poly modulus) {
    return std::make_shared<const FieldCtx>(p, std::move(modulus));
}

/// Element of GF(p^d): length-d coefficient vector plus its context.
struct FieldElement {
    const FieldCtx* ctx = nullptr;
    std::vector<std::int64_t> c;  // always of size ctx->d, reduced mod p

    FieldElement() = default;
    FieldElement(const FieldCtx* ctx_, std::vector<std::int64_t> coeffs) : ctx(ctx_), c(std::move(coeffs)) {
        c.resize(ctx->d, 0);
        for (auto& v : c) v = mod_reduce(v, ctx->p);
    }

    bool is_zero() const {
        for (auto v : c)
            if (v != 0) return false;
        return true;
    }

    bool operator==(const FieldElement& o) const { return c == o.c && ctx->same_as(*o.ctx); }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

inline void check_same_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.ctx || !b.ctx || !a.ctx->same_as(*b.ctx))
        throw mismatch_error("field elements from different contexts");
}

inline FieldElement fe_zero(const FieldCtx& ctx) {
    return FieldElement(&ctx, std::vector<std::int64_t>(ctx.d, 0));
}

inline FieldElement fe_from_int(const FieldCtx& ctx, std::int64_t v) {
    std::vector<std::int64_t> c(ctx.d, 0);
    c[0] = mod_reduce(v, ctx.p);
    return FieldElement(&ctx, std::move(c));
}

inline FieldElement fe_one(const FieldCtx& ctx) { return fe_from_int(ctx, 1); }

/// The class of x (a generator of the polynomial basis; zero when d = 1).
inline FieldElement fe_gen(const FieldCtx& ctx) {
    std::vector<std::int64_t> c(ctx.d, 0);
    if (ctx.d > 1)
        c[1] = 1;
    else
        c[0] = mod_reduce(-ctx.modulus[0], ctx.p);  // x ≡ -c0 when modulus = x + c0
    return FieldElement(&ctx, std::move(c));
}

/// Element with index k in the enumeration order c0 + c1·p + c2·p² + ...
inline FieldElement fe_from_index(const FieldCtx& ctx, std::uint64_t k) {
    std::vector<std::int64_t> c(ctx.d, 0);
    for (int i = 0; i < ctx.d; ++i) {
        c[i] = static_cast<std::int64_t>(k % static_cast<std::uint64_t>(ctx.p));
        k /= static_cast<std::uint64_t>(ctx.p);
    }
    return FieldElement(&ctx, std::move(c));
}

inline std::uint64_t fe_index(const FieldElement& a) {
    std::uint64_t k = 0;
    for (int i = a.ctx->d - 1; i >= 0; --i)
        k = k * static_cast<std::uint64_t>(a.ctx->p) + static_cast<std::uint64_t>(a.c[i]);
    return k;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_ctx(a, b);
    std::vector<std::int64_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t v = a.c[i] + b.c[i];
        c[i] = v >= a.ctx->p ? v - a.ctx->p : v;
    }
    return FieldElement(a.ctx, std::move(c));
}

inline FieldElement operator-(const FieldElement& a) {
    std::vector<std::int64_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c[i] == 0 ? 0 : a.ctx->p - a.c[i];
    return FieldElement(a.ctx, std::move(c));
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_ctx(a, b);
    Poly pa(a.c), pb(b.c);
    poly_trim(pa);
    poly_trim(pb);
    Poly prod = poly_mod(poly_mul(pa, pb, a.ctx->p), a.ctx->modulus, a.ctx->p);
    prod.resize(a.ctx->d, 0);
    return FieldElement(a.ctx, std::move(prod));
}

inline FieldElement fe_scale(const FieldElement& a, std::int64_t s) {
    s = mod_reduce(s, a.ctx->p);
    std::vector<std::int64_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.c[i] * s) % a.ctx->p;
    return FieldElement(a.ctx, std::move(c));
}

inline FieldElement fe_inv(const FieldElement& a) {
    if (a.is_zero()) throw error("fe_inv: inverse of zero");
    // extended Euclid in Z/p[x]
    Poly r0 = a.ctx->modulus, r1(a.c);
    poly_trim(r1);
    Poly t0 = {}, t1 = {1};
    std::int64_t p = a.ctx->p;
    while (!poly_is_zero(r1)) {
        Poly q, r;
        poly_divmod(r0, r1, p, q, r);
        Poly t = poly_sub(t0, poly_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    // r0 = gcd is a nonzero constant
    std::int64_t inv = mod_inv(r0[0], p);
    Poly res;
    for (auto v : t0) res.push_back(mod_mul(v, inv, p));
    res.resize(a.ctx->d, 0);
    return FieldElement(a.ctx, std::move(res));
}

inline FieldElement fe_pow(FieldElement a, std::uint64_t e) {
    FieldElement acc = fe_one(*a.ctx);
    while (e) {
        if (e & 1) acc = acc * a;
        a = a * a;
        e >>= 1;
    }
    return acc;
}

/// The automorphism x ↦ x^(p^e), applied through the precomputed matrix.
inline FieldElement fe_frobenius(const FieldElement& a, int e) {
    const FieldCtx& ctx = *a.ctx;
    int d = ctx.d;
    e = ((e % d) + d) % d;
    std::vector<std::int64_t> cur = a.c;
    for (int step = 0; step < e; ++step) {
        std::vector<std::int64_t> next(d, 0);
        for (int i = 0; i < d; ++i) {
            if (cur[i] == 0) continue;
            for (int j = 0; j < d; ++j)
                next[j] = (next[j] + cur[i] * ctx.frobenius[i * d + j]) % ctx.p;
        }
        cur = std::move(next);
    }
    return FieldElement(a.ctx, std::move(cur));
}

/// a lies in the subfield of order p^e (for e | d) iff Frobenius^e fixes it.
inline bool fe_in_subfield(const FieldElement& a, int e) { return fe_frobenius(a, e) == a; }

/// Minimal polynomial of a over Z/p (product of distinct conjugate factors).
inline Poly fe_min_poly(const FieldElement& a) {
    std::vector<FieldElement> conj;
    FieldElement cur = a;
    do {
        conj.push_back(cur);
        cur = fe_frobenius(cur, 1);
    } while (!(cur == a));
    // expand prod (x - conj_i) with coefficients in GF(p^d); they land in Z/p
    std::vector<FieldElement> coeffs = {fe_one(*a.ctx)};
    for (const auto& r : conj) {
        std::vector<FieldElement> next(coeffs.size() + 1, fe_zero(*a.ctx));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = next[i + 1] + coeffs[i];
            next[i] = next[i] - coeffs[i] * r;
        }
        coeffs = std::move(next);
    }
    Poly out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        for (int j = 1; j < a.ctx->d; ++j)
            if (coeffs[i].c[j] != 0) throw error("fe_min_poly: coefficient outside prime field");
        out[i] = coeffs[i].c[0];
    }
    poly_trim(out);
    return out;
}

}  // namespace heiq
