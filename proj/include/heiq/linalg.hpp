#pragma once

// Exact dense linear algebra over Z/p and GF(p^d), row-vector convention
// (maps act on the right: x ↦ x·M), plus subspace combinatorics: canonical
// echelon forms, lattice operations, enumeration, Gaussian binomials.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heiq/error.hpp"
#include "heiq/ff.hpp"

namespace heiq {

// ---------------------------------------------------------------------------
// Field models for the templated routines
// ---------------------------------------------------------------------------

struct PrimeField {
    std::int64_t p;
    using Elt = std::int64_t;
    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }
    Elt add(Elt a, Elt b) const { Elt s = a + b; return s >= p ? s - p : s; }
    Elt sub(Elt a, Elt b) const { Elt s = a - b; return s < 0 ? s + p : s; }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt mul(Elt a, Elt b) const { return (a * b) % p; }
    Elt inv(Elt a) const { return mod_inv(a, p); }
    Elt from_int(std::int64_t v) const { return mod_reduce(v, p); }
    std::string to_string(Elt a) const { return std::to_string(a); }
};

struct ExtField {
    const FieldCtx* ctx;
    using Elt = FieldElement;
    Elt zero() const { return fe_zero(*ctx); }
    Elt one() const { return fe_one(*ctx); }
    bool is_zero(const Elt& a) const { return a.is_zero(); }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt inv(const Elt& a) const { return fe_inv(a); }
    Elt from_int(std::int64_t v) const { return fe_from_int(*ctx, v); }
    std::string to_string(const Elt& a) const {
        std::string s = "[";
        for (int i = 0; i < ctx->d; ++i) s += (i ? "," : "") + std::to_string(a.c[i]);
        return s + "]";
    }
};

template <class F>
std::string elt_vec_to_string(const F& k, const std::vector<typename F::Elt>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + k.to_string(v[i]);
    return s + ")";
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

template <class F>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<typename F::Elt> a;

    Matrix() = default;
    Matrix(int r, int c, typename F::Elt fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    typename F::Elt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const typename F::Elt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

using Mat = Matrix<PrimeField>;
using KMat = Matrix<ExtField>;

template <class F>
Matrix<F> make_zero(const F& k, int r, int c) {
    return Matrix<F>(r, c, k.zero());
}

template <class F>
Matrix<F> make_identity(const F& k, int n) {
    Matrix<F> m(n, n, k.zero());
    for (int i = 0; i < n; ++i) m.at(i, i) = k.one();
    return m;
}

inline Mat mat_from(std::int64_t p, int r, int c, std::initializer_list<std::int64_t> vals) {
    Mat m(r, c, 0);
    int i = 0;
    for (auto v : vals) m.a[i++] = mod_reduce(v, p);
    return m;
}

template <class F>
bool mat_eq(const F& k, const Matrix<F>& x, const Matrix<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!k.eq(x.a[i], y.a[i])) return false;
    return true;
}

template <class F>
Matrix<F> mat_add(const F& k, const Matrix<F>& x, const Matrix<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw mismatch_error("mat_add: shape mismatch");
    Matrix<F> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.add(r.a[i], y.a[i]);
    return r;
}

template <class F>
Matrix<F> mat_sub(const F& k, const Matrix<F>& x, const Matrix<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw mismatch_error("mat_sub: shape mismatch");
    Matrix<F> r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.sub(r.a[i], y.a[i]);
    return r;
}

template <class F>
Matrix<F> mat_scale(const F& k, const Matrix<F>& x, const typename F::Elt& s) {
    Matrix<F> r = x;
    for (auto& v : r.a) v = k.mul(v, s);
    return r;
}

template <class F>
Matrix<F> mat_mul(const F& k, const Matrix<F>& x, const Matrix<F>& y) {
    if (x.cols != y.rows) throw mismatch_error("mat_mul: shape mismatch");
    Matrix<F> r(x.rows, y.cols, k.zero());
    for (int i = 0; i < x.rows; ++i)
        for (int l = 0; l < x.cols; ++l) {
            const auto& v = x.at(i, l);
            if (k.is_zero(v)) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = k.add(r.at(i, j), k.mul(v, y.at(l, j)));
        }
    return r;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& x) {
    Matrix<F> r(x.cols, x.rows, x.a.empty() ? typename F::Elt() : x.a[0]);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

/// Row vector times matrix.
template <class F>
std::vector<typename F::Elt> vec_mat(const F& k, const std::vector<typename F::Elt>& v, const Matrix<F>& m) {
    if (static_cast<int>(v.size()) != m.rows) throw mismatch_error("vec_mat: shape mismatch");
    std::vector<typename F::Elt> r(m.cols, k.zero());
    for (int i = 0; i < m.rows; ++i) {
        if (k.is_zero(v[i])) continue;
        for (int j = 0; j < m.cols; ++j) r[j] = k.add(r[j], k.mul(v[i], m.at(i, j)));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Echelon forms and the standard solvers
// ---------------------------------------------------------------------------

template <class F>
struct Echelon {
    Matrix<F> mat;            // reduced row-echelon form
    std::vector<int> pivots;  // pivot column per nonzero row
};

/// Reduced row-echelon form (canonical for the row space).
template <class F>
Echelon<F> rref(const F& k, Matrix<F> m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!k.is_zero(m.at(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        auto inv = k.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = k.mul(m.at(r, j), inv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || k.is_zero(m.at(i, c))) continue;
            auto f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    m.rows = r;  // drop zero rows
    m.a.resize(static_cast<std::size_t>(r) * m.cols);
    return {std::move(m), std::move(pivots)};
}

template <class F>
int rank(const F& k, const Matrix<F>& m) {
    return static_cast<int>(rref(k, m).pivots.size());
}

/// Basis (as rref rows) of the left kernel {x : x·m = 0}.
template <class F>
Matrix<F> kernel(const F& k, const Matrix<F>& m) {
    Echelon<F> e = rref(k, transpose(m));  // columns of m^T = rows of m ... unknowns indexed by m.rows
    int n = m.rows;
    std::vector<char> is_pivot(n, 0);
    for (int c : e.pivots) is_pivot[c] = 1;
    Matrix<F> out(0, n, k.zero());
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<typename F::Elt> row(n, k.zero());
        row[c] = k.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            row[e.pivots[r]] = k.neg(e.mat.at(static_cast<int>(r), c));
        out.rows++;
        out.a.insert(out.a.end(), row.begin(), row.end());
    }
    return rref(k, out).mat;
}

/// Row space basis in canonical form.
template <class F>
Matrix<F> image(const F& k, const Matrix<F>& m) {
    return rref(k, m).mat;
}

template <class F>
struct SolveResult {
    bool consistent = false;
    std::vector<typename F::Elt> particular;  // one x with x·m = b
    Matrix<F> homogeneous;                    // basis of {x : x·m = 0}
};

/// Solves x·m = b for a row vector x.
template <class F>
SolveResult<F> solve(const F& k, const Matrix<F>& m, const std::vector<typename F::Elt>& b) {
    if (static_cast<int>(b.size()) != m.cols) throw mismatch_error("solve: rhs length mismatch");
    // augment m^T with b^T as an extra column, eliminate
    Matrix<F> aug(m.cols, m.rows + 1, k.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) aug.at(j, i) = m.at(i, j);
    for (int j = 0; j < m.cols; ++j) aug.at(j, m.rows) = b[j];
    Echelon<F> e = rref(k, std::move(aug));
    SolveResult<F> res;
    res.homogeneous = kernel(k, m);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        if (e.pivots[r] == m.rows) return res;  // pivot in rhs column: inconsistent
    res.consistent = true;
    res.particular.assign(m.rows, k.zero());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        res.particular[e.pivots[r]] = e.mat.at(static_cast<int>(r), m.rows);
    return res;
}

template <class F>
std::optional<Matrix<F>> try_inverse(const F& k, const Matrix<F>& m) {
    if (m.rows != m.cols) throw mismatch_error("inverse: matrix not square");
    int n = m.rows;
    Matrix<F> aug(n, 2 * n, k.zero());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = k.one();
    }
    Echelon<F> e = rref(k, std::move(aug));
    if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix<F> inv(n, n, k.zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = e.mat.at(i, n + j);
    return inv;
}

template <class F>
Matrix<F> inverse(const F& k, const Matrix<F>& m) {
    auto inv = try_inverse(k, m);
    if (!inv) throw error("inverse: singular matrix");
    return *inv;
}

/// Vertical stack.
template <class F>
Matrix<F> vstack(const Matrix<F>& x, const Matrix<F>& y) {
    if (x.cols != y.cols && x.rows != 0 && y.rows != 0) throw mismatch_error("vstack: column mismatch");
    Matrix<F> r = x;
    if (r.rows == 0) r.cols = y.cols;
    r.rows += y.rows;
    r.a.insert(r.a.end(), y.a.begin(), y.a.end());
    return r;
}

// ---------------------------------------------------------------------------
// Minimal polynomial of a Z/p matrix (monic generator of its annihilator)
// ---------------------------------------------------------------------------

inline Poly minimal_polynomial(std::int64_t p, const Mat& m) {
    if (m.rows != m.cols) throw mismatch_error("minimal_polynomial: matrix not square");
    PrimeField k{p};
    int n = m.rows;
    Poly acc = {1};
    for (int s = 0; s < n; ++s) {
        // local minimal polynomial of e_s: first dependency among e_s, e_s m, ...
        std::vector<std::vector<std::int64_t>> krylov;
        std::vector<std::int64_t> v(n, 0);
        v[s] = 1;
        while (true) {
            Mat stacked(static_cast<int>(krylov.size()) + 1, n, 0);
            for (std::size_t i = 0; i < krylov.size(); ++i)
                for (int j = 0; j < n; ++j) stacked.at(static_cast<int>(i), j) = krylov[i][j];
            for (int j = 0; j < n; ++j) stacked.at(static_cast<int>(krylov.size()), j) = v[j];
            if (rank(k, stacked) <= static_cast<int>(krylov.size())) break;
            krylov.push_back(v);
            v = vec_mat(k, v, m);
        }
        // express v in the krylov basis: v = sum c_i (e_s m^i)
        Mat basis(static_cast<int>(krylov.size()), n, 0);
        for (std::size_t i = 0; i < krylov.size(); ++i)
            for (int j = 0; j < n; ++j) basis.at(static_cast<int>(i), j) = krylov[i][j];
        auto sol = solve(k, basis, v);
        if (!sol.consistent) throw error("minimal_polynomial: internal inconsistency");
        Poly local(krylov.size() + 1, 0);
        local[krylov.size()] = 1;
        for (std::size_t i = 0; i < krylov.size(); ++i) local[i] = k.neg(sol.particular[i]);
        // acc = lcm(acc, local)
        Poly g = poly_gcd(acc, local, p);
        Poly q, r;
        poly_divmod(local, g, p, q, r);
        acc = poly_mul(acc, q, p);
        if (poly_deg(acc) == n) break;
    }
    return poly_make_monic(acc, p);
}

/// Matrix obtained by substituting m into f.
inline Mat poly_eval_matrix(std::int64_t p, const Poly& f, const Mat& m) {
    PrimeField k{p};
    Mat acc = make_zero(k, m.rows, m.cols);
    Mat pw = make_identity(k, m.rows);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != 0) acc = mat_add(k, acc, mat_scale(k, pw, f[i]));
        if (i + 1 < f.size()) pw = mat_mul(k, pw, m);
    }
    return acc;
}

inline Mat companion_matrix(std::int64_t p, const Poly& f) {
    int n = poly_deg(f);
    Mat m(n, n, 0);
    for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;  // x^i ↦ x^{i+1}, row convention
    for (int j = 0; j < n; ++j) m.at(n - 1, j) = mod_reduce(-f[j], p);
    return m;
}

// ---------------------------------------------------------------------------
// Subspaces of (Z/p)^n, canonically represented by reduced echelon bases
// ---------------------------------------------------------------------------

struct Subspace {
    std::int64_t p = 0;
    int ambient = 0;
    Mat basis;                // rref, no zero rows; rows are basis vectors
    std::vector<int> pivots;  // pivot columns, strictly increasing

    Subspace() = default;

    static Subspace from_generators(std::int64_t p, int ambient, const Mat& rows) {
        if (rows.cols != ambient && rows.rows != 0) throw mismatch_error("Subspace: ambient mismatch");
        Subspace s;
        s.p = p;
        s.ambient = ambient;
        Mat m = rows;
        m.cols = ambient;
        Echelon<PrimeField> e = rref(PrimeField{p}, std::move(m));
        s.basis = std::move(e.mat);
        s.pivots = std::move(e.pivots);
        return s;
    }

    static Subspace zero(std::int64_t p, int ambient) {
        Subspace s;
        s.p = p;
        s.ambient = ambient;
        s.basis = Mat(0, ambient, 0);
        return s;
    }

    static Subspace full(std::int64_t p, int ambient) {
        return from_generators(p, ambient, make_identity(PrimeField{p}, ambient));
    }

    int dim() const { return basis.rows; }

    bool contains_vector(const std::vector<std::int64_t>& v) const {
        PrimeField k{p};
        std::vector<std::int64_t> w(v);
        for (int r = 0; r < basis.rows; ++r) {
            std::int64_t c = w[pivots[r]];
            if (c == 0) continue;
            for (int j = 0; j < ambient; ++j) w[j] = k.sub(w[j], k.mul(c, basis.at(r, j)));
        }
        for (auto x : w)
            if (x != 0) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        for (int r = 0; r < other.basis.rows; ++r) {
            std::vector<std::int64_t> v(other.basis.a.begin() + static_cast<std::size_t>(r) * ambient,
                                        other.basis.a.begin() + static_cast<std::size_t>(r + 1) * ambient);
            if (!contains_vector(v)) return false;
        }
        return true;
    }

    bool operator==(const Subspace& o) const {
        return p == o.p && ambient == o.ambient && basis.a == o.basis.a && basis.rows == o.basis.rows;
    }

    /// Row-major comparison of echelon bases (dimension first); a total order
    /// used for canonical orbit representatives.
    bool operator<(const Subspace& o) const {
        if (dim() != o.dim()) return dim() < o.dim();
        return basis.a < o.basis.a;
    }
};

inline void check_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.p != b.p || a.ambient != b.ambient) throw mismatch_error("subspaces in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    check_same_ambient(a, b);
    return Subspace::from_generators(a.p, a.ambient, vstack(a.basis, b.basis));
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    check_same_ambient(a, b);
    PrimeField k{a.p};
    // (x, y)·[A; -B] = 0 gives xA = yB; intersection is spanned by the xA
    Mat stacked = vstack(a.basis, mat_scale(k, b.basis, k.from_int(-1)));
    Mat ker = kernel(k, stacked);
    Mat gens(ker.rows, a.ambient, 0);
    for (int r = 0; r < ker.rows; ++r)
        for (int i = 0; i < a.basis.rows; ++i) {
            std::int64_t c = ker.at(r, i);
            if (c == 0) continue;
            for (int j = 0; j < a.ambient; ++j)
                gens.at(r, j) = k.add(gens.at(r, j), k.mul(c, a.basis.at(i, j)));
        }
    return Subspace::from_generators(a.p, a.ambient, gens);
}

/// Complement coordinates for the quotient ambient/S: the non-pivot unit
/// vectors extend S's basis to the whole space. Returns the projection
/// matrix (ambient × codim) sending w to its coordinates mod S.
inline Mat quotient_map(const Subspace& s) {
    PrimeField k{s.p};
    std::vector<char> is_pivot(s.ambient, 0);
    for (int c : s.pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < s.ambient; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat proj(s.ambient, static_cast<int>(free_cols.size()), 0);
    // reduce each unit vector by the basis, then read free coordinates
    for (int e = 0; e < s.ambient; ++e) {
        std::vector<std::int64_t> w(s.ambient, 0);
        w[e] = 1;
        for (int r = 0; r < s.basis.rows; ++r) {
            std::int64_t c = w[s.pivots[r]];
            if (c == 0) continue;
            for (int j = 0; j < s.ambient; ++j) w[j] = k.sub(w[j], k.mul(c, s.basis.at(r, j)));
        }
        for (std::size_t f = 0; f < free_cols.size(); ++f) proj.at(e, static_cast<int>(f)) = w[free_cols[f]];
    }
    return proj;
}

/// Image of a subspace under a linear map (ambient_from × ambient_to).
inline Subspace subspace_apply(const Subspace& s, const Mat& m) {
    PrimeField k{s.p};
    return Subspace::from_generators(s.p, m.cols, mat_mul(k, s.basis, m));
}

// ---------------------------------------------------------------------------
// Counting and enumerating subspaces
// ---------------------------------------------------------------------------

inline mpz_class mpz_pow(std::int64_t base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

/// Number of s-dimensional subspaces of (Z/p)^d, exactly.
inline mpz_class gaussian_binomial(int d, int s, std::int64_t p) {
    if (s < 0 || s > d) throw error("gaussian_binomial: need 0 <= s <= d");
    mpz_class num = 1, den = 1;
    for (int i = 1; i <= s; ++i) {
        num *= mpz_pow(p, static_cast<unsigned long>(d)) - mpz_pow(p, static_cast<unsigned long>(i - 1));
        den *= mpz_pow(p, static_cast<unsigned long>(s)) - mpz_pow(p, static_cast<unsigned long>(i - 1));
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (q < mpz_pow(p, static_cast<unsigned long>(s * (d - s))))
        throw error("gaussian_binomial: value below p^(s(d-s)) (unreachable)");
    return q;
}

/// Streams every t-dimensional subspace of (Z/p)^d exactly once, iterating
/// pivot-column sets lexicographically and the free entries as a base-p
/// counter (a fixed, reproducible order over echelon forms).
class SubspaceEnumerator {
public:
    SubspaceEnumerator(std::int64_t p, int ambient, int t) : p_(p), d_(ambient), t_(t) {
        if (t < 0 || t > ambient) throw error("enumerate_subspaces: need 0 <= t <= ambient");
        pivots_.resize(t);
        for (int i = 0; i < t; ++i) pivots_[i] = i;
        fresh_pivots_ = true;
    }

    std::optional<Subspace> next() {
        if (t_ == 0) {
            if (done_) return std::nullopt;
            done_ = true;
            return Subspace::zero(p_, d_);
        }
        while (true) {
            if (done_) return std::nullopt;
            if (fresh_pivots_) {
                free_positions_.clear();
                std::vector<char> is_pivot(d_, 0);
                for (int c : pivots_) is_pivot[c] = 1;
                for (int r = 0; r < t_; ++r)
                    for (int c = pivots_[r] + 1; c < d_; ++c)
                        if (!is_pivot[c]) free_positions_.push_back({r, c});
                counter_.assign(free_positions_.size(), 0);
                fresh_pivots_ = false;
                counter_done_ = false;
            }
            if (!counter_done_) {
                Subspace s = build();
                advance_counter();
                return s;
            }
            if (!next_pivot_set()) done_ = true;
        }
    }

    mpz_class total() const { return gaussian_binomial(d_, t_, p_); }

private:
    Subspace build() const {
        Mat m(t_, d_, 0);
        for (int r = 0; r < t_; ++r) m.at(r, pivots_[r]) = 1;
        for (std::size_t i = 0; i < free_positions_.size(); ++i)
            m.at(free_positions_[i].first, free_positions_[i].second) = counter_[i];
        Subspace s;
        s.p = p_;
        s.ambient = d_;
        s.basis = std::move(m);
        s.pivots = pivots_;
        return s;
    }

    void advance_counter() {
        for (std::size_t i = 0; i < counter_.size(); ++i) {
            if (++counter_[i] < p_) return;
            counter_[i] = 0;
        }
        counter_done_ = true;
    }

    bool next_pivot_set() {
        // next lexicographic t-combination of {0..d-1}
        int i = t_ - 1;
        while (i >= 0 && pivots_[i] == d_ - t_ + i) --i;
        if (i < 0) return false;
        ++pivots_[i];
        for (int j = i + 1; j < t_; ++j) pivots_[j] = pivots_[j - 1] + 1;
        fresh_pivots_ = true;
        return true;
    }

    std::int64_t p_;
    int d_, t_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_positions_;
    std::vector<std::int64_t> counter_;
    bool fresh_pivots_ = false, counter_done_ = false, done_ = false;
};

/// Collects the full stream; refuses if the count exceeds the budget.
inline std::vector<Subspace> enumerate_subspaces(std::int64_t p, int ambient, int t,
                                                 std::uint64_t budget = 1000000) {
    mpz_class total = gaussian_binomial(ambient, t, p);
    if (total > mpz_class(static_cast<unsigned long>(budget)))
        throw budget_error("enumerate_subspaces: would yield " + total.get_str() +
                           " subspaces, budget " + std::to_string(budget));
    std::vector<Subspace> out;
    out.reserve(total.get_ui());
    SubspaceEnumerator en(p, ambient, t);
    while (auto s = en.next()) out.push_back(std::move(*s));
    return out;
}

// ---------------------------------------------------------------------------
// Bridges between GF(p^d)-matrices and their Z/p flattenings
// ---------------------------------------------------------------------------

/// d×d matrix over Z/p of multiplication by t in the polynomial basis:
/// row i holds the coordinates of x^i · t.
inline Mat mult_matrix(const FieldElement& t) {
    const FieldCtx& ctx = *t.ctx;
    Mat m(ctx.d, ctx.d, 0);
    FieldElement xi = fe_one(ctx);
    for (int i = 0; i < ctx.d; ++i) {
        FieldElement row = xi * t;
        for (int j = 0; j < ctx.d; ++j) m.at(i, j) = row.c[j];
        if (i + 1 < ctx.d) {
            std::vector<std::int64_t> shifted(ctx.d, 0);
            for (int j = 0; j + 1 < ctx.d; ++j) shifted[j + 1] = xi.c[j];
            // reduce x^(i+1) mod modulus when it overflows; x^i stays monomial here
            xi = FieldElement(&ctx, std::move(shifted));
        }
    }
    return m;
}

/// Z/p matrix of a K-linear map given by a K-matrix, in slot-major coordinates
/// (slot a of a row vector occupies entries [a·d, (a+1)·d)).
inline Mat flatten_kmatrix(const FieldCtx& ctx, const KMat& t) {
    int d = ctx.d;
    Mat out(t.rows * d, t.cols * d, 0);
    for (int a = 0; a < t.rows; ++a)
        for (int b = 0; b < t.cols; ++b) {
            Mat blk = mult_matrix(t.at(a, b));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) out.at(a * d + i, b * d + j) = blk.at(i, j);
        }
    return out;
}

/// Z/p matrix applying Frobenius^e to every K-slot.
inline Mat flatten_frobenius(const FieldCtx& ctx, int slots, int e) {
    int d = ctx.d;
    PrimeField k{ctx.p};
    Mat f1(d, d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f1.at(i, j) = ctx.frobenius[i * d + j];
    Mat fe = make_identity(k, d);
    e = ((e % d) + d) % d;
    for (int s = 0; s < e; ++s) fe = mat_mul(k, fe, f1);
    Mat out(slots * d, slots * d, 0);
    for (int a = 0; a < slots; ++a)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.at(a * d + i, a * d + j) = fe.at(i, j);
    return out;
}

}  // namespace heiq
