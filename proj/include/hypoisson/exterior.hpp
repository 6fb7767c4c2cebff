#pragma once

// Exterior algebra on Lambda^p C^n in the lexicographic e_I basis:
// multi-index ranking, the Hermitian inner product, interior/exterior
// products, Hodge star, the SO(n) action tau_p as compound matrices, and the
// M-equivariant embeddings between Lambda^q C^{n-1} and Lambda^p C^n.
//
// (C^n)* is identified with C^n via the standard basis throughout; all
// operators act on coefficient vectors in lexicographic multi-index order.

#include <vector>

#include "hypoisson/core.hpp"

namespace hypoisson {

/// Strictly increasing p-subset of {1,...,n}.
using MultiIndex = std::vector<int>;

/// Coefficient vector of a p-form over C^n (length C(n,p), lexicographic).
struct PForm {
    int n = 0;
    int p = 0;
    CVec c;

    PForm() = default;
    PForm(int n_, int p_) : n(n_), p(p_), c(binomial(n_, p_), cplx{}) {}
    PForm(int n_, int p_, CVec coeffs) : n(n_), p(p_), c(std::move(coeffs)) {}

    PForm& operator+=(const PForm& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
};

inline PForm operator+(PForm a, const PForm& b) { a += b; return a; }

inline PForm operator-(const PForm& a, const PForm& b) {
    PForm r(a.n, a.p);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

inline PForm operator*(cplx s, PForm a) {
    for (auto& x : a.c) x *= s;
    return a;
}

inline double norm2(const PForm& w) { return norm2(w.c); }

inline void check_multi_index(const MultiIndex& I, int n) {
    int prev = 0;
    for (int v : I) {
        if (v < 1 || v > n || v <= prev)
            throw std::domain_error("multi-index must be strictly increasing within [1,n]");
        prev = v;
    }
}

/// Lexicographic rank of a p-subset among all p-subsets of {1,...,n}.
inline int rank(const MultiIndex& I, int n) {
    check_multi_index(I, n);
    const int p = static_cast<int>(I.size());
    long r = 0;
    int prev = 0;
    for (int j = 0; j < p; ++j) {
        for (int v = prev + 1; v < I[j]; ++v) r += binomial(n - v, p - j - 1);
        prev = I[j];
    }
    return static_cast<int>(r);
}

inline MultiIndex unrank(int r, int n, int p) {
    if (r < 0 || r >= binomial(n, p)) throw std::domain_error("unrank: rank out of range");
    MultiIndex I(p);
    int v = 1;
    long rem = r;
    for (int j = 0; j < p; ++j) {
        for (;; ++v) {
            const long block = binomial(n - v, p - j - 1);
            if (rem < block) { I[j] = v++; break; }
            rem -= block;
        }
    }
    return I;
}

inline PForm basis_form(int n, int p, const MultiIndex& I) {
    PForm w(n, p);
    w.c[rank(I, n)] = 1.0;
    return w;
}

/// <.,.> on Lambda^p C^n; conjugate-linear in the second argument.  On
/// decomposables this is det(<v_i, w_j>), and the e_I are orthonormal.
inline cplx inner(const PForm& w, const PForm& x) {
    if (w.n != x.n || w.p != x.p) throw std::domain_error("inner: mismatched (n,p)");
    return hdot(w.c, x.c);
}

/// Interior product iota_v w, degree p -> p-1, sign (-1)^{r-1} on basis forms.
inline PForm interior(const RVec& v, const PForm& w) {
    if (w.p < 1) throw std::domain_error("interior: degree must be >= 1");
    PForm r(w.n, w.p - 1);
    const long dim = binomial(w.n, w.p);
    for (long idx = 0; idx < dim; ++idx) {
        if (w.c[idx] == cplx{}) continue;
        const MultiIndex I = unrank(static_cast<int>(idx), w.n, w.p);
        MultiIndex J(w.p - 1);
        for (int pos = 0; pos < w.p; ++pos) {
            const double vj = v[I[pos] - 1];
            if (vj == 0.0) continue;
            for (int t = 0, s = 0; t < w.p; ++t)
                if (t != pos) J[s++] = I[t];
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            r.c[rank(J, w.n)] += sign * vj * w.c[idx];
        }
    }
    return r;
}

/// Exterior product eps_v w = v* ^ w, degree p -> p+1.
inline PForm exterior_mul(const RVec& v, const PForm& w) {
    if (w.p >= w.n) throw std::domain_error("exterior_mul: degree must be <= n-1");
    PForm r(w.n, w.p + 1);
    const long dim = binomial(w.n, w.p);
    for (long idx = 0; idx < dim; ++idx) {
        if (w.c[idx] == cplx{}) continue;
        const MultiIndex I = unrank(static_cast<int>(idx), w.n, w.p);
        for (int j = 1; j <= w.n; ++j) {
            const double vj = v[j - 1];
            if (vj == 0.0) continue;
            int before = 0;
            bool member = false;
            for (int iv : I) {
                if (iv == j) { member = true; break; }
                if (iv < j) ++before;
            }
            if (member) continue;
            MultiIndex J(w.p + 1);
            int s = 0;
            for (int iv : I) { if (iv < j) J[s++] = iv; }
            J[s++] = j;
            for (int iv : I) { if (iv > j) J[s++] = iv; }
            const double sign = (before % 2 == 0) ? 1.0 : -1.0;
            r.c[rank(J, w.n)] += sign * vj * w.c[idx];
        }
    }
    return r;
}

inline RVec unit_vector(int n, int j) {
    RVec e(n, 0.0);
    e[j - 1] = 1.0;
    return e;
}

/// Hodge star, *e_I = sign(I, I^c) e_{I^c} against the ordered basis 1..n.
inline PForm hodge_star(const PForm& w) {
    PForm r(w.n, w.n - w.p);
    const long dim = binomial(w.n, w.p);
    std::vector<char> in(w.n + 1);
    for (long idx = 0; idx < dim; ++idx) {
        if (w.c[idx] == cplx{}) continue;
        const MultiIndex I = unrank(static_cast<int>(idx), w.n, w.p);
        std::fill(in.begin(), in.end(), 0);
        for (int iv : I) in[iv] = 1;
        MultiIndex J;
        J.reserve(w.n - w.p);
        for (int v = 1; v <= w.n; ++v)
            if (!in[v]) J.push_back(v);
        // sign of the permutation (I, J) -> (1..n): count inversions
        long inv = 0;
        for (int pos = 0; pos < w.p; ++pos) inv += I[pos] - 1 - pos;
        const double sign = (inv % 2 == 0) ? 1.0 : -1.0;
        r.c[rank(J, w.n)] += sign * w.c[idx];
    }
    return r;
}

namespace detail {

/// p x p subdeterminant of k with rows J, columns I (both multi-indices).
inline double minor_det(const RMat& k, const MultiIndex& J, const MultiIndex& I) {
    const int p = static_cast<int>(I.size());
    if (p == 0) return 1.0;
    if (p == 1) return k(J[0] - 1, I[0] - 1);
    if (p == 2)
        return k(J[0] - 1, I[0] - 1) * k(J[1] - 1, I[1] - 1) -
               k(J[0] - 1, I[1] - 1) * k(J[1] - 1, I[0] - 1);
    RMat sub(p, p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) sub(r, c) = k(J[r] - 1, I[c] - 1);
    return det(sub);
}

}  // namespace detail

/// p-th compound matrix of k: the matrix of Lambda^p k in the e_I basis.
inline RMat compound_matrix(const RMat& k, int p) {
    const int n = k.rows();
    const int d = static_cast<int>(binomial(n, p));
    if (p == 0) return RMat::identity(1);
    if (p == 1) return k;
    std::vector<MultiIndex> subsets(d);
    for (int i = 0; i < d; ++i) subsets[i] = unrank(i, n, p);
    RMat m(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) m(i, j) = detail::minor_det(k, subsets[i], subsets[j]);
    return m;
}

/// tau_p(k) w for k in SO(n); acts as Lambda^p k on decomposables.
inline PForm tau_apply(const RMat& k, const PForm& w) {
    if (k.rows() != w.n || k.cols() != w.n) throw std::domain_error("tau_apply: size mismatch");
    if (orthogonality_residual(k) > 1e-10)
        throw std::domain_error("tau_apply: input is not orthogonal");
    return PForm(w.n, w.p, compound_matrix(k, w.p) * w.c);
}

// ---------------------------------------------------------------------------
// Embeddings Lambda^q C^{n-1} -> Lambda^p C^n (iota_q^p) and projections
// (pi_p^q).  C^{n-1} is identified with span{e_2,...,e_n}; subsets of
// {1..n-1} shift by one.  For q = p-1 the embedding is xi -> e_1 ^ xi.
// ---------------------------------------------------------------------------

namespace detail {

inline int embed_rank(int n, int p, int q, int source_rank) {
    MultiIndex S = unrank(source_rank, n - 1, q);
    MultiIndex T;
    T.reserve(p);
    if (q == p - 1) T.push_back(1);
    for (int v : S) T.push_back(v + 1);
    return rank(T, n);
}

}  // namespace detail

/// Matrix of iota_q^p, C(n,p) x C(n-1,q), with 0/1 entries.
inline RMat iota_matrix(int n, int p, int q) {
    if (q != p && q != p - 1) throw std::domain_error("iota_matrix: q must be p-1 or p");
    if (q < 0 || q > n - 1) throw std::domain_error("iota_matrix: q out of range");
    const int rows = static_cast<int>(binomial(n, p));
    const int cols = static_cast<int>(binomial(n - 1, q));
    RMat m(rows, cols);
    for (int s = 0; s < cols; ++s) m(detail::embed_rank(n, p, q, s), s) = 1.0;
    return m;
}

/// iota_q^p xi: isometric, M-equivariant.  xi lives over C^{n-1} (xi.n == n-1).
inline PForm embed(int p, const PForm& xi) {
    const int n = xi.n + 1;
    const int q = xi.p;
    if (q != p && q != p - 1) throw std::domain_error("embed: q must be p-1 or p");
    PForm r(n, p);
    const long d = binomial(n - 1, q);
    for (long s = 0; s < d; ++s)
        r.c[detail::embed_rank(n, p, q, static_cast<int>(s))] = xi.c[s];
    return r;
}

/// pi_p^q w: the adjoint of embed.  Returns a q-form over C^{n-1}.
inline PForm project(int q, const PForm& w) {
    const int n = w.n;
    const int p = w.p;
    if (q != p && q != p - 1) throw std::domain_error("project: q must be p-1 or p");
    if (q < 0 || q > n - 1) throw std::domain_error("project: q out of range");
    PForm r(n - 1, q);
    const long d = binomial(n - 1, q);
    for (long s = 0; s < d; ++s)
        r.c[s] = w.c[detail::embed_rank(n, p, q, static_cast<int>(s))];
    return r;
}

/// The block projector iota_q^p pi_p^q on Lambda^p C^n (0/1 diagonal).
inline RMat block_projector(int n, int p, int q) {
    const RMat io = iota_matrix(n, p, q);
    return io * io.transpose();
}

/// sigma_q(m) xi for m in SO(n-1) acting on Lambda^q C^{n-1} coefficients.
inline CVec sigma_apply(const RMat& m, int q, const CVec& xi) {
    if (q == 0) return xi;
    return compound_matrix(m, q) * xi;
}

}  // namespace hypoisson
