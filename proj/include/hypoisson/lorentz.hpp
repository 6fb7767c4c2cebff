#pragma once

// The group SO_0(n,1) acting on R^{n+1} with the form x_1^2+...+x_n^2-x_{n+1}^2:
// one-parameter subgroups a_t, the nilpotent groups N and Nbar, embeddings of
// K = SO(n) and M = SO(n-1), the exact Iwasawa KAN factorization by forward
// substitution in the light-cone basis, a section of S^{n-1} -> K, and the
// Klein-ball action.
//
// Convention note: the horospherical coordinate is always taken as H(g^{-1}k).
// The variant H(a_t^{-1}k^{-1}) appearing in some integral estimates equals
// the same Jacobi-function value after the change of variables k -> k^{-1} on
// K, so nothing downstream depends on the distinction.

#include <vector>

#include "hypoisson/core.hpp"

namespace hypoisson {

/// Element of SO_0(n,1) as an (n+1)x(n+1) real matrix.
struct GroupElement {
    RMat m;

    int n() const { return m.rows() - 1; }
};

/// Iwasawa factors of g = embed_K(k) * geodesic(t) * n_of(y).
struct IwasawaFactors {
    RMat k;           // n x n orthogonal, det 1
    double t = 0.0;   // A-coordinate, H(g)
    RVec y;           // N-parameter in R^{n-1}
};

inline RMat lorentz_J(int n) {
    RMat j = RMat::identity(n + 1);
    j(n, n) = -1.0;
    return j;
}

inline double lorentz_residual(const GroupElement& g) {
    const int n = g.n();
    const RMat j = lorentz_J(n);
    const RMat r = g.m.transpose() * j * g.m - j;
    return max_abs(r);
}

inline void check_group_element(const GroupElement& g) {
    const int n = g.n();
    if (lorentz_residual(g) > 1e-10)
        throw std::domain_error("GroupElement: g^T J g != J");
    if (std::abs(det(g.m) - 1.0) > 1e-8)
        throw std::domain_error("GroupElement: det != 1");
    if (g.m(n, n) < 1.0 - 1e-10)
        throw std::domain_error("GroupElement: not in the identity component");
}

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.m * b.m};
}

/// Lorentz inverse, g^{-1} = J g^T J (exact up to roundoff).
inline GroupElement inverse(const GroupElement& g) {
    const RMat j = lorentz_J(g.n());
    return {j * g.m.transpose() * j};
}

/// a_t = exp(t H_0): cosh t / sinh t in the (1, n+1) corners.
inline GroupElement geodesic(int n, double t) {
    RMat m = RMat::identity(n + 1);
    m(0, 0) = std::cosh(t);
    m(n, n) = std::cosh(t);
    m(0, n) = std::sinh(t);
    m(n, 0) = std::sinh(t);
    return {m};
}

/// n(y) = exp X(y) = I + X + X^2/2 (X^3 = 0).
inline GroupElement n_of(int n, const RVec& y) {
    RMat m = RMat::identity(n + 1);
    double y2 = 0;
    for (double v : y) y2 += v * v;
    for (int j = 1; j <= n - 1; ++j) {
        const double v = y[j - 1];
        m(0, j) += v;
        m(j, 0) += -v;
        m(j, n) += v;
        m(n, j) += v;
    }
    // X^2/2: X^2 maps (a, w, b) -> ((b-a)|y|^2, 0, (b-a)|y|^2)
    m(0, 0) += -y2 / 2;
    m(0, n) += y2 / 2;
    m(n, 0) += -y2 / 2;
    m(n, n) += y2 / 2;
    return {m};
}

/// nbar(y) = theta(n(y)) = J n(y) J.
inline GroupElement nbar_of(int n, const RVec& y) {
    const RMat j = lorentz_J(n);
    return {j * n_of(n, y).m * j};
}

inline GroupElement embed_K(const RMat& k) {
    const int n = k.rows();
    if (orthogonality_residual(k) > 1e-10 || det(k) < 0)
        throw std::domain_error("embed_K: input not in SO(n)");
    RMat m = RMat::identity(n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = k(i, j);
    return {m};
}

inline GroupElement embed_M(const RMat& mm) {
    const int n = mm.rows() + 1;
    if (orthogonality_residual(mm) > 1e-10 || det(mm) < 0)
        throw std::domain_error("embed_M: input not in SO(n-1)");
    RMat m = RMat::identity(n + 1);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) m(i + 1, j + 1) = mm(i, j);
    return {m};
}

/// Exact Iwasawa factorization g = embed_K(k) geodesic(t) n_of(y).
///
/// With xi_0 = e_1 + e_{n+1}: e^t is the last entry of g xi_0, column one of
/// k is e^{-t} (g xi_0)_{1..n}, and each remaining column follows by a single
/// forward substitution; no iteration and no tolerance-dependent convergence.
inline IwasawaFactors iwasawa(const GroupElement& g, bool validate = true) {
    const int n = g.n();
    if (validate) check_group_element(g);
    const double et = g.m(n, 0) + g.m(n, n);
    if (et <= 0.0)
        throw std::domain_error("iwasawa: g xi_0 leaves the forward light cone");
    IwasawaFactors f;
    f.t = std::log(et);
    f.k = RMat(n, n);
    f.y = RVec(n - 1);
    for (int i = 0; i < n; ++i) f.k(i, 0) = (g.m(i, 0) + g.m(i, n)) / et;
    for (int j = 1; j <= n - 1; ++j) {
        const double ye = g.m(n, j);
        for (int i = 0; i < n; ++i) f.k(i, j) = g.m(i, j) - ye * f.k(i, 0);
        f.y[j - 1] = ye / et;
    }
    if (validate) {
        if (orthogonality_residual(f.k) > 1e-9 || det(f.k) < 0)
            throw std::domain_error("iwasawa: recovered K-part is not in SO(n)");
    }
    return f;
}

inline double H_of(const GroupElement& g) { return iwasawa(g).t; }

inline RMat kappa_of(const GroupElement& g) { return iwasawa(g).k; }

inline GroupElement reassemble(int n, const IwasawaFactors& f) {
    return embed_K(f.k) * geodesic(n, f.t) * n_of(n, f.y);
}

/// Rotation in span{e_1, b} with k e_1 = b; identity on the complement.
/// At b = -e_1 (measure zero) returns diag(-1,-1,1,...,1).
inline RMat section(const RVec& b) {
    const int n = static_cast<int>(b.size());
    if (std::abs(norm2(b) - 1.0) > 1e-10)
        throw std::domain_error("section: input must be a unit vector");
    RMat k = RMat::identity(n);
    RVec c = b;
    c[0] = 0.0;
    const double s = norm2(c);  // sin(theta)
    const double co = b[0];     // cos(theta)
    if (s < 1e-14) {
        if (co > 0) return k;
        k(0, 0) = -1.0;
        k(1, 1) = -1.0;
        return k;
    }
    for (double& v : c) v /= s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double e1i = (i == 0) ? 1.0 : 0.0;
            const double e1j = (j == 0) ? 1.0 : 0.0;
            k(i, j) += (co - 1.0) * (e1i * e1j + c[i] * c[j]) + s * (c[i] * e1j - e1i * c[j]);
        }
    return k;
}

/// Factor k = section(b) * embedded(m) with b = k e_1, m in SO(n-1).
inline std::pair<RVec, RMat> m_part(const RMat& k) {
    const int n = k.rows();
    RVec b(n);
    for (int i = 0; i < n; ++i) b[i] = k(i, 0);
    const RMat rest = section(b).transpose() * k;
    RMat m(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) m(i, j) = rest(i + 1, j + 1);
    return {b, m};
}

/// Action on the open unit ball (Klein model): x -> (Ax + b)/(<c,x> + d)
/// through the projective light-cone lift (x, 1).
inline RVec ball_action(const GroupElement& g, const RVec& x) {
    const int n = g.n();
    if (norm2(x) >= 1.0) throw std::domain_error("ball_action: |x| must be < 1");
    RVec lift(n + 1);
    for (int i = 0; i < n; ++i) lift[i] = x[i];
    lift[n] = 1.0;
    RVec im(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        double s = 0;
        for (int j = 0; j <= n; ++j) s += g.m(i, j) * lift[j];
        im[i] = s;
    }
    RVec r(n);
    for (int i = 0; i < n; ++i) r[i] = im[i] / im[n];
    return r;
}

// ---------------------------------------------------------------------------
// Nbar-measure normalizer Z(n) = int_{R^{n-1}} e^{-2 rho H(nbar(y))} dy.
// H(nbar(y)) = log(1+|y|^2), so the integrand is radial; the profile is
// integrated in polar coordinates on a compact interval to machine precision.
// ---------------------------------------------------------------------------

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] (Newton on the recurrence).
inline void gauss_legendre(int npts, RVec& x, RVec& w) {
    x.assign(npts, 0.0);
    w.assign(npts, 0.0);
    const int m = (npts + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (npts + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < npts; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = npts * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        x[i] = -z;
        x[npts - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[npts - 1 - i] = w[i];
    }
}

}  // namespace detail

/// Surface measure of S^{d-1}; |S^0| = 2.
inline double sphere_area(int d) {
    return 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0);
}

inline double nbar_normalizer(int n) {
    // Z = |S^{n-2}| int_0^inf r^{n-2} (1+r^2)^{-(n-1)} dr; substitute
    // r = tan(theta) to get int_0^{pi/2} sin^{n-2} cos^{n-2} dtheta.
    RVec x, w;
    detail::gauss_legendre(120, x, w);
    double s = 0;
    for (int i = 0; i < 120; ++i) {
        const double th = (x[i] + 1.0) * (pi / 4.0);
        s += w[i] * (pi / 4.0) * std::pow(std::sin(th) * std::cos(th), n - 2);
    }
    return sphere_area(n - 1) * s;
}

}  // namespace hypoisson
