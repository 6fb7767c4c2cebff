#pragma once

// Product quadrature on S^{n-1} (2 <= n <= 6) realizing the normalized Haar
// measure dk for right-M-invariant integrands: Gauss rules in each polar
// cosine (Gauss-Legendre for odd sine exponents, Gauss-Chebyshev-2 for even
// ones, with the leftover polynomial sine powers folded into the weights) and
// an offset trapezoid rule in the azimuth.  Node placement avoids b = -e_1,
// the singular point of the section.

#include <vector>

#include "hypoisson/core.hpp"
#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"

namespace hypoisson {

struct SphereQuadrature {
    int n = 0;
    std::vector<RVec> nodes;   // unit vectors in R^n
    RVec weights;              // positive, sum to 1
    int exact_degree = 0;      // declared polynomial exactness
};

namespace detail {

struct Rule1D {
    RVec x, w;
};

/// Rule in u = cos(theta) for int_0^pi F(cos theta) sin^m(theta) dtheta:
/// m odd  -> Gauss-Legendre with the polynomial weight (1-u^2)^{(m-1)/2}
///           folded into the weights;
/// m even -> Gauss-Chebyshev (2nd kind), whose intrinsic weight carries
///           sin^2(theta), with the remaining (1-u^2)^{(m-2)/2} folded in.
inline Rule1D polar_rule(int sine_exponent, int npts) {
    Rule1D r;
    const int m = sine_exponent;
    if (m % 2 == 1) {
        gauss_legendre(npts, r.x, r.w);
        for (int i = 0; i < npts; ++i)
            r.w[i] *= std::pow(1.0 - r.x[i] * r.x[i], (m - 1) / 2);
    } else {
        r.x.resize(npts);
        r.w.resize(npts);
        for (int i = 1; i <= npts; ++i) {
            const double th = i * pi / (npts + 1);
            const double s2 = std::sin(th) * std::sin(th);
            r.x[i - 1] = std::cos(th);
            r.w[i - 1] = pi / (npts + 1) * s2 * std::pow(s2, (m - 2) / 2);
        }
    }
    return r;
}

}  // namespace detail

/// Build a rule on S^{n-1} with declared exactness degree 2*level.
inline SphereQuadrature build_sphere_quadrature(int n, int level) {
    if (n < 2 || n > 6) throw std::domain_error("build_sphere_quadrature: 2 <= n <= 6");
    if (level < 1) throw std::domain_error("build_sphere_quadrature: level >= 1");
    SphereQuadrature q;
    q.n = n;
    q.exact_degree = 2 * level;

    const int nphi = 2 * level + 2;  // even, so the half-step offset misses phi = pi
    const int npolar = level + 2;

    std::vector<detail::Rule1D> polar(n - 2);
    for (int j = 1; j <= n - 2; ++j) polar[j - 1] = detail::polar_rule(n - 1 - j, npolar);

    std::vector<int> idx(n - 2, 0);
    const long polar_count = n == 2 ? 1 : [&] {
        long c = 1;
        for (int j = 0; j < n - 2; ++j) c *= npolar;
        return c;
    }();

    double total = 0;
    for (long pc = 0; pc < polar_count; ++pc) {
        double wpol = 1.0, sprod = 1.0;
        RVec base(n, 0.0);
        for (int j = 0; j < n - 2; ++j) {
            const double u = polar[j].x[idx[j]];
            wpol *= polar[j].w[idx[j]];
            base[j] = sprod * u;
            sprod *= std::sqrt(std::max(0.0, 1.0 - u * u));
        }
        for (int a = 0; a < nphi; ++a) {
            const double phi = 2.0 * pi * (a + 0.5) / nphi;
            RVec b = base;
            b[n - 2] = sprod * std::cos(phi);
            b[n - 1] = sprod * std::sin(phi);
            q.nodes.push_back(std::move(b));
            const double w = wpol / nphi;
            q.weights.push_back(w);
            total += w;
        }
        for (int j = n - 3; j >= 0; --j) {
            if (++idx[j] < npolar) break;
            idx[j] = 0;
        }
    }
    for (double& w : q.weights) w /= total;
    return q;
}

// value scaling for the types flowing through quadrature
inline double scale_value(double w, double v) { return w * v; }
inline cplx scale_value(double w, cplx v) { return w * v; }
inline CVec scale_value(double w, CVec v) { for (auto& x : v) x *= w; return v; }
inline CMat scale_value(double w, CMat v) { return v * cplx(w); }
inline PForm scale_value(double w, PForm v) { for (auto& x : v.c) x *= w; return v; }

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(cplx v) { return std::abs(v); }
inline double norm_of(const CVec& v) { return norm2(v); }
inline double norm_of(const CMat& v) { return frobenius(v); }
inline double norm_of(const PForm& v) { return norm2(v); }

/// sum_i w_i f(b_i), with node evaluation parallelized and a fixed pairwise
/// reduction tree, so the result is independent of the thread count.
template <class F>
auto integrate(const SphereQuadrature& quad, F&& f) {
    using T = decltype(f(quad.nodes[0]));
    auto vals = parallel_map<T>(quad.nodes.size(), [&](std::size_t i) { return f(quad.nodes[i]); });
    return pairwise_sum<T>(0, vals.size(), [&](std::size_t i) {
        return scale_value(quad.weights[i], vals[i]);
    });
}

/// Block embedding SO(n-1) -> SO(n) fixing e_1.
inline RMat embed_M_in_K(const RMat& m) {
    const int n = m.rows() + 1;
    RMat k = RMat::identity(n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) k(i + 1, j + 1) = m(i, j);
    return k;
}

/// Integrate a right-M-invariant function over K through the section:
/// int_K F(k) dk = int_{S^{n-1}} F(section(b)) db.  When check_invariance is
/// set, F(section(b) m) is compared against F(section(b)) at a few nodes for
/// random m in SO(n-1); a residual beyond 1e-8 raises contract_error.
template <class F>
auto integrate_over_K(const SphereQuadrature& quad, F&& f, bool check_invariance = false) {
    if (check_invariance) {
        Rng rng(0x4b6d696e76ULL);
        const std::size_t probes[] = {0, quad.nodes.size() / 2, quad.nodes.size() - 1};
        for (std::size_t ip : probes) {
            const RMat k = section(quad.nodes[ip]);
            const auto ref = f(k);
            const RMat m = random_rotation(quad.n - 1, rng);
            auto delta = f(k * embed_M_in_K(m));
            delta += scale_value(-1.0, ref);
            const double scale = std::max(1.0, norm_of(ref));
            if (norm_of(delta) > 1e-8 * scale)
                throw contract_error("integrate_over_K: integrand is not right-M-invariant");
        }
    }
    return integrate(quad, [&](const RVec& b) { return f(section(b)); });
}

}  // namespace hypoisson
