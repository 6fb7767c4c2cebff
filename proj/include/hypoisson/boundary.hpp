#pragma once

// sigma_q-covariant boundary forms on K/M = S^{n-1}: a fiber map on the
// section plus the covariance rule f(km) = sigma_q(m^{-1}) f(k).  Smooth test
// families and L^r norms.

#include <functional>
#include <optional>
#include <utility>

#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"
#include "hypoisson/sphquad.hpp"

namespace hypoisson {

struct BoundaryForm {
    int n = 0;
    int q = 0;
    /// value at section(b); length C(n-1, q)
    std::function<CVec(const RVec&)> fiber;

    /// Set when the form is f(k) = pi_p^q(tau_p(k^{-1}) w): such forms admit
    /// closed-form Poisson transforms through the Eisenstein components.
    struct KFiniteTag {
        int p = 0;
        CVec w;
    };
    std::optional<KFiniteTag> kfinite;
};

/// Evaluate at arbitrary k in SO(n) through the covariance rule.
inline CVec eval_on_K(const BoundaryForm& f, const RMat& k) {
    if (orthogonality_residual(k) > 1e-10)
        throw std::domain_error("eval_on_K: k must be orthogonal");
    auto [b, m] = m_part(k);
    return sigma_apply(m.transpose(), f.q, f.fiber(b));
}

/// f(k) = pi(tau_q(k^{-1}) omega) for omega in Lambda^q C^n; smooth and
/// covariant by the M-equivariance of the projection.
inline BoundaryForm ambient_test_form(const PForm& omega) {
    BoundaryForm f;
    f.n = omega.n;
    f.q = omega.p;
    const int q = omega.p;
    f.fiber = [omega, q](const RVec& b) {
        const PForm rotated = tau_apply(section(b).transpose(), omega);
        return project(q, rotated).c;
    };
    f.kfinite = BoundaryForm::KFiniteTag{omega.p, omega.c};
    return f;
}

/// f(k) = pi_p^q(tau_p(k^{-1}) w) for w in Lambda^p C^n.
inline BoundaryForm kfinite_test_form(const PForm& w, int q) {
    if (q != w.p && q != w.p - 1)
        throw std::domain_error("kfinite_test_form: q must be p-1 or p");
    BoundaryForm f;
    f.n = w.n;
    f.q = q;
    const int p = w.p;
    f.fiber = [w, p, q](const RVec& b) {
        const PForm rotated = tau_apply(section(b).transpose(), w);
        return project(q, rotated).c;
    };
    f.kfinite = BoundaryForm::KFiniteTag{p, w.c};
    return f;
}

inline BoundaryForm zero_boundary_form(int n, int q) {
    BoundaryForm f;
    f.n = n;
    f.q = q;
    const long d = binomial(n - 1, q);
    f.fiber = [d](const RVec&) { return CVec(d, cplx{}); };
    // zero is K-finite with w = 0, which keeps every evaluation path exact
    f.kfinite = BoundaryForm::KFiniteTag{q, CVec(binomial(n, q), cplx{})};
    return f;
}

/// (int_K ||f(k)||^r dk)^{1/r}; ||f(k)|| is right-M-invariant since sigma_q
/// is unitary, so the sphere rule applies directly to the fiber.
inline double lr_norm(const BoundaryForm& f, double r, const SphereQuadrature& quad) {
    if (!(r > 1.0)) throw std::domain_error("lr_norm: requires r > 1");
    const double v = integrate(quad, [&](const RVec& b) {
        return std::pow(norm2(f.fiber(b)), r);
    });
    return std::pow(v, 1.0 / r);
}

}  // namespace hypoisson
