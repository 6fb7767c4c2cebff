#pragma once

// Eisenstein integrals Phi_q^p(lambda, a_t): direct quadrature of the
// defining K-integral, extraction of the two scalar components of a
// tau_p-radial endomorphism, the closed-form Jacobi expressions, and the
// Hilbert-Schmidt limit specialized to the K-type tau_p.

#include <vector>

#include "hypoisson/cfun.hpp"
#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"
#include "hypoisson/specfun.hpp"
#include "hypoisson/sphquad.hpp"

namespace hypoisson {

/// Phi_q^p(lambda, a_t) = c_{p,q}^2 int_K e^{-(mu+rho)H(a_t^{-1}k)}
///   tau_p(kappa(a_t^{-1}k)) iota_q^p pi_p^q tau_p(k^{-1}) dk.
inline CMat eisenstein_quad(const SpectralParams& sp, double t, const SphereQuadrature& quad,
                            bool check_invariance = false) {
    sp.validate();
    const int side = static_cast<int>(binomial(sp.n, sp.p));
    const RMat proj = block_projector(sp.n, sp.p, sp.q);
    const GroupElement a_minus_t = geodesic(sp.n, -t);
    const cplx expo = -(sp.mu + sp.rho());
    const double c2 = sp.c_pq() * sp.c_pq();

    CMat sum = integrate_over_K(quad, [&](const RMat& k) {
        const IwasawaFactors f = iwasawa(a_minus_t * embed_K(k), false);
        const cplx kernel = std::exp(expo * f.t);
        const RMat tk = compound_matrix(f.k, sp.p);
        const RMat real_part = tk * proj * compound_matrix(k, sp.p).transpose();
        CMat out(side, side);
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) out(i, j) = kernel * real_part(i, j);
        return out;
    }, check_invariance);
    return sum * cplx(c2);
}

struct ScalarComponents {
    cplx f_qminus{};         // component on Lambda^{p-1} C^{n-1}; 0 when p = 0
    cplx f_q{};              // component on Lambda^p C^{n-1}
    double schur_residual = 0.0;
};

/// Components of an (approximately) block-scalar endomorphism of
/// Lambda^p C^n.  Throws when the reconstruction residual exceeds 1e-6
/// relative to ||E||_F (non-radial input).
inline ScalarComponents scalar_components(const CMat& E, int n, int p) {
    ScalarComponents sc;
    const RMat proj_q = block_projector(n, p, p);
    const long d_q = binomial(n - 1, p);
    cplx tq = 0;
    for (int i = 0; i < E.rows(); ++i)
        if (proj_q(i, i) > 0.5) tq += E(i, i);
    sc.f_q = tq / static_cast<double>(d_q);

    CMat recon(E.rows(), E.cols());
    for (int i = 0; i < E.rows(); ++i)
        for (int j = 0; j < E.cols(); ++j) recon(i, j) = sc.f_q * proj_q(i, j);

    if (p >= 1) {
        const RMat proj_qm = block_projector(n, p, p - 1);
        const long d_qm = binomial(n - 1, p - 1);
        cplx tm = 0;
        for (int i = 0; i < E.rows(); ++i)
            if (proj_qm(i, i) > 0.5) tm += E(i, i);
        sc.f_qminus = tm / static_cast<double>(d_qm);
        for (int i = 0; i < E.rows(); ++i)
            for (int j = 0; j < E.cols(); ++j) recon(i, j) += sc.f_qminus * proj_qm(i, j);
    }
    sc.schur_residual = frobenius(E - recon);
    if (sc.schur_residual > 1e-6 * std::max(1e-30, frobenius(E)))
        throw std::domain_error("scalar_components: input is not tau_p-radial");
    return sc;
}

/// Closed-form scalar components of Phi_q^p(lambda, a_t) in terms of Jacobi
/// functions (lambda = -i mu):
///   q = p:   (phi^{(n/2,-1/2)},
///             n/(n-p) phi^{(n/2-1,-1/2)} - p/(n-p) cosh t phi^{(n/2,-1/2)})
///   q = p-1: (n/p phi^{(n/2-1,-1/2)} - (n-p)/p cosh t phi^{(n/2,-1/2)},
///             phi^{(n/2,-1/2)})
inline ScalarComponents eisenstein_closed(const SpectralParams& sp, double t) {
    sp.validate();
    if (t < 0) throw std::domain_error("eisenstein_closed: t >= 0");
    const cplx lambda = cplx(0.0, -1.0) * sp.mu;
    const double n = sp.n, p = sp.p;
    const cplx phi_a = jacobi_phi(n / 2.0, -0.5, lambda, t);       // alpha = n/2
    const cplx phi_b = jacobi_phi(n / 2.0 - 1.0, -0.5, lambda, t); // alpha = n/2 - 1
    ScalarComponents sc;
    if (sp.q == sp.p) {
        sc.f_q = n / (n - p) * phi_b - p / (n - p) * std::cosh(t) * phi_a;
        sc.f_qminus = sp.p >= 1 ? phi_a : cplx{};
    } else {
        sc.f_qminus = n / p * phi_b - (n - p) / p * std::cosh(t) * phi_a;
        sc.f_q = phi_a;
    }
    return sc;
}

/// Assemble the endomorphism from scalar components.
inline CMat radial_matrix(const SpectralParams& sp, const ScalarComponents& sc) {
    const int side = static_cast<int>(binomial(sp.n, sp.p));
    const RMat proj_q = block_projector(sp.n, sp.p, sp.p);
    CMat m(side, side);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) m(i, j) = sc.f_q * proj_q(i, j);
    if (sp.p >= 1) {
        const RMat proj_qm = block_projector(sp.n, sp.p, sp.p - 1);
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) m(i, j) += sc.f_qminus * proj_qm(i, j);
    }
    return m;
}

/// sup over a t-grid of e^{(rho - Re mu) t} phi^{(rho-1/2,-1/2)}_{-i Re mu}(t):
/// the computable constant realizing the L^1 convolution bound.
inline double gamma_lambda(const SpectralParams& sp, const RVec& t_grid) {
    const double rho = sp.rho();
    const double re_mu = sp.mu.real();
    double best = 0.0;
    for (double t : t_grid) {
        const cplx phi = jacobi_phi(rho - 0.5, -0.5, cplx(0.0, -re_mu), t);
        best = std::max(best, std::exp((rho - re_mu) * t) * phi.real());
    }
    return best;
}

struct HsLimitResult {
    RVec scaled_hs_sq;      // e^{2(rho-Re mu)t} ||Phi_{lambda,tau_p}(a_t)||_HS^2 on the grid
    RVec errs;              // |scaled_hs_sq - limit| on the grid
    double limit = 0.0;     // c_{p,q}^2 |c_q(lambda,p)|^2 dim(sigma_q)
    double final_err = 0.0;
    bool decreasing = false;
    double sup_scaled_hs = 0.0;   // sup over grid of e^{(rho-Re mu)t} ||Phi(a_t)||_HS
    double sup_bound = 0.0;       // gamma_lambda c_{p,q} sqrt(dim sigma_q)
};

/// Hilbert-Schmidt limit for the K-type tau_p, where Phi_{lambda,tau_p} =
/// (1/c_{p,q}) Phi_q^p, with its uniform bound on the grid.
inline HsLimitResult hs_limit_check(const SpectralParams& sp, const RVec& t_grid) {
    sp.validate();
    if (!(sp.mu.real() > 0.0)) throw divergence_error("hs_limit_check: Re(mu) > 0 required");
    const double c = sp.c_pq();
    const double dq = static_cast<double>(binomial(sp.n - 1, sp.q));
    const double dqm = sp.p >= 1 ? static_cast<double>(binomial(sp.n - 1, sp.p - 1)) : 0.0;
    const double dp = static_cast<double>(binomial(sp.n - 1, sp.p));
    HsLimitResult res;
    res.limit = c * c * std::norm(c_component(sp)) * dq;
    for (double t : t_grid) {
        const ScalarComponents sc = eisenstein_closed(sp, t);
        const double hs_sq =
            (std::norm(sc.f_qminus) * dqm + std::norm(sc.f_q) * dp) / (c * c);
        const double scaled = std::exp(2.0 * (sp.rho() - sp.mu.real()) * t) * hs_sq;
        res.scaled_hs_sq.push_back(scaled);
        res.errs.push_back(std::abs(scaled - res.limit));
        res.sup_scaled_hs = std::max(res.sup_scaled_hs, std::sqrt(scaled));
    }
    res.final_err = res.errs.back();
    res.decreasing = true;
    for (std::size_t i = 1; i < res.errs.size(); ++i)
        if (res.errs[i] >= res.errs[i - 1]) res.decreasing = false;
    res.sup_bound = gamma_lambda(sp, t_grid) * c * std::sqrt(dq);
    return res;
}

}  // namespace hypoisson
