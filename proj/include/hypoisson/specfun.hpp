#pragma once

// Complex special functions: log-Gamma (Lanczos), Gauss 2F1 at real z <= 0
// (Pfaff transformation + power series), Jacobi functions phi_nu^{(alpha,beta)}
// and their asymptotic constants c_{alpha,beta}(nu).

#include "hypoisson/core.hpp"

namespace hypoisson {

/// Parameters of one Poisson transform P^p_{q,lambda}; mu = i*lambda.
struct SpectralParams {
    int n = 0;
    int p = 0;
    int q = 0;
    cplx mu{};

    double rho() const { return (n - 1) / 2.0; }
    double rho_q(int qq) const { return rho() - qq; }

    /// c_{p,q} = sqrt(dim tau_p / dim sigma_q).
    double c_pq() const {
        return std::sqrt(static_cast<double>(binomial(n, p)) / binomial(n - 1, q));
    }

    /// Structural invariants: generic degree and admissible boundary degree.
    void validate() const {
        if (n < 2) throw std::domain_error("SpectralParams: n >= 2 required");
        if (!(p >= 0 && p < (n - 1) / 2.0))
            throw std::domain_error("SpectralParams: generic range 0 <= p < (n-1)/2 violated");
        if (q != p && q != p - 1)
            throw std::domain_error("SpectralParams: q must be p-1 or p");
        if (q == p - 1 && p < 1)
            throw std::domain_error("SpectralParams: q = p-1 requires p >= 1");
    }

    bool in_convergence_region() const { return mu.real() > 0.0; }

    /// False at the excluded parameter i*lambda = rho - p + 1 of the q = p-1
    /// isomorphism (where c_{p-1}(lambda,p) vanishes).
    bool inversion_admissible() const {
        if (!in_convergence_region()) return false;
        if (q == p - 1 && std::abs(mu - cplx(rho() - p + 1.0)) < 1e-12) return false;
        return true;
    }
};

namespace detail {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's table; the
// published 15-term set -- the constant g differs from the nominal 7).
inline constexpr double lanczos_g = 4.7421875;
inline constexpr double lanczos_c[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

/// log(sin z) stable for large |Im z| (avoids overflow and branch jumps).
inline cplx log_sin(cplx z) {
    const cplx i(0.0, 1.0);
    if (z.imag() > 0.0)
        return -i * (pi / 2.0) - std::log(2.0) - i * z + std::log(std::exp(2.0 * i * z) - 1.0);
    return -i * (pi / 2.0) - std::log(2.0) + i * z + std::log(1.0 - std::exp(-2.0 * i * z));
}

}  // namespace detail

/// Principal-branch log-Gamma.  Relative error of exp(ln_gamma) is ~1e-15.
/// On the reflected half-plane Re z < 1/2 the imaginary part may differ from
/// the principal log-gamma by multiples of 2*pi*i; Gamma values are exact.
inline cplx ln_gamma(cplx z) {
    if (z.real() < 0.5) {
        // pole detection on the non-positive integers
        const double zr = std::round(z.real());
        if (std::abs(z.real() - zr) < 1e-13 && std::abs(z.imag()) < 1e-13 && zr <= 0.0)
            throw pole_error("ln_gamma: pole at non-positive integer");
        return std::log(pi) - detail::log_sin(pi * z) - ln_gamma(1.0 - z);
    }
    cplx ser = detail::lanczos_c[0];
    for (int k = 1; k < 15; ++k) ser += detail::lanczos_c[k] / (z - 1.0 + static_cast<double>(k));
    const cplx w = z + (detail::lanczos_g - 0.5);
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(w) - w + std::log(ser);
}

inline cplx gamma_fn(cplx z) { return std::exp(ln_gamma(z)); }

namespace detail {

inline bool near_nonpositive_integer(cplx z) {
    const double zr = std::round(z.real());
    return std::abs(z.real() - zr) < 1e-12 && std::abs(z.imag()) < 1e-12 && zr <= 0.0;
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a,b;c;z) for real z <= 0, via the Pfaff
/// transformation 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) followed
/// by the power series with term-ratio stopping at relative 1e-15.
/// (a,b) are put in a canonical order first, so the result is symmetric in
/// them to the last bit.
inline cplx gauss_2f1(cplx a, cplx b, cplx c, double z) {
    if (detail::near_nonpositive_integer(c))
        throw std::domain_error("gauss_2f1: c at a non-positive integer");
    if (z > 0.0) throw std::domain_error("gauss_2f1: requires z <= 0");
    if (z == 0.0) return 1.0;

    if (std::make_pair(a.real(), a.imag()) > std::make_pair(b.real(), b.imag())) std::swap(a, b);
    const bool polynomial =
        detail::near_nonpositive_integer(a) || detail::near_nonpositive_integer(b);
    const double w = z / (z - 1.0);  // in [0, 1)
    if (w >= 1.0 - 1e-9 && !polynomial)
        throw accuracy_error("gauss_2f1: argument too close to 1 after Pfaff");

    const cplx bp = c - b;
    cplx term = 1.0, sum = 1.0;
    const long max_terms = polynomial ? 4000000L : 3000000L;
    for (long k = 0; k < max_terms; ++k) {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (bp + kd) / ((c + kd) * (kd + 1.0)) * w;
        sum += term;
        if (term == cplx{}) break;
        if (std::abs(term) <= 1e-15 * std::abs(sum)) break;
        if (k + 1 == max_terms)
            throw accuracy_error("gauss_2f1: series did not converge");
    }
    return std::exp(-a * std::log1p(-z)) * sum;
}

/// Jacobi function phi_nu^{(alpha,beta)}(t)
///   = 2F1((i nu + alpha + beta + 1)/2, (-i nu + alpha + beta + 1)/2;
///         alpha + 1; -sinh^2 t).
/// For beta = -1/2 the parameters satisfy c = a + b + 1/2 and the classical
/// quadratic identity 2F1(a,b;a+b+1/2;-sinh^2 t) = 2F1(2a,2b;a+b+1/2;
/// -sinh^2(t/2)) halves the argument once, which keeps the series short for
/// the large t used in asymptotic checks.
inline cplx jacobi_phi(double alpha, double beta, cplx nu, double t) {
    if (alpha <= -1.0) throw std::domain_error("jacobi_phi: requires alpha > -1");
    const cplx inu = cplx(0.0, 1.0) * nu;
    const cplx a = (inu + alpha + beta + 1.0) / 2.0;
    const cplx b = (-inu + alpha + beta + 1.0) / 2.0;
    const cplx c = alpha + 1.0;
    if (beta == -0.5) {
        const double sh = std::sinh(t / 2.0);
        return gauss_2f1(2.0 * a, 2.0 * b, c, -sh * sh);
    }
    const double sh = std::sinh(t);
    return gauss_2f1(a, b, c, -sh * sh);
}

/// Asymptotic constant of Jacobi functions,
///   c_{alpha,beta}(nu) = 2^{alpha+beta+1-i nu} Gamma(alpha+1) Gamma(i nu)
///     / (Gamma((i nu+alpha+beta+1)/2) Gamma((i nu+alpha-beta+1)/2)),
/// so phi_nu(t) = e^{(i nu - alpha - beta - 1) t} (c_{alpha,beta}(nu) + o(1)).
inline cplx jacobi_c(double alpha, double beta, cplx nu) {
    const cplx inu = cplx(0.0, 1.0) * nu;
    const cplx lg = std::log(2.0) * (alpha + beta + 1.0 - inu) + ln_gamma(alpha + 1.0) +
                    ln_gamma(inu) - ln_gamma((inu + alpha + beta + 1.0) / 2.0) -
                    ln_gamma((inu + alpha - beta + 1.0) / 2.0);
    return std::exp(lg);
}

}  // namespace hypoisson
