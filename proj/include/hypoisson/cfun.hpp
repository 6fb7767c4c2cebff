#pragma once

// Generalized Harish-Chandra c-function: closed-form scalar components
// c_{p-1}(lambda,p), c_p(lambda,p) and c(lambda), the block-scalar
// endomorphism, and an independent oracle computing the defining Nbar
// integral by graded tensor Gauss-Legendre panels with a Richardson tail
// correction in the truncation radius.

#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"
#include "hypoisson/specfun.hpp"

namespace hypoisson {

/// c(lambda) = 2^{rho-mu} Gamma(mu) Gamma(rho+1/2)
///             / (Gamma((mu+rho)/2) Gamma((mu+rho+1)/2)), mu = i lambda.
inline cplx c_scalar(const SpectralParams& sp) {
    const double rho = sp.rho();
    const cplx mu = sp.mu;
    const cplx lg = std::log(2.0) * (rho - mu) + ln_gamma(mu) + ln_gamma(rho + 0.5) -
                    ln_gamma((mu + rho) / 2.0) - ln_gamma((mu + rho + 1.0) / 2.0);
    return std::exp(lg);
}

/// Scalar component on the Lambda^q C^{n-1} block:
///   q = p:   c_p(lambda,p)     = (mu + rho_p) / (mu + rho) c(lambda)
///   q = p-1: c_{p-1}(lambda,p) = (mu - rho_{p-1}) / (mu + rho) c(lambda)
inline cplx c_component(const SpectralParams& sp, int q) {
    const double rho = sp.rho();
    const cplx mu = sp.mu;
    if (q == sp.p) return (mu + sp.rho_q(sp.p)) / (mu + rho) * c_scalar(sp);
    if (q == sp.p - 1) return (mu - sp.rho_q(sp.p - 1)) / (mu + rho) * c_scalar(sp);
    throw std::domain_error("c_component: q must be p-1 or p");
}

inline cplx c_component(const SpectralParams& sp) { return c_component(sp, sp.q); }

struct CFunctionValue {
    SpectralParams params;
    cplx c_scalar{};
    cplx c_qminus{};  // c_{p-1}(lambda,p); 0 for p = 0 (block absent)
    cplx c_q{};       // c_p(lambda,p)
    CMat matrix;      // block-scalar endomorphism of Lambda^p C^n
};

/// Assemble c(lambda,p) = c_{p-1} Id_{Lambda^{p-1}} + c_p Id_{Lambda^p}.
inline CMat c_matrix(const SpectralParams& sp) {
    const int d = static_cast<int>(binomial(sp.n, sp.p));
    CMat m(d, d);
    const cplx cq = c_component(sp, sp.p);
    const RMat proj_q = block_projector(sp.n, sp.p, sp.p);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cq * proj_q(i, j);
    if (sp.p >= 1) {
        const cplx cqm = c_component(sp, sp.p - 1);
        const RMat proj_qm = block_projector(sp.n, sp.p, sp.p - 1);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) += cqm * proj_qm(i, j);
    }
    return m;
}

inline CFunctionValue c_function(const SpectralParams& sp) {
    CFunctionValue v;
    v.params = sp;
    v.c_scalar = c_scalar(sp);
    v.c_q = c_component(sp, sp.p);
    v.c_qminus = sp.p >= 1 ? c_component(sp, sp.p - 1) : cplx{};
    v.matrix = c_matrix(sp);
    return v;
}

struct OracleResult {
    CMat matrix;           // tail-corrected (1/Z) int e^{-(mu+rho)H(nbar)} tau_p(kappa(nbar)) dy
    double tail_estimate;  // magnitude of the applied Richardson correction
};

namespace detail {

/// Tensor Gauss-Legendre over [-R,R]^{n-1} with dyadic panels per axis.
inline CMat nbar_tensor_integral(const SpectralParams& sp, double R, int grid) {
    const int dim = sp.n - 1;
    RVec bounds{0.0, 1.0};
    while (bounds.back() < R) bounds.push_back(std::min(2.0 * bounds.back(), R));
    RVec axis_x, axis_w;
    {
        const int panels = 2 * static_cast<int>(bounds.size() - 1);
        const int per_panel = std::max(4, grid / panels);
        RVec gx, gw;
        gauss_legendre(per_panel, gx, gw);
        for (std::size_t b = 0; b + 1 < bounds.size(); ++b)
            for (int sgn : {-1, 1}) {
                const double lo = sgn > 0 ? bounds[b] : -bounds[b + 1];
                const double hi = sgn > 0 ? bounds[b + 1] : -bounds[b];
                for (int i = 0; i < per_panel; ++i) {
                    axis_x.push_back(0.5 * (hi - lo) * gx[i] + 0.5 * (hi + lo));
                    axis_w.push_back(0.5 * (hi - lo) * gw[i]);
                }
            }
    }
    const std::size_t npa = axis_x.size();
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= npa;

    const int side = static_cast<int>(binomial(sp.n, sp.p));
    const cplx expo = -(sp.mu + sp.rho());

    auto vals = parallel_map<CMat>(total, [&](std::size_t flat) {
        RVec y(dim);
        double wprod = 1.0;
        std::size_t rem = flat;
        for (int d = 0; d < dim; ++d) {
            const std::size_t i = rem % npa;
            rem /= npa;
            y[d] = axis_x[i];
            wprod *= axis_w[i];
        }
        const IwasawaFactors f = iwasawa(nbar_of(sp.n, y), false);
        const cplx kernel = std::exp(expo * f.t) * wprod;
        const RMat tau = compound_matrix(f.k, sp.p);
        CMat out(side, side);
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) out(i, j) = kernel * tau(i, j);
        return out;
    });
    return pairwise_sum<CMat>(0, vals.size(), [&](std::size_t i) { return vals[i]; });
}

}  // namespace detail

/// Independent oracle for the closed form: the
/// truncated integral at radii R and R/2 plus a Richardson correction for the
/// O(R^{-2 mu}) tail, normalized by the machine-precision Z(n).
inline OracleResult c_integral_oracle(const SpectralParams& sp, double R, int grid) {
    if (!(sp.mu.real() > 0.0))
        throw divergence_error("c_integral_oracle: integral requires Re(mu) > 0");
    if (sp.n > 4) throw std::domain_error("c_integral_oracle: supported for n <= 4");
    const CMat full = detail::nbar_tensor_integral(sp, R, grid);
    const CMat half = detail::nbar_tensor_integral(sp, R / 2.0, grid);
    const cplx denom = std::exp(2.0 * sp.mu * std::log(2.0)) - 1.0;  // 2^{2 mu} - 1
    const CMat diff = full - half;
    CMat corrected = full;
    for (int i = 0; i < corrected.rows(); ++i)
        for (int j = 0; j < corrected.cols(); ++j)
            corrected(i, j) += diff(i, j) / denom;
    const double z = nbar_normalizer(sp.n);
    OracleResult res{corrected * cplx(1.0 / z), frobenius(diff) / std::abs(denom) / z};
    return res;
}

/// Constant of the co-closed harmonic characterization (q = p, mu = rho - p):
/// c_p(rho) = c_{p,p} 2^p Gamma(rho+1/2) Gamma(rho-p)
///            / (Gamma(rho-p/2) Gamma(rho-p/2+1/2)).
inline double harmonic_constant(int n, int p) {
    const double rho = (n - 1) / 2.0;
    const double cpp = std::sqrt(static_cast<double>(n) / (n - p));
    const cplx lg = p * std::log(2.0) + ln_gamma(rho + 0.5) + ln_gamma(rho - p) -
                    ln_gamma(rho - p / 2.0) - ln_gamma(rho - p / 2.0 + 0.5);
    return cpp * std::exp(lg).real();
}

}  // namespace hypoisson
